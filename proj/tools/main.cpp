// pecan: decide the theorems of Pecan source files.

#include "pecan/driver.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Pecan: first-order predicates over automatic structures, decided with Buchi automata"};
    std::vector<std::string> files;
    bool no_prelude = false, csv = false;
    std::size_t state_budget = pecan::eval::Options{}.state_budget;
    double timeout = 300;
    unsigned jobs = 1;
    app.add_option("files", files, "Source files (.pn)")->required();
    app.add_flag("--no-prelude", no_prelude, "Do not load the standard prelude");
    app.add_flag("--csv", csv, "Print the report as CSV");
    app.add_option("--state-budget", state_budget, "State limit for complementation")->check(CLI::PositiveNumber);
    app.add_option("--timeout", timeout, "Seconds allowed per theorem (0 disables)")->check(CLI::NonNegativeNumber);
    app.add_option("--jobs", jobs, "Files processed in parallel")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    pecan::driver::Options options;
    options.prelude = !no_prelude;
    options.eval.state_budget = state_budget;
    if (timeout > 0) options.eval.timeout = std::chrono::duration<double>(timeout);
    return pecan::driver::run_files(files, options, csv, jobs, std::cout, std::cerr);
}
