#pragma once

// Executes Pecan source files: registers definitions and structures, applies
// restrictions in order, decides theorems, and formats the results.

#include "pecan/eval.hpp"
#include "pecan/syntax.hpp"
#include "pecan/typecheck.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace pecan::driver {

struct Options {
    bool prelude = true;
    eval::Options eval;
};

struct Row {
    std::string name;
    bool truth = false;
    eval::Metrics metrics;
};

struct RunReport {
    std::vector<Row> rows;
};

/// One file's worth of state. Restrictions last until the end of the source
/// they appear in.
class Session {
public:
    explicit Session(Options options = {});

    /// Runs `text`; relative `#load`/`#save_aut` paths resolve against
    /// `base_dir`. Throws pecan::Error on the first failing item.
    void run_source(const std::string& text, const std::string& base_dir = ".");
    void run_file(const std::string& path);

    const RunReport& report() const { return report_; }
    Registry& registry() { return reg_; }
    eval::Evaluator& evaluator() { return *evaluator_; }

private:
    Options options_;
    Registry reg_;
    typecheck::Checker checker_;
    std::unique_ptr<eval::Evaluator> evaluator_;
    std::size_t literals_ = 0;
    RunReport report_;

    void run_item(const ast::Item& item, syntax::Restrictions& restrictions, const std::string& base_dir);
    std::shared_ptr<const PecanAutomaton> bind_literal(PecanAutomaton a, const std::vector<ast::Param>& params,
                                                       SourceLoc loc);
};

const std::string& csv_header();
std::string format_report(const RunReport& report, bool csv);

/// 0 if every theorem is true, 1 if some theorem is false.
int exit_status(const RunReport& report);

/// Runs each file in its own session (up to `jobs` at a time) and writes
/// the combined report to `out` and diagnostics to `err`. Returns 2 if any
/// file failed, else exit_status of the combined report.
int run_files(const std::vector<std::string>& paths, const Options& options, bool csv, unsigned jobs,
              std::ostream& out, std::ostream& err);

}  // namespace pecan::driver
