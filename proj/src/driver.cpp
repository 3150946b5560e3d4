#include "pecan/driver.hpp"

#include "pecan/automata_io.hpp"
#include "pecan/stdlib.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace pecan::driver {

using namespace ast;
namespace fs = std::filesystem;

Session::Session(Options options)
    : options_(std::move(options)),
      checker_(reg_),
      evaluator_(std::make_unique<eval::Evaluator>(reg_, options_.eval)) {
    if (options_.prelude) run_source(stdlib::prelude_source());
}

void Session::run_source(const std::string& text, const std::string& base_dir) {
    Program program = syntax::parse(text);
    syntax::Restrictions restrictions;
    for (const auto& item : program.items) run_item(item, restrictions, base_dir);
}

void Session::run_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    run_source(buf.str(), fs::path(path).parent_path().string());
}

std::shared_ptr<const PecanAutomaton> Session::bind_literal(PecanAutomaton a, const std::vector<Param>& params,
                                                            SourceLoc loc) {
    std::set<std::string> formals;
    for (const auto& p : params) formals.insert(p.name);
    std::set<std::string> tracked;
    for (const auto& [var, aps] : a.varmap) {
        if (!formals.count(var)) throw TypeError("automaton variable '" + var + "' is not a parameter", loc);
        tracked.insert(aps.begin(), aps.end());
    }
    std::vector<std::string> untracked;
    for (const auto& ap : a.automaton.aps())
        if (!tracked.count(ap)) untracked.push_back(ap);
    BuchiAutomaton aut = simplify(project(a.automaton, untracked));

    // Private AP names keep separate literals from sharing tracks.
    Substitution theta;
    VariableMap renamed;
    const std::size_t k = literals_++;
    std::size_t i = 0;
    for (const auto& [var, aps] : a.varmap) {
        std::vector<std::string> fresh;
        for (const auto& ap : aps) {
            fresh.push_back("L" + std::to_string(k) + "_" + std::to_string(i++));
            theta[ap] = fresh.back();
        }
        renamed.insert(var, fresh);
    }
    return std::make_shared<const PecanAutomaton>(std::move(renamed), substitute_aps(aut, theta));
}

void Session::run_item(const Item& raw, syntax::Restrictions& restrictions, const std::string& base_dir) {
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (fs::path(base_dir) / p).string(); };
    Item item = syntax::desugar(raw, restrictions);
    if (auto* d = std::get_if<PredicateDef>(&item)) {
        checker_.add_predicate(*d);
    } else if (auto* s = std::get_if<StructureDecl>(&item)) {
        checker_.add_structure(*s);
    } else if (auto* t = std::get_if<TheoremDecl>(&item)) {
        checker_.check_theorem(t->body);
        auto result = eval::decide_theorem(*evaluator_, t->body, options_.eval);
        report_.rows.push_back(Row{t->name, result.truth, result.metrics});
    } else if (auto* l = std::get_if<LoadDecl>(&item)) {
        PecanAutomaton a = io::load_file(resolve(l->path));
        checker_.add_literal(l->name, l->params, bind_literal(std::move(a), l->params, l->loc), l->loc);
    } else if (auto* b = std::get_if<BuiltinDecl>(&item)) {
        std::vector<std::string> aps;
        VariableMap v;
        for (const auto& p : b->params) {
            aps.push_back(p.name);
            v.insert(p.name, {p.name});
        }
        BuchiAutomaton aut;
        try {
            aut = stdlib::build_builtin(b->builtin, aps);
        } catch (const Error& e) {
            throw TypeError(e.what(), b->loc);
        }
        checker_.add_literal(b->name, b->params, bind_literal(PecanAutomaton(v, aut), b->params, b->loc), b->loc);
    } else if (auto* sv = std::get_if<SaveDecl>(&item)) {
        if (!reg_.predicates.count(sv->name)) throw TypeError("undefined predicate '" + sv->name + "'", sv->loc);
        io::save_file(resolve(sv->path), evaluator_->predicate_automaton(sv->name));
    }
}

namespace {

std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string fixed(double v, int digits) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(digits) << v;
    return o.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::vector<std::string> fields(const Row& r) {
    const auto& m = r.metrics;
    return {r.name,
            r.truth ? "TRUE" : "FALSE",
            m.complexity,
            std::to_string(m.atoms),
            fixed(m.runtime_s, 3),
            std::to_string(m.max_states),
            std::to_string(m.max_edges),
            std::to_string(m.final_states),
            std::to_string(m.final_edges)};
}

}  // namespace

const std::string& csv_header() {
    static const std::string h = "name,verdict,complexity,atoms,runtime_s,max_states,max_edges,final_states,final_edges";
    return h;
}

std::string format_report(const RunReport& report, bool csv) {
    std::ostringstream out;
    if (csv) {
        out << csv_header() << "\n";
        for (const auto& r : report.rows) {
            auto f = fields(r);
            for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
            out << "\n";
        }
        return out.str();
    }
    std::vector<std::vector<std::string>> table{
        {"Name", "Verdict", "Complexity", "Atoms", "Runtime (s)", "Max states", "Max edges", "Final states",
         "Final edges"}};
    for (const auto& r : report.rows) table.push_back(fields(r));
    std::vector<std::size_t> width(table[0].size(), 0);
    for (const auto& row : table)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], display_width(row[i]));
    for (const auto& row : table) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string pad(width[i] - display_width(row[i]), ' ');
            // Name, verdict and complexity are left-aligned, numbers right-aligned.
            line += (i ? "  " : "") + (i < 3 ? row[i] + pad : pad + row[i]);
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out << line << "\n";
    }
    return out.str();
}

int exit_status(const RunReport& report) {
    for (const auto& r : report.rows)
        if (!r.truth) return 1;
    return 0;
}

int run_files(const std::vector<std::string>& paths, const Options& options, bool csv, unsigned jobs,
              std::ostream& out, std::ostream& err) {
    struct Outcome {
        RunReport report;
        std::string error;
    };
    auto run_one = [&options](const std::string& path) {
        Outcome o;
        std::unique_ptr<Session> session;
        try {
            session = std::make_unique<Session>(options);
            session->run_file(path);
        } catch (const SourceError& e) {
            o.error = path + (e.loc().line > 0 ? ":" : ": ") + e.what();
        } catch (const Error& e) {
            o.error = path + ": " + e.what();
        } catch (const std::exception& e) {
            o.error = path + ": internal error: " + e.what();
        }
        if (session) o.report = session->report();
        return o;
    };
    std::vector<Outcome> outcomes(paths.size());
    jobs = std::max(1U, jobs);
    for (std::size_t start = 0; start < paths.size(); start += jobs) {
        std::vector<std::future<Outcome>> running;
        for (std::size_t i = start; i < std::min(paths.size(), start + jobs); ++i)
            running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run_one, paths[i]));
        for (std::size_t i = 0; i < running.size(); ++i) outcomes[start + i] = running[i].get();
    }
    RunReport all;
    bool failed = false;
    for (const auto& o : outcomes) {
        all.rows.insert(all.rows.end(), o.report.rows.begin(), o.report.rows.end());
        if (!o.error.empty()) {
            err << o.error << "\n";
            failed = true;
        }
    }
    out << format_report(all, csv);
    return failed ? 2 : exit_status(all);
}

}  // namespace pecan::driver
