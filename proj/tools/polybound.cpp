#include "polybound/parser.hpp"
#include "polybound/report.hpp"
#include "polybound/sim.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace polybound;

namespace {

constexpr int kExitOmega = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

State parse_state(const Program &p, const std::string &text) {
    State s;
    for (const auto &v : p.vars()) {
        s[v] = 0;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected name=value in state, got '" + item + "'");
        }
        auto trim = [](std::string x) {
            x.erase(0, x.find_first_not_of(" \t"));
            x.erase(x.find_last_not_of(" \t") + 1);
            return x;
        };
        Var v(trim(item.substr(0, eq)));
        if (!s.contains(v)) {
            throw std::invalid_argument("unknown variable '" + v.name + "' in state");
        }
        Int value;
        if (value.set_str(trim(item.substr(eq + 1)), 10) != 0) {
            throw std::invalid_argument("bad integer in state entry '" + item + "'");
        }
        s[v] = value;
    }
    return s;
}

std::string show(const Program &p, const Configuration &c) {
    std::string out = "(" + c.loc.name + ",(";
    bool first = true;
    for (const auto &v : p.vars()) {
        out += (first ? "" : ",") + c.state.at(v).get_str();
        first = false;
    }
    return out + "))";
}

int run_analyze(const std::string &file, const std::string &format, bool no_twn, bool no_ranking, unsigned depth,
                const SmtOptions &smt, bool no_timings) {
    Program p = parse_program_file(file);
    AnalysisConfig cfg;
    cfg.use_twn = !no_twn;
    cfg.use_ranking = !no_ranking;
    cfg.mprf_depth = depth;
    cfg.ranking.smt = smt;
    if ((cfg.use_twn || cfg.use_ranking) && !solver_available(smt)) {
        std::cerr << "error: SMT solver '" << smt.solver << "' cannot be executed\n";
        return kExitInternal;
    }
    if (depth > 1) {
        std::cerr << "note: NotImplemented: --mprf-depth " << depth << " is treated as 1\n";
    }
    AnalysisResult r = analyze(p, cfg);
    ReportOptions ro;
    ro.timings = !no_timings;
    if (format == "json") {
        std::cout << report_json(p, r, ro).dump(2) << "\n";
    } else {
        std::cout << report_text(p, r, ro);
    }
    return r.overall.is_finite() ? 0 : kExitOmega;
}

int run_simulate(const std::string &file, const std::string &state_text, std::uint64_t max_steps) {
    Program p = parse_program_file(file);
    State s = parse_state(p, state_text);
    ExploreLimits limits;
    limits.max_steps = max_steps;
    ExhaustiveResult r = exhaustive_run(p, s, limits);
    Configuration c{p.init(), s};
    std::cout << show(p, c) << "\n";
    for (const auto &[t, next] : r.longest_run) {
        std::cout << "  -> " << p.transition(t).id << " " << show(p, next) << "\n";
    }
    if (r.exceeded) {
        std::cout << "exceeded: no termination within " << max_steps << " steps\n";
        return kExitOmega;
    }
    std::cout << "rc = " << r.rc << "\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::cout << "uses(" << p.transition(i).id << ") = " << r.per_transition[i] << "\n";
    }
    return 0;
}

int run_closed_form(const std::string &file, const std::string &id) {
    Program p = parse_program_file(file);
    std::size_t idx = 0;
    try {
        idx = p.index_of(id);
    } catch (const std::out_of_range &) {
        std::cerr << "error: no transition '" << id << "'\n";
        return kExitInput;
    }
    auto checked = twn_check(p.transition(idx), p.vars());
    if (auto *f = std::get_if<TwnFailure>(&checked)) {
        std::cerr << "error: " << id << " is not a twn-loop: " << f->message() << "\n";
        return kExitInput;
    }
    const auto &loop = std::get<TwnLoop>(checked);
    ClosedForm cf = closed_form(loop);
    if (loop.chained) {
        std::cout << "note: negative coefficients; closed form of the loop executed twice per step\n";
    }
    std::cout << "n0 = " << cf.n0 << "\n";
    for (const auto &v : loop.order) {
        std::cout << v.name << ": " << cf.forms.at(v).to_string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Runtime complexity bounds for integer programs"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    bool no_twn = false;
    bool no_ranking = false;
    bool no_timings = false;
    unsigned depth = 1;
    SmtOptions smt = SmtOptions::from_env();
    auto *analyze_cmd = app.add_subcommand("analyze", "compute runtime and size bounds");
    analyze_cmd->add_option("file", file, "program")->required();
    analyze_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    analyze_cmd->add_flag("--no-twn", no_twn, "disable the closed-form technique");
    analyze_cmd->add_flag("--no-ranking", no_ranking, "disable ranking functions");
    analyze_cmd->add_flag("--no-timings", no_timings, "omit timings from the report");
    analyze_cmd->add_option("--mprf-depth", depth)->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--smt-solver", smt.solver, "solver executable");
    analyze_cmd->add_option("--smt-timeout", smt.timeout_ms, "per-query timeout in ms");

    std::string state;
    std::uint64_t max_steps = 10000;
    auto *sim_cmd = app.add_subcommand("simulate", "run the program from an initial state");
    sim_cmd->add_option("file", file, "program")->required();
    sim_cmd->add_option("--state", state, "initial values, e.g. x=1,y=2")->required();
    sim_cmd->add_option("--max-steps", max_steps);

    std::string id;
    auto *cf_cmd = app.add_subcommand("closed-form", "print the closed form of a twn self-loop");
    cf_cmd->add_option("file", file, "program")->required();
    cf_cmd->add_option("--transition", id)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*analyze_cmd) {
            return run_analyze(file, format, no_twn, no_ranking, depth, smt, no_timings);
        }
        if (*sim_cmd) {
            return run_simulate(file, state, max_steps);
        }
        return run_closed_form(file, id);
    } catch (const ParseError &e) {
        std::cerr << file << ":" << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
