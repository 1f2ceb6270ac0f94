// weakkam: command-line front end.  Subcommands solve | critical | barrier |
// mather | u0 | sweep | check | gen read an instance JSON (except gen) and
// write JSON/CSV artifacts.  Exit 0 on success, 1 on solver/check failure,
// 2 on usage errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weakkam/check_suite.hpp"
#include "weakkam/instances.hpp"
#include "weakkam/json_io.hpp"

using namespace weakkam;

namespace {

struct Options {
    std::string input;
    std::string output;  // empty -> stdout
    std::string lambda_text;
    std::string beta_text = "0";
    std::string tol_text;
    std::string schedule_text;
    std::string mode = "rational";
    std::uint64_t seed = 0;
    std::string csv_rational = "decimal";
    // gen
    std::string kind = "random_rational";
    int n = 4;
    std::string lo_text = "0";
    std::string hi_text = "1";
    long denominator_bound = 8;
    std::string potential_text;
};

/// Atomic write: temp file in the target directory, then rename.
void emit(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << payload;
    }
    fs::rename(tmp, target);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    json j = json::parse(in);
    return instance_from_json(j);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

template <class S>
SolverConfig<S> make_config(const Options& opt) {
    SolverConfig<S> cfg;
    if (!opt.tol_text.empty()) {
        if constexpr (scalar_traits<S>::exact) {
            // exact mode ignores a numeric tolerance; aubry_eps stays 0
        } else {
            cfg.tol = scalar_parse<double>(opt.tol_text);
        }
    }
    if constexpr (!scalar_traits<S>::exact) cfg.aubry_eps = cfg.tol * 1e3;
    cfg.seed = opt.seed;
    return cfg;
}

template <class S>
S required_lambda(const Options& opt) {
    if (opt.lambda_text.empty())
        throw CLI::ValidationError("--lambda", "this command requires --lambda");
    return scalar_parse<S>(opt.lambda_text);
}

template <class S>
std::vector<S> schedule_of(const Options& opt) {
    if (opt.schedule_text.empty()) return default_schedule<S>();
    std::vector<S> out;
    for (const auto& item : split_commas(opt.schedule_text))
        out.push_back(scalar_parse<S>(item));
    if (out.empty()) throw CLI::ValidationError("--schedule", "empty schedule");
    return out;
}

template <class S>
int run_command(const std::string& cmd, const Space<S>& sp, const Options& opt) {
    auto cfg = make_config<S>(opt);
    if (cmd == "solve") {
        auto sol = solve_discounted(sp, required_lambda<S>(opt),
                                    scalar_parse<S>(opt.beta_text), cfg);
        emit(opt.output, solution_json(sol).dump(2) + "\n");
        return 0;
    }
    if (cmd == "critical") {
        S lambda = opt.lambda_text.empty() ? from_ratio<S>(3, 4)
                                           : scalar_parse<S>(opt.lambda_text);
        S alpha = critical_value_karp(sp);
        auto lp = minimize_cost_lp(sp);
        auto [estimate, bound] = critical_value_discounted_estimate(sp, lambda, cfg);
        json j = {{"alpha_karp", scalar_json(alpha)},
                  {"alpha_lp", scalar_json(-lp.value)},
                  {"alpha_discounted_estimate", scalar_json(estimate)},
                  {"estimate_bound", scalar_json(bound)},
                  {"lambda", scalar_json(lambda)}};
        emit(opt.output, j.dump(2) + "\n");
        return 0;
    }
    if (cmd == "barrier") {
        auto b = compute_barrier(sp, cfg);
        emit(opt.output, barrier_json(b, sp.n).dump(2) + "\n");
        return 0;
    }
    if (cmd == "mather") {
        auto b = compute_barrier(sp, cfg);
        auto extremes = extreme_mather_measures(sp, b);
        json arr = json::array();
        for (const auto& cm : extremes) arr.push_back(cycle_measure_json(cm));
        json j = {{"alpha", scalar_json(b.alpha)}, {"measures", std::move(arr)}};
        emit(opt.output, j.dump(2) + "\n");
        return 0;
    }
    if (cmd == "u0") {
        auto b = compute_barrier(sp, cfg);
        auto sel = compute_u0(sp, b, extreme_mather_measures(sp, b));
        emit(opt.output, selection_json(sel).dump(2) + "\n");
        return 0;
    }
    if (cmd == "sweep") {
        auto rep = convergence_sweep(sp, cfg, schedule_of<S>(opt));
        auto style = opt.csv_rational == "fraction" ? CsvRational::fraction
                                                    : CsvRational::decimal;
        emit(opt.output, sweep_csv(rep, style));
        for (const auto& row : rep.rows)
            if (row.failed) return 1;
        return 0;
    }
    if (cmd == "check") {
        auto items = run_check_suite(sp, cfg);
        bool all = true;
        std::string out;
        for (const auto& item : items) {
            out += std::string(item.pass ? "[PASS] " : "[FAIL] ") + item.name;
            if (!item.detail.empty()) out += "  (" + item.detail + ")";
            out += "\n";
            all = all && item.pass;
        }
        out += std::to_string(items.size()) + " properties, " +
               (all ? "all passed" : "FAILURES present") + "\n";
        emit(opt.output, out);
        return all ? 0 : 1;
    }
    throw CLI::ValidationError("command", "unknown command: " + cmd);
}

int run_gen(const Options& opt) {
    Instance inst = [&]() -> Instance {
        if (opt.kind == "random_rational")
            return gen_random_rational(opt.n, opt.seed, rat_parse_flexible(opt.lo_text),
                                       rat_parse_flexible(opt.hi_text),
                                       opt.denominator_bound);
        if (opt.kind == "random_float")
            return gen_random_float(opt.n, opt.seed, scalar_parse<double>(opt.lo_text),
                                    scalar_parse<double>(opt.hi_text));
        if (opt.kind == "torus_lagrangian") {
            std::vector<Rat> potential;
            if (!opt.potential_text.empty())
                for (const auto& item : split_commas(opt.potential_text))
                    potential.push_back(rat_parse_flexible(item));
            else
                potential.assign(opt.n, Rat(0));
            return gen_torus(opt.n, potential);
        }
        throw CLI::ValidationError("--kind", "unknown generator kind: " + opt.kind);
    }();
    emit(opt.output, instance_json(inst).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete weak KAM solver"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("--input", opt.input, "instance JSON path")->required();
        sub->add_option("--output", opt.output, "output path (default stdout)");
        sub->add_option("--lambda", opt.lambda_text, "discount factor in (0,1)");
        sub->add_option("--beta", opt.beta_text, "additive constant (default 0)");
        sub->add_option("--tol", opt.tol_text, "float-mode tolerance");
        sub->add_option("--schedule", opt.schedule_text, "comma-separated lambda list");
        sub->add_option("--mode", opt.mode, "rational|float64 (gen only)");
        sub->add_option("--seed", opt.seed, "generator / property-check seed");
        sub->add_option("--csv-rational", opt.csv_rational, "decimal|fraction")
            ->check(CLI::IsMember({"decimal", "fraction"}));
    };

    for (const char* name : {"solve", "critical", "barrier", "mather", "u0", "sweep", "check"})
        add_common(app.add_subcommand(name), true);
    auto* gen = app.add_subcommand("gen", "write a generated instance");
    add_common(gen, false);
    gen->add_option("--kind", opt.kind, "random_rational|random_float|torus_lagrangian");
    gen->add_option("--n", opt.n, "point count / grid size");
    gen->add_option("--lo", opt.lo_text, "cost range lower bound");
    gen->add_option("--hi", opt.hi_text, "cost range upper bound");
    gen->add_option("--denominator-bound", opt.denominator_bound, "max denominator");
    gen->add_option("--potential", opt.potential_text, "comma-separated potential (torus)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "gen") return run_gen(opt);
        Instance inst = load_instance(opt.input);
        return std::visit([&](const auto& sp) { return run_command(cmd, sp, opt); }, inst);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
