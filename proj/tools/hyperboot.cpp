// hyperboot: command-line front end for the percolation, snake and
// construction toolkit.
//
// Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage or
// precondition error.

#include "hyperboot/construction.hpp"
#include "hyperboot/engine.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/extremal.hpp"
#include "hyperboot/report.hpp"
#include "hyperboot/snake.hpp"
#include "hyperboot/subcube.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hyperboot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
    int threads = 1;
    bool allow_large = false;
    std::string out_dir;
};

struct UsageError : Error {
    using Error::Error;
};

std::string out_path(const Globals& g, const std::string& name)
{
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / name).string();
}

void emit(json report, const json& config)
{
    report["config"] = config;
    std::cout << report.dump(2) << '\n';
}

json base_config(const std::string& subcommand, const Globals& g)
{
    return json{{"subcommand", subcommand},
                {"threads", g.threads},
                {"allow_large", g.allow_large},
                {"out", g.out_dir.empty() ? json(nullptr) : json(g.out_dir)}};
}

std::pair<std::string, std::string> split_binding(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("binding \"" + text + "\" is not of the form name=value");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

std::optional<int> opt_dim(int d) { return d > 0 ? std::optional<int>(d) : std::nullopt; }

SnakeSearchOptions::Mode parse_mode(const std::string& mode)
{
    if (mode == "exhaustive") return SnakeSearchOptions::Mode::Exhaustive;
    if (mode == "budget") return SnakeSearchOptions::Mode::Budget;
    throw UsageError("unknown snake mode \"" + mode + "\"");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bootstrap percolation on the hypercube: dynamics, k-snakes and maximal-time constructions"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--threads", g.threads, "Worker threads for parallel sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--allow-large", g.allow_large, "Override dimension and enumeration guards");
    app.add_option("--out", g.out_dir, "Directory for auxiliary output files");

    int exit_code = kExitOk;
    std::function<void()> action;

    // eval
    std::string expr_text;
    int eval_d = 0;
    std::vector<std::string> lets, sets;
    auto* eval = app.add_subcommand("eval", "Evaluate a subcube expression and list its words");
    eval->add_option("expr", expr_text, "Expression, e.g. \"[0]~([0]^2[1,0])[*]\"")->required();
    eval->add_option("--d", eval_d, "Expected dimension; also bound as the integer d");
    eval->add_option("--let", lets, "Integer binding name=value (repeatable)");
    eval->add_option("--set", sets, "Word-set binding name=vertex-set-file (repeatable)");
    eval->callback([&] {
        action = [&] {
            Env env;
            if (eval_d > 0) env.let("d", eval_d);
            for (const auto& l : lets) {
                auto [name, value] = split_binding(l);
                try {
                    env.let(name, std::stoll(value));
                } catch (const std::exception&) {
                    throw UsageError("binding " + l + " does not have an integer value");
                }
            }
            for (const auto& s : sets) {
                auto [name, path] = split_binding(s);
                env.bind(name, read_vertex_set_file(path));
            }
            const WordSet result = evaluate(expr_text, env);
            if (eval_d > 0 && result.dim() != eval_d)
                throw PreconditionError("expression has dimension " + std::to_string(result.dim()) + ", expected " +
                                        std::to_string(eval_d));
            write_vertex_set(std::cout, result);
        };
    });

    // run
    int run_d = 0, run_r = 0;
    std::string run_input;
    bool run_times = false, run_trajectory = false;
    auto* run_cmd = app.add_subcommand("run", "Run r-neighbour dynamics from a vertex-set file");
    run_cmd->add_option("--d", run_d, "Dimension (default: from the file)");
    run_cmd->add_option("--r", run_r, "Threshold")->required();
    run_cmd->add_option("--input", run_input, "Initial vertex-set file")->required();
    run_cmd->add_flag("--times", run_times, "Include per-vertex infection times");
    run_cmd->add_flag("--trajectory", run_trajectory, "Write trajectory.csv under --out");
    run_cmd->callback([&] {
        action = [&] {
            const WordSet initial = read_vertex_set_file(run_input, opt_dim(run_d));
            const Outcome out = run(initial.dim(), run_r, initial, g.allow_large);
            if (run_trajectory) {
                if (g.out_dir.empty()) throw UsageError("--trajectory needs --out");
                std::ofstream csv(out_path(g, "trajectory.csv"));
                write_trajectory_csv(csv, initial.dim(), run_r, initial);
            }
            json cfg = base_config("run", g);
            cfg.update({{"d", initial.dim()}, {"r", run_r}, {"input", run_input}, {"times", run_times},
                        {"trajectory", run_trajectory}});
            emit(to_json(out, run_times), cfg);
        };
    });

    // stable
    int st_d = 0, st_r = 0;
    std::string st_input;
    auto* stable = app.add_subcommand("stable", "Test whether a set is stable (exit 1 if not)");
    stable->add_option("--d", st_d, "Dimension (default: from the file)");
    stable->add_option("--r", st_r, "Threshold")->required();
    stable->add_option("--input", st_input, "Vertex-set file")->required();
    stable->callback([&] {
        action = [&] {
            const WordSet set = read_vertex_set_file(st_input, opt_dim(st_d));
            const bool ok = is_stable(set.dim(), st_r, set, g.allow_large);
            json cfg = base_config("stable", g);
            cfg.update({{"d", set.dim()}, {"r", st_r}, {"input", st_input}});
            emit(json{{"stable", ok}}, cfg);
            exit_code = ok ? kExitOk : kExitVerdictFail;
        };
    });

    // snake-search
    int ss_d = 0, ss_k = 3;
    std::string ss_mode = "exhaustive";
    std::uint64_t ss_limit = 1'000'000;
    auto* ssearch = app.add_subcommand("snake-search", "Search for a longest k-snake");
    ssearch->add_option("--d", ss_d, "Dimension")->required();
    ssearch->add_option("--k", ss_k, "Spread")->capture_default_str();
    ssearch->add_option("--mode", ss_mode, "exhaustive or budget")->capture_default_str();
    ssearch->add_option("--node-limit", ss_limit, "Budget mode extension attempts")->capture_default_str();
    ssearch->callback([&] {
        action = [&] {
            SnakeSearchOptions opts;
            opts.mode = parse_mode(ss_mode);
            opts.node_limit = ss_limit;
            opts.allow_large = g.allow_large;
            const SnakeSearchResult res = search_longest(ss_d, ss_k, opts);
            if (!g.out_dir.empty()) write_snake_file(out_path(g, "snake.txt"), res.path);
            json report = to_json(res);
            report["verified"] = !verify_snake(res.path).has_value();
            if (res.path.length() > ss_k) report["local_isometry"] = !check_local_isometry(res.path).has_value();
            json cfg = base_config("snake-search", g);
            cfg.update({{"d", ss_d}, {"k", ss_k}, {"mode", ss_mode}, {"node_limit", ss_limit}});
            emit(report, cfg);
        };
    });

    // snake-verify
    std::string sv_input;
    int sv_k = 0;
    auto* sverify = app.add_subcommand("snake-verify", "Verify a snake file (exit 1 on violation)");
    sverify->add_option("--input", sv_input, "Snake file")->required();
    sverify->add_option("--k", sv_k, "Override the spread from the header");
    sverify->callback([&] {
        action = [&] {
            SnakePath path = read_snake_file(sv_input);
            if (sv_k > 0) path = SnakePath(sv_k, path.dim(), {path.sites().begin(), path.sites().end()});
            const auto violation = verify_snake(path);
            json report{{"ok", !violation.has_value()}, {"k", path.k()}, {"d", path.dim()}, {"length", path.length()}};
            report["violation"] = violation ? json(violation->describe()) : json(nullptr);
            if (!violation && path.length() > path.k())
                report["local_isometry"] = !check_local_isometry(path).has_value();
            json cfg = base_config("snake-verify", g);
            cfg.update({{"input", sv_input}, {"k", sv_k > 0 ? json(sv_k) : json(nullptr)}});
            emit(report, cfg);
            exit_code = violation ? kExitVerdictFail : kExitOk;
        };
    });

    // construct
    int c_d = 0;
    std::string c_mode = "exhaustive", c_file;
    std::uint64_t c_limit = 1'000'000;
    bool c_traj = false;
    auto* construct = app.add_subcommand("construct", "Build and verify the maximal-time witness in odd d >= 15");
    construct->add_option("--d", c_d, "Odd dimension >= 15")->required();
    construct->add_option("--snake-mode", c_mode, "exhaustive, budget or file")->capture_default_str();
    construct->add_option("--snake-file", c_file, "Dimension d-10 3-snake (with --snake-mode file)");
    construct->add_option("--node-limit", c_limit, "Budget mode extension attempts")->capture_default_str();
    construct->add_flag("--trajectory", c_traj, "Write trajectory.csv under --out");
    construct->callback([&] {
        action = [&] {
            ConstructionParams::for_dimension(c_d);
            std::optional<SnakeSearchResult> searched;
            SnakePath source = [&] {
                if (c_mode == "file") {
                    if (c_file.empty()) throw UsageError("--snake-mode file needs --snake-file");
                    return read_snake_file(c_file);
                }
                SnakeSearchOptions opts;
                opts.mode = parse_mode(c_mode);
                opts.node_limit = c_limit;
                opts.allow_large = g.allow_large;
                searched = search_longest(c_d - 10, 3, opts);
                return searched->path;
            }();
            const WitnessResult w = lower_bound_witness(c_d, source);

            json report = to_json(w);
            report["source_snake"] = to_json(source);
            if (searched) report["source_snake_exhaustive"] = searched->exhaustive;
            report["upper_bound_holds"] = check_upper_bound(c_d, 3, w.outcome.total_time);
            report["passed"] = w.passed();
            if (!g.out_dir.empty()) {
                write_snake_file(out_path(g, "source_snake.txt"), source);
                write_snake_file(out_path(g, "snake.txt"), w.parts.snake);
                write_vertex_set_file(out_path(g, "seed.txt"), WordSet(c_d, {w.parts.seed.bits()}));
                write_vertex_set_file(out_path(g, "I0.txt"), w.parts.i0);
                write_vertex_set_file(out_path(g, "J1.txt"), w.parts.j1);
                write_vertex_set_file(out_path(g, "J2.txt"), w.parts.j2);
                write_vertex_set_file(out_path(g, "J3.txt"), w.parts.j3);
                write_vertex_set_file(out_path(g, "initial.txt"), w.parts.initial_set());
                if (c_traj) {
                    std::ofstream csv(out_path(g, "trajectory.csv"));
                    write_trajectory_csv(csv, c_d, 3, w.parts.initial_set());
                }
            } else if (c_traj) {
                throw UsageError("--trajectory needs --out");
            }
            json cfg = base_config("construct", g);
            cfg.update({{"d", c_d}, {"snake_mode", c_mode}, {"snake_file", c_file.empty() ? json(nullptr) : json(c_file)},
                        {"node_limit", c_limit}, {"trajectory", c_traj}});
            emit(report, cfg);
            exit_code = w.passed() ? kExitOk : kExitVerdictFail;
        };
    });

    // brute-max-time
    int b_d = 0, b_r = 0;
    auto* brute = app.add_subcommand("brute-max-time", "Exhaustive maximal percolation time (d <= 4)");
    brute->add_option("--d", b_d, "Dimension")->required();
    brute->add_option("--r", b_r, "Threshold")->required();
    brute->callback([&] {
        action = [&] {
            const MaxTimeResult res = brute_force_max_time(b_d, b_r, g.threads, g.allow_large);
            json report = to_json(res);
            if (b_r == 2) report["floor_d2_over_3"] = b_d * b_d / 3;
            if (b_r >= 3 && b_d >= b_r) report["upper_bound_holds"] = check_upper_bound(b_d, b_r, res.max_time);
            json cfg = base_config("brute-max-time", g);
            cfg.update({{"d", b_d}, {"r", b_r}});
            emit(report, cfg);
        };
    });

    // check-bound
    int cb_d = 0, cb_r = 0;
    std::int64_t cb_t = 0;
    auto* bound = app.add_subcommand("check-bound", "Compare a time with (4r+2)2^d/d (exit 1 if exceeded)");
    bound->add_option("--d", cb_d, "Dimension")->required();
    bound->add_option("--r", cb_r, "Threshold (>= 3)")->required();
    bound->add_option("--t", cb_t, "Percolation time")->required();
    bound->callback([&] {
        action = [&] {
            const bool holds = check_upper_bound(cb_d, cb_r, cb_t);
            json report{{"holds", holds}, {"bound", std::ldexp(4.0 * cb_r + 2.0, cb_d) / cb_d}};
            try {
                const auto [num, den] = upper_bound_fraction(cb_d, cb_r);
                report["bound_numerator"] = num;
                report["bound_denominator"] = den;
            } catch (const DimensionError&) {
                // numerator beyond 64 bits; the comparison above is still exact
            }
            json cfg = base_config("check-bound", g);
            cfg.update({{"d", cb_d}, {"r", cb_r}, {"t", cb_t}});
            emit(report, cfg);
            exit_code = holds ? kExitOk : kExitVerdictFail;
        };
    });

    // mc-time
    int mc_d = 0, mc_r = 0;
    double mc_p = 0.5;
    std::uint64_t mc_samples = 100, mc_seed = 1;
    auto* mc = app.add_subcommand("mc-time", "Monte Carlo percolation-time statistics");
    mc->add_option("--d", mc_d, "Dimension")->required();
    mc->add_option("--r", mc_r, "Threshold")->required();
    mc->add_option("--p", mc_p, "Infection probability")->capture_default_str();
    mc->add_option("--samples", mc_samples, "Number of samples")->capture_default_str();
    mc->add_option("--seed", mc_seed, "Random seed")->capture_default_str();
    mc->callback([&] {
        action = [&] {
            const McStats stats = mc_percolation_time(mc_d, mc_r, mc_p, mc_samples, mc_seed, g.threads, g.allow_large);
            if (!g.out_dir.empty()) {
                std::ofstream csv(out_path(g, "histogram.csv"));
                write_histogram_csv(csv, stats);
            }
            json cfg = base_config("mc-time", g);
            cfg.update({{"d", mc_d}, {"r", mc_r}, {"p", mc_p}, {"samples", mc_samples}, {"seed", mc_seed}});
            emit(to_json(stats), cfg);
        };
    });

    // double
    std::string db_input;
    int db_d = 0, db_check = 0;
    auto* dbl = app.add_subcommand("double", "Lift a set A to [*]A one dimension up");
    dbl->add_option("--input", db_input, "Vertex-set file")->required();
    dbl->add_option("--d", db_d, "Input dimension (default: from the file)");
    dbl->add_option("--check-r", db_check, "Run both sets with this threshold and compare times");
    dbl->callback([&] {
        action = [&] {
            const WordSet a = read_vertex_set_file(db_input, opt_dim(db_d));
            const WordSet lifted = double_config(a);
            json report{{"d", lifted.dim()}, {"size", lifted.size()}, {"vertices", vertex_list(lifted)}};
            if (db_check > 0) {
                const Outcome before = run(a.dim(), db_check, a, g.allow_large);
                const Outcome after = run(lifted.dim(), db_check, lifted, g.allow_large);
                report["check"] = {{"before", to_json(before)},
                                   {"after", to_json(after)},
                                   {"same_time", before.percolated == after.percolated &&
                                                     before.total_time == after.total_time}};
                if (before.total_time != after.total_time || before.percolated != after.percolated)
                    exit_code = kExitVerdictFail;
            }
            if (!g.out_dir.empty()) write_vertex_set_file(out_path(g, "doubled.txt"), lifted);
            json cfg = base_config("double", g);
            cfg.update({{"input", db_input}, {"d", a.dim()}, {"check_r", db_check > 0 ? json(db_check) : json(nullptr)}});
            emit(report, cfg);
        };
    });

    // pad-r
    std::string pd_input;
    int pd_d = 0, pd_r = 0;
    bool pd_check = false;
    auto* pad = app.add_subcommand("pad-r", "Embed a 3-neighbour configuration for threshold r > 3");
    pad->add_option("--input", pd_input, "Vertex-set file")->required();
    pad->add_option("--d", pd_d, "Input dimension (default: from the file)");
    pad->add_option("--r", pd_r, "Target threshold (>= 3)")->required();
    pad->add_flag("--check", pd_check, "Run both configurations and compare times");
    pad->callback([&] {
        action = [&] {
            const WordSet cfg_set = read_vertex_set_file(pd_input, opt_dim(pd_d));
            const WordSet padded = pad_for_r(cfg_set, pd_r);
            json report{{"d", padded.dim()}, {"size", padded.size()}, {"vertices", vertex_list(padded)}};
            if (pd_check) {
                const Outcome before = run(cfg_set.dim(), 3, cfg_set, g.allow_large);
                const Outcome after = run(padded.dim(), pd_r, padded, g.allow_large);
                const bool same = before.percolated == after.percolated && before.total_time == after.total_time;
                report["check"] = {{"before", to_json(before)}, {"after", to_json(after)}, {"same_time", same}};
                if (!same) exit_code = kExitVerdictFail;
            }
            if (!g.out_dir.empty()) write_vertex_set_file(out_path(g, "padded.txt"), padded);
            json cfg = base_config("pad-r", g);
            cfg.update({{"input", pd_input}, {"d", cfg_set.dim()}, {"r", pd_r}, {"check", pd_check}});
            emit(report, cfg);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        action();
    } catch (const Error& e) {
        std::cerr << "hyperboot: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "hyperboot: " << e.what() << '\n';
        return kExitUsage;
    }
    return exit_code;
}
