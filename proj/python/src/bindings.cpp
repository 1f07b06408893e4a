// Python bindings. Results cross the boundary as JSON text; the package
// __init__ turns them into dicts.

#include "hyperboot/construction.hpp"
#include "hyperboot/engine.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/extremal.hpp"
#include "hyperboot/report.hpp"
#include "hyperboot/snake.hpp"
#include "hyperboot/subcube.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace hyperboot;

namespace {

WordSet to_set(const std::vector<std::string>& texts, std::optional<int> d)
{
    std::vector<Vertex> vs;
    vs.reserve(texts.size());
    for (const auto& t : texts) vs.push_back(Vertex::parse(t));
    if (!d) {
        if (vs.empty()) throw PreconditionError("dimension needed for an empty vertex list");
        d = vs.front().dim();
    }
    return WordSet::from_vertices(*d, vs);
}

std::vector<std::string> to_strings(const WordSet& s)
{
    std::vector<std::string> out;
    out.reserve(s.size());
    for (Word w : s) out.push_back(format_word(w, s.dim()));
    return out;
}

SnakeSearchOptions search_options(const std::string& mode, std::uint64_t node_limit)
{
    SnakeSearchOptions opts;
    if (mode == "budget")
        opts.mode = SnakeSearchOptions::Mode::Budget;
    else if (mode != "exhaustive")
        throw PreconditionError("mode must be exhaustive or budget, got " + mode);
    opts.node_limit = node_limit;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_hyperboot, m)
{
    m.doc() = "r-neighbour bootstrap percolation on the hypercube";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<GuardError>(m, "GuardError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<EvalError>(m, "EvalError", base.ptr());

    m.def(
        "evaluate",
        [](const std::string& expr, const std::map<std::string, std::int64_t>& ints,
           const std::map<std::string, std::vector<std::string>>& sets, std::optional<int> set_dim) {
            Env env;
            for (const auto& [k, v] : ints) env.let(k, v);
            for (const auto& [k, v] : sets) env.bind(k, to_set(v, set_dim));
            return to_strings(evaluate(expr, env));
        },
        py::arg("expr"), py::arg("ints") = std::map<std::string, std::int64_t>{},
        py::arg("sets") = std::map<std::string, std::vector<std::string>>{}, py::arg("set_dim") = py::none());

    m.def("parse_tree", [](const std::string& expr) { return to_string(parse_subcube(expr)); }, py::arg("expr"));

    m.def(
        "run",
        [](int d, int r, const std::vector<std::string>& initial, bool times, bool allow_large) {
            return to_json(run(d, r, to_set(initial, d), allow_large), times).dump();
        },
        py::arg("d"), py::arg("r"), py::arg("initial"), py::arg("times") = false, py::arg("allow_large") = false);

    m.def(
        "is_stable",
        [](int d, int r, const std::vector<std::string>& s) { return is_stable(d, r, to_set(s, d)); },
        py::arg("d"), py::arg("r"), py::arg("vertices"));

    m.def(
        "snake_search",
        [](int d, int k, const std::string& mode, std::uint64_t node_limit) {
            return to_json(search_longest(d, k, search_options(mode, node_limit))).dump();
        },
        py::arg("d"), py::arg("k") = 3, py::arg("mode") = "exhaustive", py::arg("node_limit") = 1'000'000);

    m.def(
        "snake_verify",
        [](const std::vector<std::string>& sites, int k) -> std::optional<std::string> {
            std::vector<Vertex> vs;
            for (const auto& s : sites) vs.push_back(Vertex::parse(s));
            if (auto bad = verify_snake(vs, k)) return bad->describe();
            return std::nullopt;
        },
        py::arg("sites"), py::arg("k"));

    m.def(
        "construct",
        [](int d, const std::string& mode, std::uint64_t node_limit) {
            const SnakeSearchResult src = search_longest(d - 10, 3, search_options(mode, node_limit));
            return to_json(lower_bound_witness(d, src.path)).dump();
        },
        py::arg("d"), py::arg("snake_mode") = "exhaustive", py::arg("node_limit") = 1'000'000,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "brute_force_max_time",
        [](int d, int r, int threads, bool allow_large) {
            return to_json(brute_force_max_time(d, r, threads, allow_large)).dump();
        },
        py::arg("d"), py::arg("r"), py::arg("threads") = 1, py::arg("allow_large") = false,
        py::call_guard<py::gil_scoped_release>());

    m.def("check_upper_bound", &check_upper_bound, py::arg("d"), py::arg("r"), py::arg("t"));

    m.def(
        "mc_time",
        [](int d, int r, double p, std::uint64_t samples, std::uint64_t seed, int threads) {
            return to_json(mc_percolation_time(d, r, p, samples, seed, threads)).dump();
        },
        py::arg("d"), py::arg("r"), py::arg("p"), py::arg("samples"), py::arg("seed") = 1, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "double_config",
        [](const std::vector<std::string>& a, int d) { return to_strings(double_config(to_set(a, d))); },
        py::arg("vertices"), py::arg("d"));

    m.def(
        "pad_for_r",
        [](const std::vector<std::string>& cfg, int d, int r) { return to_strings(pad_for_r(to_set(cfg, d), r)); },
        py::arg("vertices"), py::arg("d"), py::arg("r"));
}
