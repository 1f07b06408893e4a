#include "hyperboot/report.hpp"

#include <ostream>

namespace hyperboot {

using nlohmann::json;

json vertex_list(const WordSet& s)
{
    json out = json::array();
    for (Word w : s) out.push_back(format_word(w, s.dim()));
    return out;
}

json to_json(const Outcome& o, bool with_times)
{
    json j{{"d", o.d},
           {"r", o.r},
           {"percolated", o.percolated},
           {"total_time", o.total_time},
           {"infected_count", o.infected_count}};
    if (with_times) {
        json times = json::object();
        for (Word v = 0; v < o.times.size(); ++v)
            if (o.times[v] != kNever) times[format_word(v, o.d)] = o.times[v];
        j["times"] = std::move(times);
    }
    return j;
}

json to_json(const SnakePath& p)
{
    json sites = json::array();
    for (Word w : p.sites()) sites.push_back(format_word(w, p.dim()));
    return json{{"k", p.k()}, {"d", p.dim()}, {"length", p.length()}, {"sites", std::move(sites)}};
}

json to_json(const SnakeSearchResult& r)
{
    return json{{"snake", to_json(r.path)}, {"exhaustive", r.exhaustive}, {"nodes", r.nodes}};
}

json to_json(const ModifiedSnakeReport& r)
{
    json j{{"is_3_snake", r.is_3_snake},
           {"end_minus_3", r.end_minus_3},
           {"end_minus_2", r.end_minus_2},
           {"end_minus_1", r.end_minus_1},
           {"end_zero", r.end_zero},
           {"heavy_body", r.heavy_body}};
    j["length_relation"] = r.length_relation ? json(*r.length_relation) : json(nullptr);
    return j;
}

json to_json(const StructureReport& r, int d)
{
    json bullets = json::array();
    for (const AuditBullet& b : r.bullets) {
        json e{{"name", b.name}, {"result", b.passed ? "pass" : "fail"}};
        if (b.witness)
            e["witness"] = json::array({format_word(b.witness->first, d), format_word(b.witness->second, d)});
        bullets.push_back(std::move(e));
    }
    return json{{"bullets", std::move(bullets)}, {"parts_disjoint", r.parts_disjoint}};
}

json to_json(const Claim1Verdict& v, int d)
{
    json j{{"result", v.passed ? "pass" : "fail"}, {"rounds_checked", v.rounds_checked}};
    if (v.failing_round) {
        j["failing_round"] = *v.failing_round;
        json missing = json::array();
        json parasites = json::array();
        for (Word w : v.missing) missing.push_back(format_word(w, d));
        for (Word w : v.parasites) parasites.push_back(format_word(w, d));
        j["missing"] = std::move(missing);
        j["parasites"] = std::move(parasites);
    }
    return j;
}

json to_json(const WitnessResult& w)
{
    const ConstructionParts& p = w.parts;
    const int d = p.params.d;
    return json{{"d", d},
                {"T", p.length()},
                {"snake", to_json(p.snake)},
                {"modified_snake_conditions", to_json(w.snake_report)},
                {"sizes",
                 {{"seed", 1}, {"I0", p.i0.size()}, {"J1", p.j1.size()}, {"J2", p.j2.size()}, {"J3", p.j3.size()}}},
                {"audit", to_json(w.audit, d)},
                {"claim1", to_json(w.claim1, d)},
                {"claim2", w.claim2 ? "pass" : "fail"},
                {"percolated", w.outcome.percolated},
                {"total_time", w.outcome.total_time},
                {"time_bound_holds", w.time_bound_holds()}};
}

json to_json(const MaxTimeResult& r)
{
    return json{{"d", r.d},
                {"r", r.r},
                {"max_time", r.max_time},
                {"witness", vertex_list(r.witness)},
                {"exhaustive", r.exhaustive}};
}

json to_json(const McStats& s)
{
    json hist = json::array();
    for (const auto& [t, c] : s.histogram) hist.push_back(json::array({t, c}));
    return json{{"d", s.d},
                {"r", s.r},
                {"p", s.p},
                {"samples", s.samples},
                {"percolated_count", s.percolated_count},
                {"histogram", std::move(hist)},
                {"mean_time", s.mean_time},
                {"max_time", s.max_time},
                {"seed", s.seed},
                {"generator", s.generator}};
}

void write_histogram_csv(std::ostream& out, const McStats& s)
{
    out << "time,count\n";
    for (const auto& [t, c] : s.histogram) out << t << ',' << c << '\n';
}

void write_trajectory_csv(std::ostream& out, int d, int r, const WordSet& initial)
{
    InfectionState state(d, r, initial);
    out << "round,newly_infected_count,new_vertices\n";
    for (;;) {
        const auto fresh = state.advance();
        if (fresh.empty()) break;
        out << state.clock() << ',' << fresh.size() << ',';
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            if (i) out << ';';
            out << format_word(fresh[i], d);
        }
        out << '\n';
    }
}

}  // namespace hyperboot
