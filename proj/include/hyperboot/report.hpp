#pragma once

// JSON and CSV renderings of results.

#include "hyperboot/construction.hpp"
#include "hyperboot/engine.hpp"
#include "hyperboot/extremal.hpp"
#include "hyperboot/snake.hpp"

#include <json.hpp>

#include <iosfwd>

namespace hyperboot {

nlohmann::json vertex_list(const WordSet& s);

nlohmann::json to_json(const Outcome& o, bool with_times = false);
nlohmann::json to_json(const SnakePath& p);
nlohmann::json to_json(const SnakeSearchResult& r);
nlohmann::json to_json(const ModifiedSnakeReport& r);
nlohmann::json to_json(const StructureReport& r, int d);
nlohmann::json to_json(const Claim1Verdict& v, int d);
nlohmann::json to_json(const WitnessResult& w);
nlohmann::json to_json(const MaxTimeResult& r);
nlohmann::json to_json(const McStats& s);

// time,count rows.
void write_histogram_csv(std::ostream& out, const McStats& s);
// round,newly_infected_count,new_vertices rows (vertices joined by ';').
void write_trajectory_csv(std::ostream& out, int d, int r, const WordSet& initial);

}  // namespace hyperboot
