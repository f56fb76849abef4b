#pragma once

#include <ostream>

#include <nlohmann/json.hpp>

#include "sysrisk/dynamics/logistic.hpp"
#include "sysrisk/dynamics/occupancy.hpp"
#include "sysrisk/dynamics/orbit.hpp"

namespace sysrisk::dynamics {

// CSV: header row, one row per step (orbit) or per (r, state) pair (diagram).
void write_csv(std::ostream& out, const Orbit& orbit);
void write_csv(std::ostream& out, const BifurcationDiagram& diagram);

nlohmann::json to_json(const Orbit& orbit);
nlohmann::json to_json(const BifurcationDiagram& diagram);
nlohmann::json to_json(const LyapunovEstimate& estimate);
nlohmann::json to_json(const OccupancyHistogram& histogram);

}  // namespace sysrisk::dynamics
