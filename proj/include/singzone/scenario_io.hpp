#ifndef SINGZONE_SCENARIO_IO_HPP
#define SINGZONE_SCENARIO_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "singzone/decoupling.hpp"
#include "singzone/sim.hpp"

namespace singzone {

/// Parses a scenario object; throws ConfigError with the offending key.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json state_to_json(const State14& s);
State14 state_from_json(const nlohmann::json& j);

/// {mode, delta (4 rows), ma or null, det, cond or null}.
nlohmann::json to_json(const DecouplingSystem& sys);

/// Columns: t, state fields, mode, u1b..u4b, det.
void write_timeseries_csv(std::ostream& os, const TimeSeries& ts);
/// Columns: t, kind, detail.
void write_events_csv(std::ostream& os, const TimeSeries& ts);

}  // namespace singzone

#endif  // SINGZONE_SCENARIO_IO_HPP
