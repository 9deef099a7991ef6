#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tactoid/asymptotics.hpp"
#include "tactoid/diagnostics.hpp"
#include "tactoid/energy.hpp"
#include "tactoid/optimize.hpp"

namespace tactoid {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const EnergyReport& r);
ordered_json to_json(const BaselineReport& r);
ordered_json to_json(const DiagnosticsReport& r);
ordered_json to_json(const SweepResult& r);
ordered_json to_json(const OptimResult& r);

void write_json(const ordered_json& j, const std::string& path);

void write_rtable_csv(const RTable& t, const std::string& path);
void write_sweep_csv(const SweepResult& s, const std::string& path);

// log-log scatter with the fitted slope annotated
void write_loglog_svg(const std::vector<double>& x,
                      const std::vector<double>& y, const std::string& title,
                      double slope, const std::string& path);

}  // namespace tactoid
