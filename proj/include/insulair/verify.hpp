#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace insulair::verify {

/// Names of the available verification suites.
std::vector<std::string> suite_names();

/// Runs one suite ("all" runs every suite). The config object may override the
/// suite defaults (samples, seed, resolution, beta, delta, R, ...). The report
/// carries a boolean "pass", the resolved config, and per-check details.
nlohmann::json run_suite(const std::string& name, const nlohmann::json& config);

}  // namespace insulair::verify
