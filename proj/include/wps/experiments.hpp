#pragma once

#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "wps/config.hpp"

namespace wps {

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

const std::vector<ExperimentInfo>& experiments();

std::string listing_text();
nlohmann::json listing_json();

// Runs cfg's experiment, writing artifacts under outdir. Returns the summary
// that was also written to outdir/summary.json. Throws wps::Error subclasses.
nlohmann::json run_experiment(const Config& cfg, const std::string& outdir);

// 2 config, 3 validation, 4 numerical guard, 1 anything else
int exit_code_for(const std::exception& e);

}  // namespace wps
