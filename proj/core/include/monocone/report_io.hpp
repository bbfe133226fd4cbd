#pragma once

#include <string>
#include <vector>

#include "monocone/experiments.hpp"

namespace monocone {

/// Serializes one report as a JSON object. Field order is alphabetical and
/// formatting is fixed, so equal reports serialize to identical bytes.
std::string report_to_json(const ExperimentReport& report);

/// Serializes reports as a JSON array (2-space indent, trailing newline).
std::string reports_to_json(const std::vector<ExperimentReport>& reports);

/// CSV with header experiment_id,estimate,std_error,theory,z_score,ks_statistic,verdict.
/// Vector-valued fields are ';'-joined inside one cell.
std::string reports_to_csv(const std::vector<ExperimentReport>& reports);

}  // namespace monocone
