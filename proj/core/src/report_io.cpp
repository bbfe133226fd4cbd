#include "monocone/report_io.hpp"

#include "json.hpp"

namespace monocone {

namespace {

nlohmann::json value_or_list(const std::vector<double>& values) {
  if (values.size() == 1) return values.front();
  return nlohmann::json(values);
}

nlohmann::json report_json(const ExperimentReport& report) {
  nlohmann::json spec = nlohmann::json::object();
  for (const auto& [key, value] : report.spec) {
    std::visit([&spec, &key](const auto& v) { spec[key] = v; }, value);
  }

  nlohmann::json out;
  out["experiment_id"] = report.experiment_id;
  out["spec"] = std::move(spec);
  out["estimate"] = value_or_list(report.estimate);
  out["std_error"] = value_or_list(report.std_error);
  out["theory"] = value_or_list(report.theory);
  out["z_score"] = report.z_score;
  out["ks_statistic"] =
      report.ks_statistic ? nlohmann::json(*report.ks_statistic) : nlohmann::json(nullptr);
  out["ks_threshold"] =
      report.ks_threshold ? nlohmann::json(*report.ks_threshold) : nlohmann::json(nullptr);
  out["replicates"] = report.replicates;
  out["verdict"] = report.pass ? "pass" : "fail";
  return out;
}

std::string join_cell(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += format_double_shortest(values[i]);
  }
  return out;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  return report_json(report).dump(2);
}

std::string reports_to_json(const std::vector<ExperimentReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ExperimentReport& report : reports) arr.push_back(report_json(report));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<ExperimentReport>& reports) {
  std::string out = "experiment_id,estimate,std_error,theory,z_score,ks_statistic,verdict\n";
  for (const ExperimentReport& report : reports) {
    out += report.experiment_id;
    out += ',';
    out += join_cell(report.estimate);
    out += ',';
    out += join_cell(report.std_error);
    out += ',';
    out += join_cell(report.theory);
    out += ',';
    out += format_double_shortest(report.z_score);
    out += ',';
    if (report.ks_statistic) out += format_double_shortest(*report.ks_statistic);
    out += ',';
    out += report.pass ? "pass" : "fail";
    out += '\n';
  }
  return out;
}

}  // namespace monocone
