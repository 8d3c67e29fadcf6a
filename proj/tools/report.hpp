#pragma once

#include "manicoh/cohomotopy.hpp"
#include "manicoh/manifold.hpp"
#include "manicoh/splitting.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace manicoh::report {

struct ViolationEntry {
  std::string path;
  std::string rule;
  std::string message;
  bool operator==(const ViolationEntry&) const = default;
};

struct Validation {
  bool ok = true;
  std::vector<ViolationEntry> violations;
  std::vector<std::string> warnings;
  bool operator==(const Validation&) const = default;
};

struct SummandEntry {
  std::string space;
  unsigned multiplicity = 1;
  bool operator==(const SummandEntry&) const = default;
};

struct Decomposition {
  std::string wedge;
  std::vector<SummandEntry> summands;
  std::string cofibre;
  std::string normalized_attach;
  unsigned r_j0 = 0;
  unsigned r_j1 = 0;
  bool operator==(const Decomposition&) const = default;
};

struct DegreeEntry {
  int degree = 0;
  std::string kind;
  std::string value;
  std::string sub;
  std::string quot;
  std::string split;
  std::vector<std::string> candidates;
  std::vector<std::string> notes;
  std::map<std::string, std::string> data;
  bool operator==(const DegreeEntry&) const = default;
};

struct Checks {
  bool homology_ok = true;
  std::vector<std::string> homology_mismatches;
  bool consistency_ok = true;
  std::vector<std::string> consistency_mismatches;
  bool operator==(const Checks&) const = default;
};

struct OracleSummary {
  std::string status;  // certified, mismatch or refused
  std::string normalized;
  std::string oracle;
  std::string detail;
  bool operator==(const OracleSummary&) const = default;
};

struct Report {
  nlohmann::json descriptor;
  Validation validation;
  std::optional<Decomposition> decomposition;
  std::vector<DegreeEntry> degrees;
  std::optional<Checks> checks;
  std::optional<OracleSummary> oracle;
  bool operator==(const Report&) const = default;
};

void to_json(nlohmann::json& j, const ViolationEntry& v);
void from_json(const nlohmann::json& j, ViolationEntry& v);
void to_json(nlohmann::json& j, const Validation& v);
void from_json(const nlohmann::json& j, Validation& v);
void to_json(nlohmann::json& j, const SummandEntry& v);
void from_json(const nlohmann::json& j, SummandEntry& v);
void to_json(nlohmann::json& j, const Decomposition& v);
void from_json(const nlohmann::json& j, Decomposition& v);
void to_json(nlohmann::json& j, const DegreeEntry& v);
void from_json(const nlohmann::json& j, DegreeEntry& v);
void to_json(nlohmann::json& j, const Checks& v);
void from_json(const nlohmann::json& j, Checks& v);
void to_json(nlohmann::json& j, const OracleSummary& v);
void from_json(const nlohmann::json& j, OracleSummary& v);
void to_json(nlohmann::json& j, const Report& v);
void from_json(const nlohmann::json& j, Report& v);

nlohmann::json descriptor_json(const ManifoldDescriptor& d);
Validation validation_entry(const ValidationReport& r);
Decomposition decomposition_entry(const WedgeDecomposition& w);
DegreeEntry degree_entry(const CohomotopyResult& r);
Checks run_checks(const ManifoldDescriptor& d, const WedgeDecomposition& w);
OracleSummary run_oracle(const ManifoldDescriptor& d);

struct Options {
  std::optional<int> degree;
  bool check = false;
  bool oracle = false;
};

// Validation first; the remaining sections only when the descriptor is valid.
Report build(const ManifoldDescriptor& d, const Options& opts);

std::string render_text(const Report& r);
std::string render_json(const Report& r);

}  // namespace manicoh::report
