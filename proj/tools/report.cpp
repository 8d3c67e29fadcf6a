#include "report.hpp"

#include <sstream>

namespace manicoh::report {

using nlohmann::json;

void to_json(json& j, const ViolationEntry& v) { j = {{"path", v.path}, {"rule", v.rule}, {"message", v.message}}; }

void from_json(const json& j, ViolationEntry& v) {
  j.at("path").get_to(v.path);
  j.at("rule").get_to(v.rule);
  j.at("message").get_to(v.message);
}

void to_json(json& j, const Validation& v) {
  j = {{"ok", v.ok}, {"violations", v.violations}, {"warnings", v.warnings}};
}

void from_json(const json& j, Validation& v) {
  j.at("ok").get_to(v.ok);
  j.at("violations").get_to(v.violations);
  j.at("warnings").get_to(v.warnings);
}

void to_json(json& j, const SummandEntry& v) { j = {{"space", v.space}, {"multiplicity", v.multiplicity}}; }

void from_json(const json& j, SummandEntry& v) {
  j.at("space").get_to(v.space);
  j.at("multiplicity").get_to(v.multiplicity);
}

void to_json(json& j, const Decomposition& v) {
  j = {{"wedge", v.wedge},         {"summands", v.summands}, {"cofibre", v.cofibre},
       {"normalized_attach", v.normalized_attach}, {"r_j0", v.r_j0}, {"r_j1", v.r_j1}};
}

void from_json(const json& j, Decomposition& v) {
  j.at("wedge").get_to(v.wedge);
  j.at("summands").get_to(v.summands);
  j.at("cofibre").get_to(v.cofibre);
  j.at("normalized_attach").get_to(v.normalized_attach);
  j.at("r_j0").get_to(v.r_j0);
  j.at("r_j1").get_to(v.r_j1);
}

void to_json(json& j, const DegreeEntry& v) {
  j = {{"degree", v.degree}, {"kind", v.kind},   {"value", v.value},
       {"sub", v.sub},       {"quot", v.quot},   {"split", v.split},
       {"candidates", v.candidates}, {"notes", v.notes}, {"data", v.data}};
}

void from_json(const json& j, DegreeEntry& v) {
  j.at("degree").get_to(v.degree);
  j.at("kind").get_to(v.kind);
  j.at("value").get_to(v.value);
  j.at("sub").get_to(v.sub);
  j.at("quot").get_to(v.quot);
  j.at("split").get_to(v.split);
  j.at("candidates").get_to(v.candidates);
  j.at("notes").get_to(v.notes);
  j.at("data").get_to(v.data);
}

void to_json(json& j, const Checks& v) {
  j = {{"homology_ok", v.homology_ok},
       {"homology_mismatches", v.homology_mismatches},
       {"consistency_ok", v.consistency_ok},
       {"consistency_mismatches", v.consistency_mismatches}};
}

void from_json(const json& j, Checks& v) {
  j.at("homology_ok").get_to(v.homology_ok);
  j.at("homology_mismatches").get_to(v.homology_mismatches);
  j.at("consistency_ok").get_to(v.consistency_ok);
  j.at("consistency_mismatches").get_to(v.consistency_mismatches);
}

void to_json(json& j, const OracleSummary& v) {
  j = {{"status", v.status}, {"normalized", v.normalized}, {"oracle", v.oracle}, {"detail", v.detail}};
}

void from_json(const json& j, OracleSummary& v) {
  j.at("status").get_to(v.status);
  j.at("normalized").get_to(v.normalized);
  j.at("oracle").get_to(v.oracle);
  j.at("detail").get_to(v.detail);
}

void to_json(json& j, const Report& v) {
  j = {{"descriptor", v.descriptor}, {"validation", v.validation}, {"degrees", v.degrees}};
  j["decomposition"] = v.decomposition ? json(*v.decomposition) : json(nullptr);
  j["checks"] = v.checks ? json(*v.checks) : json(nullptr);
  j["oracle"] = v.oracle ? json(*v.oracle) : json(nullptr);
}

void from_json(const json& j, Report& v) {
  v.descriptor = j.at("descriptor");
  j.at("validation").get_to(v.validation);
  j.at("degrees").get_to(v.degrees);
  auto opt = [&]<typename T>(const char* key, std::optional<T>& out) {
    if (j.contains(key) && !j.at(key).is_null())
      out = j.at(key).get<T>();
    else
      out.reset();
  };
  opt("decomposition", v.decomposition);
  opt("checks", v.checks);
  opt("oracle", v.oracle);
}

namespace {

json int_json(const Int& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

std::vector<std::string> strings(const std::vector<FgAbGroup>& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs) out.push_back(g.invariant_string());
  return out;
}

std::string pi(int degree) { return "π" + superscript(static_cast<unsigned>(degree)) + "(M)"; }

}  // namespace

json descriptor_json(const ManifoldDescriptor& d) {
  json j;
  j["n"] = d.n;
  j["l"] = d.l;
  j["k"] = d.k;
  j["c"] = d.c;
  j["spin"] = d.spin;
  json t = json::array();
  for (const auto& f : d.torsion.factors) t.push_back({int_json(f.p), f.r});
  j["torsion"] = t;
  json a = json::object();
  for (const auto& b : d.attach.blocks) {
    json e = json::array();
    for (const auto& x : b.entries) e.push_back(int_json(x));
    a[b.name] = e;
  }
  j["attach"] = a;
  j["steenrod"] = d.steenrod.has_value();
  return j;
}

Validation validation_entry(const ValidationReport& r) {
  Validation v;
  v.ok = r.ok();
  for (const auto& x : r.violations) v.violations.push_back({x.path, x.rule, x.message});
  v.warnings = r.warnings;
  return v;
}

Decomposition decomposition_entry(const WedgeDecomposition& w) {
  Decomposition d;
  d.wedge = w.to_string();
  for (const auto& s : w.summands) d.summands.push_back({s.space.to_string(), s.multiplicity});
  d.cofibre = w.cofibre.to_string();
  d.normalized_attach = w.cofibre.attach.vector.to_string();
  d.r_j0 = w.cofibre.attach.r_j0;
  d.r_j1 = w.cofibre.attach.r_j1;
  return d;
}

DegreeEntry degree_entry(const CohomotopyResult& r) {
  using K = CohomotopyResult::Kind;
  DegreeEntry e;
  e.degree = r.degree;
  e.kind = kind_name(r.kind);
  e.notes = r.notes;
  e.data = r.data;
  switch (r.kind) {
    case K::ExactGroup:
      e.value = r.group.to_string();
      break;
    case K::Extension: {
      const auto& s = r.extension;
      e.value = s.middle ? s.middle->invariant_string() : "extension";
      e.sub = s.sub.to_string();
      e.quot = s.quot.to_string();
      e.split = split_name(s.split);
      e.candidates = strings(s.middle_candidates);
      for (const auto& n : s.notes) e.notes.push_back(n);
      if (!s.sub.known && !s.sub_candidates.empty()) {
        std::string list;
        for (const auto& g : s.sub_candidates) list += (list.empty() ? "" : ", ") + g.invariant_string();
        e.data["sub_candidates"] = list;
      }
      break;
    }
    case K::TorsorOver:
      e.value = "torsor over " + pi(r.torsor_degree);
      break;
    case K::StructuralStatement:
    case K::Unknown:
      e.value = r.text;
      e.data["key"] = r.key;
      break;
  }
  if (!r.provenance.empty()) e.data["provenance"] = r.provenance;
  return e;
}

Checks run_checks(const ManifoldDescriptor& d, const WedgeDecomposition& w) {
  Checks c;
  const auto h = homology_check(w, d);
  c.homology_ok = h.ok;
  c.homology_mismatches = h.mismatches;
  c.consistency_mismatches = consistency_mismatches(d);
  c.consistency_ok = c.consistency_mismatches.empty();
  return c;
}

OracleSummary run_oracle(const ManifoldDescriptor& d) {
  OracleSummary o;
  const auto norm = normalize(d.attach);
  o.normalized = norm.vector.to_string();
  try {
    const auto best = oracle_canonical(d.attach);
    o.oracle = best.to_string();
    o.status = best == norm.vector ? "certified" : "mismatch";
  } catch (const OracleRefused& e) {
    o.status = "refused";
    o.detail = e.what();
  }
  return o;
}

Report build(const ManifoldDescriptor& d, const Options& opts) {
  Report r;
  r.descriptor = descriptor_json(d);
  r.validation = validation_entry(validate(d));
  if (!r.validation.ok) return r;
  const auto w = suspension_splitting(d);
  r.decomposition = decomposition_entry(w);
  if (opts.degree) {
    r.degrees.push_back(degree_entry(compute_degree(d, *opts.degree)));
  } else {
    for (const auto& [i, res] : compute_all(d)) r.degrees.push_back(degree_entry(res));
  }
  if (opts.check) r.checks = run_checks(d, w);
  if (opts.oracle) r.oracle = run_oracle(d);
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "descriptor: " << r.descriptor.dump() << "\n";
  out << "validation: " << (r.validation.ok ? "ok" : "failed") << "\n";
  for (const auto& v : r.validation.violations)
    out << "  violation " << v.path << " [" << v.rule << "]: " << v.message << "\n";
  for (const auto& w : r.validation.warnings) out << "  warning: " << w << "\n";

  if (r.decomposition) {
    const auto& d = *r.decomposition;
    out << "suspension splitting:\n";
    out << "  ΣM ≃ " << d.wedge << "\n";
    for (const auto& s : d.summands) out << "  summand " << s.multiplicity << " × " << s.space << "\n";
    out << "  cofibre: " << d.cofibre << "\n";
    out << "  normalized attaching vector: " << d.normalized_attach << "\n";
    out << "  r_j0 = " << d.r_j0 << ", r_j1 = " << d.r_j1 << "\n";
  }

  if (!r.degrees.empty()) out << "cohomotopy:\n";
  for (const auto& e : r.degrees) {
    out << "  " << pi(e.degree) << " [" << e.kind << "] = " << e.value << "\n";
    if (!e.sub.empty()) out << "    sub: " << e.sub << "\n";
    if (!e.quot.empty()) out << "    quot: " << e.quot << "\n";
    if (!e.split.empty()) out << "    split: " << e.split << "\n";
    if (!e.candidates.empty()) {
      out << "    candidates:";
      for (std::size_t i = 0; i < e.candidates.size(); ++i) out << (i ? ", " : " ") << e.candidates[i];
      out << "\n";
    }
    for (const auto& [k, v] : e.data) out << "    " << k << ": " << v << "\n";
    for (const auto& n : e.notes) out << "    note: " << n << "\n";
  }

  if (r.checks) {
    const auto& c = *r.checks;
    out << "checks:\n";
    out << "  homology: " << (c.homology_ok ? "ok" : "failed") << "\n";
    for (const auto& m : c.homology_mismatches) out << "    " << m << "\n";
    out << "  cross-engine: " << (c.consistency_ok ? "ok" : "failed") << "\n";
    for (const auto& m : c.consistency_mismatches) out << "    " << m << "\n";
  }
  if (r.oracle) {
    const auto& o = *r.oracle;
    out << "oracle: " << o.status << "\n";
    out << "  normalized: " << o.normalized << "\n";
    if (!o.oracle.empty()) out << "  orbit minimum: " << o.oracle << "\n";
    if (!o.detail.empty()) out << "  detail: " << o.detail << "\n";
  }
  return out.str();
}

std::string render_json(const Report& r) { return json(r).dump(2) + "\n"; }

}  // namespace manicoh::report
