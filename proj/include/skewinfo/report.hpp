#pragma once

//
// Data model for the randomized verification suites: suite configuration,
// per-suite trial reports, the p-grid search report, and their JSON / CSV
// serialization. JSON is emitted with a fixed field order and 17-significant-
// digit numbers, so identical runs produce identical bytes (the wall_time_s
// field is the only run-dependent value).
//

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewinfo/channel.hpp"
#include "skewinfo/io.hpp"
#include "skewinfo/matrix.hpp"
#include "skewinfo/measures.hpp"
#include "skewinfo/rng.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

enum class Property {
  monotonicity,
  strong_monotonicity,
  convexity,
  kraus_independence,
  lemma3_identity,
  nonnegativity,
  hermitian_strong_monotonicity,
};

inline const char* to_string(Property p) {
  switch (p) {
    case Property::monotonicity: return "monotonicity";
    case Property::strong_monotonicity: return "strong-monotonicity";
    case Property::convexity: return "convexity";
    case Property::kraus_independence: return "kraus-independence";
    case Property::lemma3_identity: return "lemma3-identity";
    case Property::nonnegativity: return "nonnegativity";
    case Property::hermitian_strong_monotonicity: return "hermitian-strong-monotonicity";
  }
  return "unknown";
}

inline Property property_from_string(const std::string& s) {
  if (s == "monotonicity") return Property::monotonicity;
  if (s == "strong-monotonicity") return Property::strong_monotonicity;
  if (s == "convexity") return Property::convexity;
  if (s == "kraus-independence") return Property::kraus_independence;
  if (s == "lemma3-identity") return Property::lemma3_identity;
  if (s == "nonnegativity") return Property::nonnegativity;
  if (s == "hermitian-strong-monotonicity") return Property::hermitian_strong_monotonicity;
  throw std::invalid_argument("unknown property: " + s);
}

struct ResourceChoice {
  enum class Kind { dephasing, twirl_cyclic, custom };
  Kind kind = Kind::dephasing;
  int cyclic_order = 2;  // N for twirl-cyclic(N)
  std::string path;      // representation file for custom
};

inline const char* to_string(ResourceChoice::Kind k) {
  switch (k) {
    case ResourceChoice::Kind::dephasing: return "dephasing";
    case ResourceChoice::Kind::twirl_cyclic: return "twirl-cyclic";
    case ResourceChoice::Kind::custom: return "custom";
  }
  return "unknown";
}

inline ResourceChoice::Kind resource_kind_from_string(const std::string& s) {
  if (s == "dephasing") return ResourceChoice::Kind::dephasing;
  if (s == "twirl-cyclic") return ResourceChoice::Kind::twirl_cyclic;
  if (s == "custom") return ResourceChoice::Kind::custom;
  throw std::invalid_argument("unknown resource kind: " + s);
}

struct SuiteConfig {
  Property property = Property::monotonicity;
  ResourceChoice resource;
  int dim = 2;
  int trials = 100;
  // Absent p selects the skew-information measure I(rho, lambda); a present p
  // selects I_p. Values outside (0,1) run but are flagged exploratory.
  std::optional<OrderParameter> p;
  int n_kraus_free = 2;
  RngSeed seed;
  TolerancePolicy tolerance;
  int threads = 1;

  bool exploratory() const { return p && !(p->value() > 0.0 && p->value() < 1.0); }

  void validate() const {
    tolerance.validate();
    if (trials < 1) throw std::invalid_argument("suite config: trials must be at least 1");
    if (dim < 2) throw std::invalid_argument("suite config: dim must be at least 2");
    if (n_kraus_free < 1) throw std::invalid_argument("suite config: n_kraus_free must be at least 1");
    if (threads < 1) throw std::invalid_argument("suite config: threads must be at least 1");
    // pointer-extended systems must stay desk scale
    if (static_cast<long long>(dim) * n_kraus_free > 64) {
      throw std::invalid_argument("suite config: dim * n_kraus_free exceeds the 64-dimension guard");
    }
    if (resource.kind == ResourceChoice::Kind::twirl_cyclic && resource.cyclic_order < 1) {
      throw std::invalid_argument("suite config: twirl-cyclic order must be positive");
    }
    if (resource.kind == ResourceChoice::Kind::custom && resource.path.empty()) {
      throw std::invalid_argument("suite config: custom resource requires a representation path");
    }
  }
};

// Witness payload serialized with a report: whatever objects produced the
// extremal margin, keyed by role.
struct WorstCase {
  long long trial_index = -1;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, Matrix>> matrices;
  std::vector<std::pair<std::string, KrausChannel>> channels;
};

struct TrialReport {
  SuiteConfig config;
  long long trials_run = 0;
  long long violations = 0;  // margins below -assert_atol
  double min_margin = 0.0;
  // Strong-monotonicity (skew case) also re-derives each margin through the
  // pointer-extended channel; this counts trials where the direct margin fell
  // below the lifted one beyond assert_atol.
  std::optional<long long> lift_violations;
  std::vector<double> margins;  // one per trial, by trial index
  WorstCase worst_case;
  double wall_time_s = 0.0;
};

struct SearchCandidate {
  long long trial_index = -1;
  double margin = 0.0;                      // stage 1, regularization delta = 1e-8
  double reverified_margin = 0.0;           // stage 2 trace route, delta = 1e-10
  double reverified_spectral_margin = 0.0;  // stage 2 spectral route, delta = 1e-10
  bool confirmed = false;
  WorstCase witness;
};

struct SearchEntry {
  double p = 0.0;
  long long trials = 0;
  long long violations = 0;
  double min_margin = 0.0;
  std::optional<SearchCandidate> candidate;
};

struct SearchReport {
  SuiteConfig base;
  std::vector<double> p_grid;
  std::vector<SearchEntry> entries;
  double wall_time_s = 0.0;
};

enum class ReportFormat { json, csv };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format: " + s);
}

// --- emission --- //

namespace detail {

inline void write_config(JsonWriter& w, const SuiteConfig& cfg) {
  w.begin_object();
  w.key("property");
  w.value(std::string_view(to_string(cfg.property)));
  w.key("resource");
  w.begin_object(true);
  w.key("kind");
  w.value(std::string_view(to_string(cfg.resource.kind)));
  w.key("cyclic_order");
  w.value_int(cfg.resource.cyclic_order);
  w.key("path");
  w.value(std::string_view(cfg.resource.path));
  w.end_object();
  w.key("dim");
  w.value_int(cfg.dim);
  w.key("trials");
  w.value_int(cfg.trials);
  if (cfg.p) {
    w.key("p");
    w.value(cfg.p->value());
    w.key("exploratory");
    w.value(cfg.exploratory());
  }
  w.key("n_kraus_free");
  w.value_int(cfg.n_kraus_free);
  w.key("seed");
  w.value_u64(cfg.seed.seed);
  w.key("stream");
  w.value_u64(cfg.seed.stream);
  w.key("tolerance");
  w.begin_object(true);
  w.key("eig_clamp");
  w.value(cfg.tolerance.eig_clamp);
  w.key("assert_atol");
  w.value(cfg.tolerance.assert_atol);
  w.key("unitary_atol");
  w.value(cfg.tolerance.unitary_atol);
  w.key("support_rtol");
  w.value(cfg.tolerance.support_rtol);
  w.end_object();
  w.key("threads");
  w.value_int(cfg.threads);
  w.end_object();
}

inline void write_worst_case(JsonWriter& w, const WorstCase& wc) {
  w.begin_object();
  w.key("trial_index");
  w.value_int(wc.trial_index);
  w.key("scalars");
  w.begin_object(true);
  for (const auto& [name, v] : wc.scalars) {
    w.key(name);
    w.value(v);
  }
  w.end_object();
  w.key("matrices");
  w.begin_object();
  for (const auto& [name, m] : wc.matrices) {
    w.key(name);
    write_matrix(w, m);
  }
  w.end_object();
  w.key("channels");
  w.begin_object();
  for (const auto& [name, ch] : wc.channels) {
    w.key(name);
    write_channel(w, ch);
  }
  w.end_object();
  w.end_object();
}

}  // namespace detail

inline std::string emit_report(const TrialReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = "trial,margin\n";
    for (std::size_t t = 0; t < report.margins.size(); ++t) {
      out += std::to_string(t);
      out += ',';
      out += format_double(report.margins[t]);
      out += '\n';
    }
    return out;
  }
  JsonWriter w;
  w.begin_object();
  w.key("type");
  w.value(std::string_view("trial_report"));
  w.key("config");
  detail::write_config(w, report.config);
  w.key("trials_run");
  w.value_int(report.trials_run);
  w.key("violations");
  w.value_int(report.violations);
  w.key("min_margin");
  w.value(report.min_margin);
  if (report.lift_violations) {
    w.key("lift_violations");
    w.value_int(*report.lift_violations);
  }
  w.key("margins");
  w.begin_array(true);
  for (double m : report.margins) w.value(m);
  w.end_array();
  w.key("worst_case");
  detail::write_worst_case(w, report.worst_case);
  w.key("wall_time_s");
  w.value(report.wall_time_s);
  w.end_object();
  return w.str() + "\n";
}

inline std::string emit_report(const SearchReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = "p,min_margin,trials\n";
    for (const SearchEntry& e : report.entries) {
      out += format_double(e.p);
      out += ',';
      out += format_double(e.min_margin);
      out += ',';
      out += std::to_string(e.trials);
      out += '\n';
    }
    return out;
  }
  JsonWriter w;
  w.begin_object();
  w.key("type");
  w.value(std::string_view("search_report"));
  w.key("config");
  detail::write_config(w, report.base);
  w.key("p_grid");
  w.begin_array(true);
  for (double p : report.p_grid) w.value(p);
  w.end_array();
  w.key("entries");
  w.begin_array();
  for (const SearchEntry& e : report.entries) {
    w.begin_object();
    w.key("p");
    w.value(e.p);
    w.key("trials");
    w.value_int(e.trials);
    w.key("violations");
    w.value_int(e.violations);
    w.key("min_margin");
    w.value(e.min_margin);
    if (e.candidate) {
      w.key("candidate");
      w.begin_object();
      w.key("trial_index");
      w.value_int(e.candidate->trial_index);
      w.key("margin");
      w.value(e.candidate->margin);
      w.key("reverified_margin");
      w.value(e.candidate->reverified_margin);
      w.key("reverified_spectral_margin");
      w.value(e.candidate->reverified_spectral_margin);
      w.key("confirmed");
      w.value(e.candidate->confirmed);
      w.key("witness");
      detail::write_worst_case(w, e.candidate->witness);
      w.end_object();
    }
    w.end_object();
  }
  w.end_array();
  w.key("wall_time_s");
  w.value(report.wall_time_s);
  w.end_object();
  return w.str() + "\n";
}

// --- parsing --- //

namespace detail {

inline SuiteConfig parse_config(const nlohmann::json& j) {
  SuiteConfig cfg;
  cfg.property = property_from_string(j.at("property").get<std::string>());
  const auto& r = j.at("resource");
  cfg.resource.kind = resource_kind_from_string(r.at("kind").get<std::string>());
  cfg.resource.cyclic_order = r.at("cyclic_order").get<int>();
  cfg.resource.path = r.at("path").get<std::string>();
  cfg.dim = j.at("dim").get<int>();
  cfg.trials = j.at("trials").get<int>();
  if (j.contains("p")) cfg.p = OrderParameter(j.at("p").get<double>());
  cfg.n_kraus_free = j.at("n_kraus_free").get<int>();
  cfg.seed.seed = j.at("seed").get<std::uint64_t>();
  cfg.seed.stream = j.at("stream").get<std::uint64_t>();
  const auto& t = j.at("tolerance");
  cfg.tolerance.eig_clamp = t.at("eig_clamp").get<double>();
  cfg.tolerance.assert_atol = t.at("assert_atol").get<double>();
  cfg.tolerance.unitary_atol = t.at("unitary_atol").get<double>();
  cfg.tolerance.support_rtol = t.at("support_rtol").get<double>();
  cfg.threads = j.at("threads").get<int>();
  return cfg;
}

inline WorstCase parse_worst_case(const nlohmann::json& j,
                                  const TolerancePolicy& tol = default_tolerance()) {
  WorstCase wc;
  wc.trial_index = j.at("trial_index").get<long long>();
  for (const auto& [name, v] : j.at("scalars").items()) {
    wc.scalars.emplace_back(name, v.get<double>());
  }
  for (const auto& [name, v] : j.at("matrices").items()) {
    wc.matrices.emplace_back(name, matrix_from_json(v));
  }
  for (const auto& [name, v] : j.at("channels").items()) {
    wc.channels.emplace_back(name, channel_from_json(v, tol));
  }
  return wc;
}

}  // namespace detail

inline TrialReport parse_trial_report(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("type").get<std::string>() != "trial_report") {
    throw std::runtime_error("parse_trial_report: not a trial report");
  }
  TrialReport report;
  report.config = detail::parse_config(j.at("config"));
  report.trials_run = j.at("trials_run").get<long long>();
  report.violations = j.at("violations").get<long long>();
  report.min_margin = j.at("min_margin").get<double>();
  if (j.contains("lift_violations")) {
    report.lift_violations = j.at("lift_violations").get<long long>();
  }
  report.margins = j.at("margins").get<std::vector<double>>();
  report.worst_case = detail::parse_worst_case(j.at("worst_case"), report.config.tolerance);
  report.wall_time_s = j.at("wall_time_s").get<double>();
  return report;
}

inline SearchReport parse_search_report(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("type").get<std::string>() != "search_report") {
    throw std::runtime_error("parse_search_report: not a search report");
  }
  SearchReport report;
  report.base = detail::parse_config(j.at("config"));
  report.p_grid = j.at("p_grid").get<std::vector<double>>();
  for (const auto& ej : j.at("entries")) {
    SearchEntry e;
    e.p = ej.at("p").get<double>();
    e.trials = ej.at("trials").get<long long>();
    e.violations = ej.at("violations").get<long long>();
    e.min_margin = ej.at("min_margin").get<double>();
    if (ej.contains("candidate")) {
      const auto& cj = ej.at("candidate");
      SearchCandidate c;
      c.trial_index = cj.at("trial_index").get<long long>();
      c.margin = cj.at("margin").get<double>();
      c.reverified_margin = cj.at("reverified_margin").get<double>();
      c.reverified_spectral_margin = cj.at("reverified_spectral_margin").get<double>();
      c.confirmed = cj.at("confirmed").get<bool>();
      c.witness = detail::parse_worst_case(cj.at("witness"), report.base.tolerance);
      e.candidate = std::move(c);
    }
    report.entries.push_back(std::move(e));
  }
  report.wall_time_s = j.at("wall_time_s").get<double>();
  return report;
}

}  // namespace skewinfo
