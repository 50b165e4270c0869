#include "conifold/report.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "conifold/errors.hpp"
#include "parallel.hpp"

namespace conifold {

using json = nlohmann::ordered_json;

std::string_view tool_version() { return CONIFOLD_VERSION; }

bool VerificationReport::pass() const noexcept {
  const bool oracle_ok = !oracle || oracle->pass();
  return conditions.all_pass() && case_report.pass && gcd_degree == 0 && oracle_ok;
}

void check_degree_guard(const FamilyParams& p, const RunConfig& cfg) {
  if (p.reduced_degree() > cfg.max_degree) {
    throw Error(ErrorKind::Config,
                fmt::format("deg u = (m+1)(k+1) = {} exceeds max degree {} for m={}, k={}",
                            p.reduced_degree(), cfg.max_degree, p.m(), p.k()));
  }
}

namespace {

class StageTimer {
 public:
  StageTimer(bool enabled, std::map<std::string, double>& sink, std::string name)
      : enabled_(enabled), sink_(sink), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    if (!enabled_) return;
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    sink_[name_] += std::chrono::duration<double, std::milli>(elapsed).count();
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  bool enabled_;
  std::map<std::string, double>& sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

template <class F>
auto in_stage(const char* stage, F&& body) {
  try {
    return body();
  } catch (Error& e) {
    e.set_stage(stage);
    throw;
  }
}

std::string method_name(RootMethod m) {
  return m == RootMethod::SimultaneousIteration ? "simultaneous-iteration" : "companion-matrix";
}

OracleSummary run_oracle_stage(const FamilyParams& p, const RunConfig& cfg,
                               const std::vector<CriticalDatum>& data, double r_plus,
                               FailurePolicy policy) {
  OracleSummary s;
  const OracleRun run = multistart_critical_points(p, cfg.oracle);
  s.num_starts = run.num_starts;
  s.seed = run.seed;
  s.expected_count = run.expected_count;
  s.cluster_count = static_cast<int>(run.points.size());
  s.converged_starts = run.converged_starts;
  s.inconclusive = run.inconclusive();

  for (const auto& pt : run.points) {
    const auto shape = reduction_shape(p, pt);
    s.max_reduction_gap =
        std::max({s.max_reduction_gap, shape.first_spread, shape.last_spread, shape.relation_gap});
  }

  const auto xcon = conifold_vector(p, r_plus);
  const ComplexVector zcon(xcon.begin(), xcon.end());
  for (const auto& g : full_gradient(p, zcon)) {
    s.gradient_norm_at_conifold = std::max(s.gradient_norm_at_conifold, std::abs(g));
  }
  const auto hess = hessian_nondegenerate(p, xcon);
  s.hessian_det_at_conifold = hess.determinant_magnitude;
  s.hessian_nondegenerate = hess.nondegenerate;

  if (s.inconclusive) {
    if (policy == FailurePolicy::Throw) {
      throw Error(ErrorKind::OracleInconclusive,
                  fmt::format("oracle found {} of {} critical points", s.cluster_count,
                              s.expected_count));
    }
    return s;
  }
  const MatchReport match = compare_spectra(run.points, p, data, policy);
  s.match_pass = match.pass();
  s.matched = static_cast<int>(match.matched_pairs.size());
  s.max_pair_distance = match.max_pair_distance;
  s.match_tolerance = match.tolerance;
  s.unmatched_oracle = static_cast<int>(match.unmatched_oracle.size());
  s.unmatched_reduced = static_cast<int>(match.unmatched_reduced.size());
  if (policy == FailurePolicy::Throw && !s.hessian_nondegenerate) {
    throw Error(ErrorKind::VerificationFailure, "Hessian at the conifold point is degenerate");
  }
  return s;
}

}  // namespace

VerificationReport run_family(const FamilyParams& p, const RunConfig& cfg, FailurePolicy policy) {
  in_stage("params", [&] {
    check_degree_guard(p, cfg);
    return 0;
  });

  VerificationReport rep(p);
  rep.tool_version = std::string(tool_version());
  rep.config = cfg;
  auto& timings = rep.timings_ms;
  const bool timed = cfg.record_timings;

  const DensePolynomial u = in_stage("family", [&] {
    StageTimer t(timed, timings, "family");
    rep.r0 = radius_bound_r0(p);
    return reduced_polynomial(p);
  });

  const PositiveRoot positive = in_stage("roots", [&] {
    StageTimer t(timed, timings, "positive_root");
    return find_positive_root(u, p);
  });
  rep.r_plus = positive.r_plus;
  rep.r_plus_lo = positive.lo;
  rep.r_plus_hi = positive.hi;
  rep.t_con = critical_value_g(p, positive.r_plus);

  const RootSet roots = in_stage("roots", [&] {
    StageTimer t(timed, timings, "all_roots");
    const auto cert = square_free_certificate(u);
    rep.gcd_degree = cert.gcd_degree;
    rep.square_free_prime = cert.prime;
    if (!cert.square_free()) {
      throw Error(ErrorKind::InternalConsistency,
                  fmt::format("u is not square-free: deg gcd(u, u') = {}", cert.gcd_degree));
    }
    return all_roots(u, cfg.roots);
  });
  rep.root_method = method_name(roots.method);
  rep.root_iterations = roots.iterations;
  rep.method_disagreement = roots.method_disagreement;

  const auto data = in_stage("verifier", [&] {
    StageTimer t(timed, timings, "verifier");
    auto classified = classify_spectrum(p, roots, positive, cfg.tolerances);
    rep.conditions = check_conditions(p, classified, positive, cfg.tolerances, policy);
    rep.lemma = verify_lemma_bounds(p, classified, positive, rep.r0, cfg.tolerances);
    rep.case_report = verify_case_inequalities(p);
    if (policy == FailurePolicy::Throw && !rep.case_report.pass) {
      throw Error(ErrorKind::VerificationFailure,
                  fmt::format("case {} inequality fails (lhs {:.17g})", to_string(rep.case_report.case_id),
                              rep.case_report.lhs_value));
    }
    return classified;
  });

  rep.roots.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& d = data[i];
    rep.roots.push_back(RootRow{d.alpha.real(), d.alpha.imag(), d.modulus_root,
                                roots.roots[i].residual, roots.roots[i].error_radius,
                                d.critical_value.real(), d.critical_value.imag(), d.on_circle,
                                d.equality_class_d});
  }

  if (cfg.run_oracle) {
    rep.oracle = in_stage("oracle", [&] {
      StageTimer t(timed, timings, "oracle");
      return run_oracle_stage(p, cfg, data, positive.r_plus, policy);
    });
  }
  return rep;
}

SweepReport run_sweep(IntRange m_range, IntRange k_range, const RunConfig& cfg) {
  if (m_range.lo > m_range.hi || k_range.lo > k_range.hi) {
    throw Error(ErrorKind::Config, "sweep range is empty");
  }
  if (m_range.lo < 1 || k_range.lo < 1) {
    throw Error(ErrorKind::Config, "sweep ranges must start at 1 or above");
  }
  check_degree_guard(params_from_mk(m_range.hi, k_range.hi), cfg);

  SweepReport out;
  out.tool_version = std::string(tool_version());
  out.m_range = m_range;
  out.k_range = k_range;
  out.config = cfg;

  for (int m = m_range.lo; m <= m_range.hi; ++m) {
    for (int k = k_range.lo; k <= k_range.hi; ++k) out.entries.push_back(SweepEntry{m, k, false, {}});
  }
  std::vector<std::optional<SweepFailure>> failures(out.entries.size());
  detail::parallel_for(out.entries.size(), cfg.workers, [&](std::size_t i) {
    auto& entry = out.entries[i];
    try {
      entry.report = run_family(params_from_mk(entry.m, entry.k), cfg, FailurePolicy::Throw);
      entry.pass = entry.report->pass();
      if (!entry.pass) {
        failures[i] = SweepFailure{entry.m, entry.k, "verifier", "verification failure",
                                   "report did not pass"};
      }
    } catch (const Error& e) {
      failures[i] = SweepFailure{entry.m, entry.k, e.stage(), std::string(to_string(e.kind())), e.what()};
    } catch (const std::exception& e) {
      failures[i] = SweepFailure{entry.m, entry.k, "", "internal", e.what()};
    }
  });
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    if (failures[i]) {
      out.failures.push_back(*failures[i]);
      ++out.failed;
    } else {
      ++out.passed;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON mapping

namespace {

// Checked after the document is built: throwing from inside a braced json
// initializer leaks the half-built elements.
void require_finite(const json& j, const std::string& path = "") {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw Error(ErrorKind::Numerical, fmt::format("report field '{}' is not finite", path));
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) require_finite(value, path + "/" + key);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], fmt::format("{}/{}", path, i));
  }
}

json to_json(const RunConfig& c) {
  json roots = {
      {"residual_tol", c.roots.residual_tol},
      {"max_iters", c.roots.max_iters},
      {"precision", c.roots.precision == Precision::Extended ? "extended" : "double"},
      {"mantissa_bits", c.roots.mantissa_bits},
      {"cross_check", c.roots.cross_check},
      {"cross_check_tol", c.roots.cross_check_tol},
      {"derivative_floor", c.roots.derivative_floor},
      {"angle_offset", c.roots.angle_offset},
  };
  json tol = {
      {"circle_tol", c.tolerances.circle_tol},
      {"match_tol", c.tolerances.match_tol},
      {"slack_tol", c.tolerances.slack_tol},
      {"abs_tol", c.tolerances.abs_tol},
      {"recon_tol", c.tolerances.recon_tol},
      {"lower_bound_tol", c.tolerances.lower_bound_tol},
  };
  json oracle = {
      {"num_starts", c.oracle.num_starts},
      {"seed", c.oracle.seed},
      {"newton_tol", c.oracle.newton_tol},
      {"cluster_radius", c.oracle.cluster_radius},
      {"max_newton_iters", c.oracle.max_newton_iters},
      {"min_start_modulus", c.oracle.min_start_modulus},
      {"max_start_modulus", c.oracle.max_start_modulus},
      {"workers", c.oracle.workers},
  };
  return {{"roots", roots},         {"tolerances", tol},
          {"run_oracle", c.run_oracle}, {"oracle", oracle},
          {"max_degree", c.max_degree}, {"record_timings", c.record_timings},
          {"workers", c.workers}};
}

RunConfig run_config_from(const json& j) {
  RunConfig c;
  const auto& r = j.at("roots");
  c.roots.residual_tol = r.at("residual_tol").get<double>();
  c.roots.max_iters = r.at("max_iters").get<int>();
  const auto prec = r.at("precision").get<std::string>();
  if (prec != "double" && prec != "extended") {
    throw Error(ErrorKind::Parse, "unknown precision mode '" + prec + "'");
  }
  c.roots.precision = prec == "extended" ? Precision::Extended : Precision::Double;
  c.roots.mantissa_bits = r.at("mantissa_bits").get<int>();
  c.roots.cross_check = r.at("cross_check").get<bool>();
  c.roots.cross_check_tol = r.at("cross_check_tol").get<double>();
  c.roots.derivative_floor = r.at("derivative_floor").get<double>();
  c.roots.angle_offset = r.at("angle_offset").get<double>();
  const auto& t = j.at("tolerances");
  c.tolerances.circle_tol = t.at("circle_tol").get<double>();
  c.tolerances.match_tol = t.at("match_tol").get<double>();
  c.tolerances.slack_tol = t.at("slack_tol").get<double>();
  c.tolerances.abs_tol = t.at("abs_tol").get<double>();
  c.tolerances.recon_tol = t.at("recon_tol").get<double>();
  c.tolerances.lower_bound_tol = t.at("lower_bound_tol").get<double>();
  c.run_oracle = j.at("run_oracle").get<bool>();
  const auto& o = j.at("oracle");
  c.oracle.num_starts = o.at("num_starts").get<int>();
  c.oracle.seed = o.at("seed").get<std::uint64_t>();
  c.oracle.newton_tol = o.at("newton_tol").get<double>();
  c.oracle.cluster_radius = o.at("cluster_radius").get<double>();
  c.oracle.max_newton_iters = o.at("max_newton_iters").get<int>();
  c.oracle.min_start_modulus = o.at("min_start_modulus").get<double>();
  c.oracle.max_start_modulus = o.at("max_start_modulus").get<double>();
  c.oracle.workers = o.at("workers").get<unsigned>();
  c.max_degree = j.at("max_degree").get<int>();
  c.record_timings = j.at("record_timings").get<bool>();
  c.workers = j.at("workers").get<unsigned>();
  return c;
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
std::optional<int> optional_int_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

json to_json_body(const VerificationReport& r) {
  json roots = json::array();
  for (const auto& row : r.roots) {
    roots.push_back({{"re", row.re},
                     {"im", row.im},
                     {"modulus", row.modulus},
                     {"residual", row.residual},
                     {"error_radius", row.error_radius},
                     {"g_re", row.g_re},
                     {"g_im", row.g_im},
                     {"on_circle", row.on_circle},
                     {"d", optional_int(row.d)}});
  }
  const auto& c = r.conditions;
  json conditions = {{"t_con", c.t_con},
                     {"cond1_pass", c.cond1_pass},
                     {"cond1_margin", c.cond1_margin},
                     {"cond2_pass", c.cond2_pass},
                     {"cond3_pass", c.cond3_pass},
                     {"circle_count", c.circle_count},
                     {"predicted_circle_count", c.predicted_circle_count},
                     {"diagnostics", c.diagnostics}};
  const auto& l = r.lemma;
  json lemma = {{"min_modulus", l.min_modulus},
                {"max_modulus", l.max_modulus},
                {"lower", l.lower},
                {"upper", l.upper},
                {"envelope_gap", l.envelope_gap},
                {"envelope_monotone_gap", l.envelope_monotone_gap}};
  const auto& cr = r.case_report;
  json case_json = {{"case", to_string(cr.case_id)},
                    {"lhs_value", cr.lhs_value},
                    {"threshold", cr.threshold},
                    {"minorant", cr.minorant ? json(*cr.minorant) : json(nullptr)},
                    {"pass", cr.pass}};
  if (cr.auxiliary) {
    json v = json::array();
    for (double x : cr.auxiliary->v_coefficients) v.push_back(x);
    case_json["auxiliary"] = {{"v_coefficients", v},
                              {"r_minus", cr.auxiliary->r_minus},
                              {"v_at_r0", cr.auxiliary->v_at_r0}};
  } else {
    case_json["auxiliary"] = nullptr;
  }
  json oracle = nullptr;
  if (r.oracle) {
    const auto& o = *r.oracle;
    oracle = {{"num_starts", o.num_starts},
              {"seed", o.seed},
              {"expected_count", o.expected_count},
              {"cluster_count", o.cluster_count},
              {"converged_starts", o.converged_starts},
              {"inconclusive", o.inconclusive},
              {"match_pass", o.match_pass},
              {"matched", o.matched},
              {"max_pair_distance", o.max_pair_distance},
              {"match_tolerance", o.match_tolerance},
              {"unmatched_oracle", o.unmatched_oracle},
              {"unmatched_reduced", o.unmatched_reduced},
              {"max_reduction_gap", o.max_reduction_gap},
              {"gradient_norm_at_conifold", o.gradient_norm_at_conifold},
              {"hessian_det_at_conifold", o.hessian_det_at_conifold},
              {"hessian_nondegenerate", o.hessian_nondegenerate}};
  }
  json timings = json::object();
  for (const auto& [stage, ms] : r.timings_ms) timings[stage] = ms;

  const auto& p = r.params;
  return {{"tool_version", r.tool_version},
          {"seed", r.config.oracle.seed},
          {"params", {{"n", p.n()}, {"r", p.r()}, {"m", p.m()}, {"k", p.k()}, {"rho", p.rho()}}},
          {"config", to_json(r.config)},
          {"r_plus", r.r_plus},
          {"r_plus_bracket", {r.r_plus_lo, r.r_plus_hi}},
          {"t_con", r.t_con},
          {"r0", r.r0},
          {"root_method", r.root_method},
          {"root_iterations", r.root_iterations},
          {"method_disagreement", r.method_disagreement},
          {"gcd_degree", r.gcd_degree},
          {"square_free_prime", r.square_free_prime},
          {"pass", r.pass()},
          {"conditions", conditions},
          {"lemma_margins", lemma},
          {"case_report", case_json},
          {"oracle", oracle},
          {"timings_ms", timings},
          {"roots", roots}};
}

VerificationReport report_from_body(const json& j) {
  const auto& pj = j.at("params");
  const int n = pj.at("n").get<int>();
  const int r = pj.at("r").get<int>();
  VerificationReport rep(derive_params(n, r));
  if (pj.at("m").get<int>() != rep.params.m() || pj.at("k").get<int>() != rep.params.k() ||
      pj.at("rho").get<int>() != rep.params.rho()) {
    throw Error(ErrorKind::Parse, "params block is inconsistent with (n, r)");
  }
  rep.tool_version = j.at("tool_version").get<std::string>();
  rep.config = run_config_from(j.at("config"));
  rep.r_plus = j.at("r_plus").get<double>();
  rep.r_plus_lo = j.at("r_plus_bracket").at(0).get<double>();
  rep.r_plus_hi = j.at("r_plus_bracket").at(1).get<double>();
  rep.t_con = j.at("t_con").get<double>();
  rep.r0 = j.at("r0").get<double>();
  rep.root_method = j.at("root_method").get<std::string>();
  rep.root_iterations = j.at("root_iterations").get<int>();
  rep.method_disagreement = j.at("method_disagreement").get<double>();
  rep.gcd_degree = j.at("gcd_degree").get<int>();
  rep.square_free_prime = j.at("square_free_prime").get<std::uint64_t>();

  const auto& c = j.at("conditions");
  rep.conditions.t_con = c.at("t_con").get<double>();
  rep.conditions.cond1_pass = c.at("cond1_pass").get<bool>();
  rep.conditions.cond1_margin = c.at("cond1_margin").get<double>();
  rep.conditions.cond2_pass = c.at("cond2_pass").get<bool>();
  rep.conditions.cond3_pass = c.at("cond3_pass").get<bool>();
  rep.conditions.circle_count = c.at("circle_count").get<int>();
  rep.conditions.predicted_circle_count = c.at("predicted_circle_count").get<int>();
  rep.conditions.diagnostics = c.at("diagnostics").get<std::vector<std::string>>();

  const auto& l = j.at("lemma_margins");
  rep.lemma.min_modulus = l.at("min_modulus").get<double>();
  rep.lemma.max_modulus = l.at("max_modulus").get<double>();
  rep.lemma.lower = l.at("lower").get<double>();
  rep.lemma.upper = l.at("upper").get<double>();
  rep.lemma.envelope_gap = l.at("envelope_gap").get<double>();
  rep.lemma.envelope_monotone_gap = l.at("envelope_monotone_gap").get<double>();

  const auto& cr = j.at("case_report");
  const auto id = cr.at("case").get<std::string>();
  if (id == "I") rep.case_report.case_id = CaseId::I;
  else if (id == "II") rep.case_report.case_id = CaseId::II;
  else if (id == "III") rep.case_report.case_id = CaseId::III;
  else if (id == "IV") rep.case_report.case_id = CaseId::IV;
  else throw Error(ErrorKind::Parse, "unknown case id '" + id + "'");
  rep.case_report.lhs_value = cr.at("lhs_value").get<double>();
  rep.case_report.threshold = cr.at("threshold").get<double>();
  if (!cr.at("minorant").is_null()) rep.case_report.minorant = cr.at("minorant").get<double>();
  rep.case_report.pass = cr.at("pass").get<bool>();
  if (!cr.at("auxiliary").is_null()) {
    const auto& a = cr.at("auxiliary");
    rep.case_report.auxiliary = CaseIVAuxiliary{a.at("v_coefficients").get<std::vector<double>>(),
                                                a.at("r_minus").get<double>(),
                                                a.at("v_at_r0").get<double>()};
  }

  if (!j.at("oracle").is_null()) {
    const auto& o = j.at("oracle");
    OracleSummary s;
    s.num_starts = o.at("num_starts").get<int>();
    s.seed = o.at("seed").get<std::uint64_t>();
    s.expected_count = o.at("expected_count").get<int>();
    s.cluster_count = o.at("cluster_count").get<int>();
    s.converged_starts = o.at("converged_starts").get<int>();
    s.inconclusive = o.at("inconclusive").get<bool>();
    s.match_pass = o.at("match_pass").get<bool>();
    s.matched = o.at("matched").get<int>();
    s.max_pair_distance = o.at("max_pair_distance").get<double>();
    s.match_tolerance = o.at("match_tolerance").get<double>();
    s.unmatched_oracle = o.at("unmatched_oracle").get<int>();
    s.unmatched_reduced = o.at("unmatched_reduced").get<int>();
    s.max_reduction_gap = o.at("max_reduction_gap").get<double>();
    s.gradient_norm_at_conifold = o.at("gradient_norm_at_conifold").get<double>();
    s.hessian_det_at_conifold = o.at("hessian_det_at_conifold").get<double>();
    s.hessian_nondegenerate = o.at("hessian_nondegenerate").get<bool>();
    rep.oracle = s;
  }
  for (const auto& [stage, ms] : j.at("timings_ms").items()) rep.timings_ms[stage] = ms.get<double>();

  for (const auto& row : j.at("roots")) {
    rep.roots.push_back(RootRow{row.at("re").get<double>(), row.at("im").get<double>(),
                                row.at("modulus").get<double>(), row.at("residual").get<double>(),
                                row.at("error_radius").get<double>(), row.at("g_re").get<double>(),
                                row.at("g_im").get<double>(), row.at("on_circle").get<bool>(),
                                optional_int_from(row.at("d"))});
  }
  if (static_cast<int>(rep.roots.size()) != rep.params.reduced_degree()) {
    throw Error(ErrorKind::Parse, fmt::format("report lists {} roots, family has degree {}",
                                              rep.roots.size(), rep.params.reduced_degree()));
  }
  if (j.at("pass").get<bool>() != rep.pass()) {
    throw Error(ErrorKind::Parse, "stored pass flag disagrees with the stored checks");
  }
  return rep;
}

constexpr const char* kFamilySchema = "conifold.verification_report";
constexpr const char* kSweepSchema = "conifold.sweep_report";

json parse_document(std::string_view text, const char* schema) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") || !doc.contains("schema_version")) {
    throw Error(ErrorKind::Parse, "document has no schema header");
  }
  try {
    const auto name = doc.at("schema").get<std::string>();
    if (name != schema) {
      throw Error(ErrorKind::Parse, fmt::format("expected schema '{}', found '{}'", schema, name));
    }
    const int version = doc.at("schema_version").get<int>();
    if (version != kReportSchemaVersion) {
      throw Error(ErrorKind::SchemaVersion,
                  fmt::format("document has schema version {}, this build reads version {}; "
                              "no migration is available",
                              version, kReportSchemaVersion));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return doc;
}

template <class F>
auto parse_fields(F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  } catch (Error& e) {
    if (e.kind() == ErrorKind::Domain) throw Error(ErrorKind::Parse, e.what());
    throw;
  }
}

std::string dump(const json& j) {
  require_finite(j);
  return j.dump(2) + "\n";
}

}  // namespace

std::string serialize(const VerificationReport& report) {
  json doc = {{"schema", kFamilySchema}, {"schema_version", kReportSchemaVersion}};
  doc.update(to_json_body(report));
  return dump(doc);
}

VerificationReport load_report(std::string_view text) {
  const json doc = parse_document(text, kFamilySchema);
  return parse_fields([&] { return report_from_body(doc); });
}

std::string serialize(const SweepReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"m", e.m},
                       {"k", e.k},
                       {"pass", e.pass},
                       {"report", e.report ? to_json_body(*e.report) : json(nullptr)}});
  }
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"m", f.m}, {"k", f.k}, {"stage", f.stage}, {"kind", f.kind}, {"message", f.message}});
  }
  json doc = {{"schema", kSweepSchema},
              {"schema_version", kReportSchemaVersion},
              {"tool_version", report.tool_version},
              {"seed", report.config.oracle.seed},
              {"m_range", {report.m_range.lo, report.m_range.hi}},
              {"k_range", {report.k_range.lo, report.k_range.hi}},
              {"config", to_json(report.config)},
              {"totals", {{"passed", report.passed}, {"failed", report.failed}}},
              {"failures", failures},
              {"entries", entries}};
  return dump(doc);
}

SweepReport load_sweep(std::string_view text) {
  const json doc = parse_document(text, kSweepSchema);
  return parse_fields([&] {
    SweepReport out;
    out.tool_version = doc.at("tool_version").get<std::string>();
    out.m_range = {doc.at("m_range").at(0).get<int>(), doc.at("m_range").at(1).get<int>()};
    out.k_range = {doc.at("k_range").at(0).get<int>(), doc.at("k_range").at(1).get<int>()};
    out.config = run_config_from(doc.at("config"));
    out.passed = doc.at("totals").at("passed").get<int>();
    out.failed = doc.at("totals").at("failed").get<int>();
    for (const auto& f : doc.at("failures")) {
      out.failures.push_back(SweepFailure{f.at("m").get<int>(), f.at("k").get<int>(),
                                          f.at("stage").get<std::string>(),
                                          f.at("kind").get<std::string>(),
                                          f.at("message").get<std::string>()});
    }
    for (const auto& e : doc.at("entries")) {
      SweepEntry entry{e.at("m").get<int>(), e.at("k").get<int>(), e.at("pass").get<bool>(), {}};
      if (!e.at("report").is_null()) entry.report = report_from_body(e.at("report"));
      out.entries.push_back(std::move(entry));
    }
    const auto expected = static_cast<std::size_t>(out.m_range.hi - out.m_range.lo + 1) *
                          static_cast<std::size_t>(out.k_range.hi - out.k_range.lo + 1);
    if (out.entries.size() != expected) {
      throw Error(ErrorKind::Parse, "sweep entries do not cover the requested rectangle");
    }
    return out;
  });
}

std::string roots_csv(const VerificationReport& report) {
  std::string out(kRootsCsvHeader);
  out += '\n';
  for (const auto& row : report.roots) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{}\n", row.re, row.im,
                       row.modulus, row.residual, row.g_re, row.g_im, row.on_circle ? 1 : 0,
                       row.d ? std::to_string(*row.d) : std::string());
  }
  return out;
}

}  // namespace conifold
