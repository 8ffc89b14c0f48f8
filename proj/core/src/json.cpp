#include "rmf/json.hpp"

namespace rmf {

namespace {

template <class T>
Json optional_value(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> read_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

Json complex_value(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex read_complex(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

}  // namespace

void to_json(Json& j, Model m) { j = std::string(to_string(m)); }

void from_json(const Json& j, Model& m) { m = parse_model(j.get<std::string>()); }

void to_json(Json& j, const QuadratureSpec& q) {
  j = Json{{"T", q.T}, {"max_depth", q.max_depth}, {"abs_tol", q.abs_tol}, {"rel_tol", q.rel_tol}};
}

void from_json(const Json& j, QuadratureSpec& q) {
  q.T = j.at("T").get<double>();
  q.max_depth = j.at("max_depth").get<int>();
  q.abs_tol = j.at("abs_tol").get<double>();
  q.rel_tol = j.at("rel_tol").get<double>();
}

void to_json(Json& j, const ExperimentConfig& c) {
  j = Json{{"model", c.model},
           {"x_list", c.x_list},
           {"n_trials", c.n_trials},
           {"base_seed", c.base_seed},
           {"quad", c.quad},
           {"truncation_j", c.truncation_j},
           {"q_list", c.q_list},
           {"tail_thresholds", c.tail_thresholds},
           {"with_v1", c.with_v1},
           {"with_v5", c.with_v5}};
}

void from_json(const Json& j, ExperimentConfig& c) {
  c.model = j.at("model").get<Model>();
  c.x_list = j.at("x_list").get<std::vector<std::uint64_t>>();
  c.n_trials = j.at("n_trials").get<std::uint64_t>();
  c.base_seed = j.at("base_seed").get<std::uint64_t>();
  c.quad = j.at("quad").get<QuadratureSpec>();
  c.truncation_j = j.at("truncation_j").get<int>();
  c.q_list = j.at("q_list").get<std::vector<double>>();
  c.tail_thresholds = j.at("tail_thresholds").get<std::vector<double>>();
  c.with_v1 = j.at("with_v1").get<bool>();
  c.with_v5 = j.at("with_v5").get<bool>();
}

void to_json(Json& j, const TrialRecord& r) {
  j = Json{{"x", r.x},
           {"seed", r.seed},
           {"re", r.normalized_sum.real()},
           {"im", r.normalized_sum.imag()},
           {"abs", r.abs_value},
           {"v1", optional_value(r.v1)},
           {"v5", optional_value(r.v5)}};
  if (r.error) j["error"] = *r.error;
}

void from_json(const Json& j, TrialRecord& r) {
  r.x = j.at("x").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.normalized_sum = {j.at("re").get<double>(), j.at("im").get<double>()};
  r.abs_value = j.at("abs").get<double>();
  r.v1 = read_optional<double>(j, "v1");
  r.v5 = read_optional<double>(j, "v5");
  r.error = read_optional<std::string>(j, "error");
}

void to_json(Json& j, const SummaryStats& s) {
  Json moments = Json::array();
  for (const auto& m : s.moments) {
    moments.push_back(Json{{"x", m.x},
                           {"q", m.q},
                           {"moment", m.value},
                           {"stderr", m.std_err},
                           {"winsorized", optional_value(m.winsorized)},
                           {"winsorized_stderr", optional_value(m.winsorized_std_err)}});
  }
  Json tails = Json::array();
  for (const auto& t : s.tail_frequencies) {
    tails.push_back(Json{{"x", t.x}, {"y", t.y}, {"tailfreq", t.frequency}});
  }
  Json exponents = Json::array();
  for (const auto& e : s.tail_exponents) {
    exponents.push_back(Json{{"x", e.x},
                             {"alpha", e.alpha},
                             {"ci_lo", e.ci_lo},
                             {"ci_hi", e.ci_hi},
                             {"power_law_consistent", e.power_law_consistent}});
  }
  Json ks = Json::array();
  for (const auto& k : s.ks_to_gaussian_mixture) ks.push_back(Json{{"x", k.x}, {"ks", k.ks}});
  j = Json{{"moments", moments},
           {"tail_frequencies", tails},
           {"tail_exponents", exponents},
           {"ks_to_gaussian_mixture", ks}};
}

void to_json(Json& j, const V5Result& r) {
  j = Json{{"value", r.value},
           {"value_loglog_x", r.value_loglog_x},
           {"q_integral", r.q_integral},
           {"tail_bound", r.tail_bound},
           {"panels_used", r.panels_used},
           {"converged", r.converged},
           {"truncation_j", r.j},
           {"B", r.B},
           {"T", r.T}};
}

void to_json(Json& j, const RoughIntegralReport& r) {
  j = Json{{"x", r.x},
           {"B", r.B},
           {"W", r.W},
           {"lhs_numeric", complex_value(r.lhs_numeric)},
           {"mid_rough_count", r.mid_rough_count},
           {"rhs_asymptotic", r.rhs_asymptotic},
           {"lhs_error_estimate", r.lhs_error_estimate},
           {"panels_used", r.panels_used},
           {"converged", r.converged}};
}

void from_json(const Json& j, RoughIntegralReport& r) {
  r.x = j.at("x").get<std::uint64_t>();
  r.B = j.at("B").get<double>();
  r.W = j.at("W").get<double>();
  r.lhs_numeric = read_complex(j.at("lhs_numeric"));
  r.mid_rough_count = j.at("mid_rough_count").get<double>();
  r.rhs_asymptotic = j.at("rhs_asymptotic").get<double>();
  r.lhs_error_estimate = j.at("lhs_error_estimate").get<double>();
  r.panels_used = j.at("panels_used").get<std::size_t>();
  r.converged = j.at("converged").get<bool>();
}

void to_json(Json& j, const GaussianityReport& r) {
  j = Json{{"x", r.x},
           {"model", r.model},
           {"seed_small", r.seed_small},
           {"n_small_seeds", r.n_small_seeds},
           {"n_large_resamples", r.n_large_resamples},
           {"ks_real", r.ks_real},
           {"ks_imag", optional_value(r.ks_imag)},
           {"corr_re_im", optional_value(r.corr_re_im)},
           {"variance_used", r.variance_used}};
}

void from_json(const Json& j, GaussianityReport& r) {
  r.x = j.at("x").get<std::uint64_t>();
  r.model = j.at("model").get<Model>();
  r.seed_small = j.at("seed_small").get<std::uint64_t>();
  r.n_small_seeds = j.at("n_small_seeds").get<std::uint64_t>();
  r.n_large_resamples = j.at("n_large_resamples").get<std::uint64_t>();
  r.ks_real = j.at("ks_real").get<double>();
  r.ks_imag = read_optional<double>(j, "ks_imag");
  r.corr_re_im = read_optional<double>(j, "corr_re_im");
  r.variance_used = j.at("variance_used").get<double>();
}

void to_json(Json& j, const ConcentrationReport& r) {
  Json pairs = Json::array();
  for (const auto& [v1, v5] : r.pairs) pairs.push_back(Json{{"v1", v1}, {"v5", v5}});
  j = Json{{"x", r.x},
           {"n_trials", r.n_trials},
           {"model", r.model},
           {"truncation_j", r.truncation_j},
           {"base_seed", r.base_seed},
           {"correlation", r.correlation},
           {"median_ratio", r.median_ratio},
           {"mean_abs_diff", r.mean_abs_diff},
           {"pairs", pairs}};
}

void from_json(const Json& j, ConcentrationReport& r) {
  r.x = j.at("x").get<std::uint64_t>();
  r.n_trials = j.at("n_trials").get<std::uint64_t>();
  r.model = j.at("model").get<Model>();
  r.truncation_j = j.at("truncation_j").get<int>();
  r.base_seed = j.at("base_seed").get<std::uint64_t>();
  r.correlation = j.at("correlation").get<double>();
  r.median_ratio = j.at("median_ratio").get<double>();
  r.mean_abs_diff = j.at("mean_abs_diff").get<double>();
  r.pairs.clear();
  for (const auto& p : j.at("pairs")) {
    r.pairs.emplace_back(p.at("v1").get<double>(), p.at("v5").get<double>());
  }
}

}  // namespace rmf
