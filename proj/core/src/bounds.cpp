#include "rfspectra/bounds.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rfspectra/errors.hpp"

namespace rfspectra {

namespace {

using nlohmann::json;

BoundCondition make_condition(std::string name, double lhs, double rhs,
                              ConditionDirection dir) {
  BoundCondition c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.direction = dir;
  c.holds = dir == ConditionDirection::geq ? lhs >= rhs : lhs <= rhs;
  return c;
}

void require_unit_interval(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0)) {
    throw ConfigError(std::string(name) + " must lie in (0, 1)");
  }
}

double clamp_probability(double value) { return std::min(1.0, value); }

}  // namespace

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::thm1:
      return "thm1";
    case TheoremId::thm2:
      return "thm2";
    case TheoremId::thm3:
      return "thm3";
    case TheoremId::thm4:
      return "thm4";
    case TheoremId::thm5:
      return "thm5";
    case TheoremId::thm6:
      return "thm6";
    case TheoremId::bernstein:
      return "bernstein";
    case TheoremId::chi2:
      return "chi2";
    case TheoremId::gershgorin:
      return "gershgorin";
    case TheoremId::simplified_tail:
      return "simplified_tail";
  }
  throw ConfigError("unknown theorem id");
}

TheoremId theorem_from_name(std::string_view name) {
  if (name == "thm1") return TheoremId::thm1;
  if (name == "thm2") return TheoremId::thm2;
  if (name == "thm3") return TheoremId::thm3;
  if (name == "thm4") return TheoremId::thm4;
  if (name == "thm5") return TheoremId::thm5;
  if (name == "thm6") return TheoremId::thm6;
  if (name == "bernstein") return TheoremId::bernstein;
  if (name == "chi2") return TheoremId::chi2;
  if (name == "gershgorin") return TheoremId::gershgorin;
  if (name == "simplified_tail") return TheoremId::simplified_tail;
  throw ConfigError("unknown theorem name: " + std::string(name));
}

bool BoundReport::all_conditions_hold() const {
  for (const auto& c : conditions) {
    if (!c.holds) return false;
  }
  return true;
}

std::string BoundReport::to_json() const {
  json obj;
  obj["theorem"] = theorem_name(theorem_id);
  obj["conclusion_bound"] = conclusion_bound;
  obj["all_conditions_hold"] = all_conditions_hold();
  json conds = json::array();
  for (const auto& c : conditions) {
    json jc;
    jc["name"] = c.name;
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    jc["direction"] = c.direction == ConditionDirection::geq ? "geq" : "leq";
    jc["holds"] = c.holds;
    conds.push_back(jc);
  }
  obj["conditions"] = conds;
  json constants = json::object();
  for (const auto& [name, value] : constants_used) constants[name] = value;
  obj["constants_used"] = constants;
  return obj.dump(2);
}

std::string BoundReport::to_table() const {
  std::ostringstream out;
  out << "bound report: " << theorem_name(theorem_id) << "\n";
  for (const auto& c : conditions) {
    out << "  " << (c.holds ? "[pass]" : "[FAIL]") << " " << c.name << ": "
        << c.lhs << (c.direction == ConditionDirection::geq ? " >= " : " <= ")
        << c.rhs << "\n";
  }
  out << "  conclusion bound: " << conclusion_bound << "\n";
  for (const auto& [name, value] : constants_used) {
    out << "  constant " << name << " = " << value << "\n";
  }
  return out.str();
}

double bernstein_tail(std::int64_t m, std::int64_t n, double k_bound,
                      double variance_param, double t) {
  if (m <= 0 || n <= 0) throw ConfigError("m and N must be positive");
  if (!(k_bound > 0.0) || !(variance_param > 0.0) || !(t > 0.0)) {
    throw ConfigError("K, variance parameter, and t must be positive");
  }
  const double exponent =
      -(t * t / 2.0) / (variance_param + k_bound * t / 3.0);
  return clamp_probability(2.0 * static_cast<double>(n) * std::exp(exponent));
}

double simplified_gram_tail(std::int64_t m, std::int64_t n, double eta) {
  if (m <= 0) throw ConfigError("m must be positive");
  if (n < 9) {
    throw ConfigError("simplified_gram_tail assumes N >= 9");
  }
  require_unit_interval(eta, "eta");
  const double exponent = -static_cast<double>(m) * eta * eta /
                          (5.0 * static_cast<double>(n) + 9.0);
  return clamp_probability(2.0 * static_cast<double>(n) * std::exp(exponent));
}

double chi_square_chernoff(double z, std::int64_t d) {
  if (!(z > 0.0) || z > 1.0) throw ConfigError("z must lie in (0, 1]");
  if (d <= 0) throw ConfigError("d must be positive");
  const double base = z * std::exp(1.0 - z);
  return clamp_probability(
      std::pow(base, 0.5 * static_cast<double>(d)));
}

BoundReport check_theorem1(std::int64_t d, std::int64_t m, std::int64_t n,
                           double gamma, double sigma, double delta,
                           double eta, double c1, double c2) {
  if (d <= 0 || m <= 0 || n <= 0) {
    throw ConfigError("d, m, N must be positive");
  }
  if (!(gamma > 0.0) || !(sigma > 0.0)) {
    throw ConfigError("gamma and sigma must be positive");
  }
  require_unit_interval(delta, "delta");
  require_unit_interval(eta, "eta");

  const double dn = static_cast<double>(n);
  BoundReport report;
  report.theorem_id = TheoremId::thm1;
  report.conditions.push_back(make_condition(
      "dimension: d >= C1 log(N/delta)", static_cast<double>(d),
      c1 * std::log(dn / delta), ConditionDirection::geq));
  report.conditions.push_back(make_condition(
      "variance product: gamma^2 sigma^2 >= 4 log(2N/eta)",
      gamma * gamma * sigma * sigma, 4.0 * std::log(2.0 * dn / eta),
      ConditionDirection::geq));
  report.conditions.push_back(make_condition(
      "samples: m >= C2 eta^-2 N log(2N/delta)", static_cast<double>(m),
      c2 * dn * std::log(2.0 * dn / delta) / (eta * eta),
      ConditionDirection::geq));
  report.conditions.push_back(make_condition("side condition: eta >= 2 delta",
                                             eta, 2.0 * delta,
                                             ConditionDirection::geq));
  report.conclusion_bound = 2.0 * eta;
  report.constants_used = {{"C1", c1},
                           {"C2", c2},
                           {"failure_probability", 5.0 * delta}};
  return report;
}

BoundReport check_theorem2(std::int64_t d, std::int64_t m, std::int64_t n,
                           double gamma, double sigma, double delta,
                           double eta, double c1, double c2) {
  // Exact mirror of check_theorem1 under m <-> N (the variance product is
  // symmetric in gamma and sigma).
  BoundReport report = check_theorem1(d, n, m, sigma, gamma, delta, eta,
                                      c1, c2);
  report.theorem_id = TheoremId::thm2;
  report.conditions[0].name = "dimension: d >= C1 log(m/delta)";
  report.conditions[1].name =
      "variance product: gamma^2 sigma^2 >= 4 log(2m/eta)";
  report.conditions[2].name = "features: N >= C2 eta^-2 m log(2m/delta)";
  return report;
}

BoundReport check_theorem3(std::int64_t n, std::int64_t m, double sigma,
                           double separation_r, double delta, double eta,
                           double c) {
  if (n <= 0 || m <= 0) throw ConfigError("N and m must be positive");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (!(separation_r > 0.0)) {
    throw ConfigError("separation R must be positive");
  }
  require_unit_interval(delta, "delta");
  if (!(eta > 0.0) || !(eta < 1.0)) {
    throw ConfigError("eta must lie in (0, 1)");
  }

  const double dm = static_cast<double>(m);
  BoundReport report;
  report.theorem_id = TheoremId::thm3;
  report.conditions.push_back(make_condition(
      "features: N >= C eta^-2 m log(2m/delta)", static_cast<double>(n),
      c * dm * std::log(2.0 * dm / delta) / (eta * eta),
      ConditionDirection::geq));
  report.conditions.push_back(make_condition(
      "weight variance: sigma^2 >= (2/R) log(m/eta)", sigma * sigma,
      2.0 / separation_r * std::log(dm / eta), ConditionDirection::geq));
  report.conclusion_bound = eta;
  report.constants_used = {{"C", c},
                           {"R", separation_r},
                           {"failure_probability", delta}};
  return report;
}

BoundReport check_theorem4(std::int64_t m, std::int64_t n, double gamma,
                           double separation_r, double delta, double eta,
                           double c) {
  if (n <= 0 || m <= 0) throw ConfigError("N and m must be positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(separation_r > 0.0)) {
    throw ConfigError("separation R must be positive");
  }
  require_unit_interval(delta, "delta");
  require_unit_interval(eta, "eta");

  const double dn = static_cast<double>(n);
  BoundReport report;
  report.theorem_id = TheoremId::thm4;
  report.conditions.push_back(make_condition(
      "samples: m >= C eta^-2 N log(2N/delta)", static_cast<double>(m),
      c * dn * std::log(2.0 * dn / delta) / (eta * eta),
      ConditionDirection::geq));
  report.conditions.push_back(make_condition(
      "data variance: gamma^2 >= (2/R) log(N/eta)", gamma * gamma,
      2.0 / separation_r * std::log(dn / eta), ConditionDirection::geq));
  report.conclusion_bound = eta;
  report.constants_used = {{"C", c},
                           {"R", separation_r},
                           {"failure_probability", delta}};
  if (n >= 9) {
    report.constants_used["simplified_tail"] =
        simplified_gram_tail(m, n, eta);
  }
  return report;
}

BoundReport check_separation(std::int64_t d, std::int64_t n, double delta,
                             double t, double c) {
  if (d <= 0 || n <= 0) throw ConfigError("d and N must be positive");
  require_unit_interval(delta, "delta");
  if (!(t > 0.0) || !(t < 0.5)) {
    throw ConfigError("t must lie in (0, 1/2)");
  }

  BoundReport report;
  report.theorem_id = TheoremId::thm5;
  report.conditions.push_back(make_condition(
      "dimension: d >= C t^-2 log(N/delta)", static_cast<double>(d),
      c * std::log(static_cast<double>(n) / delta) / (t * t),
      ConditionDirection::geq));
  // Conclusion: min pairwise squared distance >= (1-2t) d, prob >= 1-2delta.
  report.conclusion_bound = (1.0 - 2.0 * t) * static_cast<double>(d);
  report.constants_used = {{"C", c},
                           {"t", t},
                           {"failure_probability", 2.0 * delta}};
  return report;
}

BoundReport check_theorem6(std::int64_t d, std::int64_t n, double gamma,
                           double sigma, double delta, double eta, double c) {
  if (d <= 0 || n <= 0) throw ConfigError("d and N must be positive");
  if (!(gamma > 0.0) || !(sigma > 0.0)) {
    throw ConfigError("gamma and sigma must be positive");
  }
  require_unit_interval(delta, "delta");
  require_unit_interval(eta, "eta");

  const double dn = static_cast<double>(n);
  BoundReport report;
  report.theorem_id = TheoremId::thm6;
  report.conditions.push_back(make_condition(
      "dimension: d >= C log(N/delta)", static_cast<double>(d),
      c * std::log(dn / delta), ConditionDirection::geq));
  report.conditions.push_back(make_condition(
      "variance product: gamma^2 sigma^2 >= 4 log(2N/eta)",
      gamma * gamma * sigma * sigma, 4.0 * std::log(2.0 * dn / eta),
      ConditionDirection::geq));
  report.conditions.push_back(make_condition("side condition: eta >= 2 delta",
                                             eta, 2.0 * delta,
                                             ConditionDirection::geq));
  report.conclusion_bound = eta;
  report.constants_used = {{"C", c},
                           {"failure_probability", 2.0 * delta}};
  return report;
}

double gershgorin_bound(const HermitianMatrix& m) {
  double bound = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    double row = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) row += std::abs(m.at(j, k));
    bound = std::max(bound, row);
  }
  return bound;
}

}  // namespace rfspectra
