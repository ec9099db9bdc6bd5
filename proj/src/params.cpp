#include "ebs/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ebs::params {

Checked epsilon_opt(Ticks beta, int neighborhood, Ticks nu, Ticks period) {
  if (period <= 0) throw std::invalid_argument("epsilon_opt: period must be positive");
  if (beta < 0 || nu < 0 || neighborhood < 0) {
    throw std::invalid_argument("epsilon_opt: beta, nu and neighbourhood must be non-negative");
  }
  const double raw = (static_cast<double>(beta) * neighborhood + 4.0 * static_cast<double>(nu)) /
                     (2.0 * static_cast<double>(period));
  if (raw > 0.5) {
    std::ostringstream msg;
    msg << "epsilon_opt " << raw << " exceeds 0.5; clamped (period too short for this neighbourhood)";
    return {0.5, msg.str()};
  }
  return {raw, std::nullopt};
}

Checked sigma_max_for_delta(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("sigma_max: epsilon must lie in (0, 1)");
  }
  const double value = (epsilon - 2.0 * delta) / (1.0 - epsilon);
  if (value <= 0.0) {
    std::ostringstream msg;
    msg << "sigma_max " << value << " leaves no valid coupling (epsilon <= 2*delta)";
    return {value, msg.str()};
  }
  return {value, std::nullopt};
}

Checked sigma_max(double epsilon, Ticks nu, Ticks period) {
  if (period <= 0) throw std::invalid_argument("sigma_max: period must be positive");
  return sigma_max_for_delta(epsilon, static_cast<double>(nu) / static_cast<double>(period));
}

Ticks adaptive_c(Ticks c0, int neighborhood, double s_th) {
  if (c0 <= 0) throw std::invalid_argument("adaptive_c: c0 must be positive");
  if (neighborhood < 0) throw std::invalid_argument("adaptive_c: negative neighbourhood");
  if (!(s_th >= 0.0 && s_th <= 100.0)) throw std::invalid_argument("adaptive_c: s_th out of [0, 100]");
  return std::llround(static_cast<double>(c0) * neighborhood * s_th / 100.0);
}

Stability check_stability(double epsilon, double sigma, double delta) {
  const double bound = (epsilon - 2.0 * delta) / (1.0 - epsilon);
  return {sigma < bound && epsilon > 2.0 * delta, bound - sigma};
}

Stability check_stability(double epsilon, double sigma, Ticks nu, Ticks period) {
  if (period <= 0) throw std::invalid_argument("check_stability: period must be positive");
  return check_stability(epsilon, sigma, static_cast<double>(nu) / static_cast<double>(period));
}

ParamReport make_report(const ReportInputs& in, const Topology& topology) {
  ParamReport report;
  const Ticks beta = in.beta.value_or(in.c0);
  const auto eps = epsilon_opt(beta, static_cast<int>(topology.max_degree()), in.nu, in.period);
  report.epsilon_opt = eps.value;
  if (eps.warning) report.warnings.push_back(*eps.warning);

  const auto smax = sigma_max(in.epsilon, in.nu, in.period);
  report.sigma_max = smax.value;
  if (smax.warning) report.warnings.push_back(*smax.warning);

  const auto st = check_stability(in.epsilon, in.sigma, in.nu, in.period);
  report.stable = st.stable;
  report.margin = st.margin;
  if (!st.stable) {
    std::ostringstream msg;
    msg << "sigma " << in.sigma << " violates the stability bound (margin " << st.margin << ")";
    report.warnings.push_back(msg.str());
  }
  // The general overshoot bound depends on the instantaneous phase; only its
  // g = 0 corollary epsilon >= 2nu/T is checkable up front.
  if (in.epsilon < 2.0 * static_cast<double>(in.nu) / static_cast<double>(in.period)) {
    report.warnings.push_back("epsilon is below the overshoot floor 2nu/T");
  }
  for (NodeId id : topology.node_ids()) {
    report.adaptive_c_per_node[id] =
        adaptive_c(in.c0, static_cast<int>(topology.degree(id)), in.s_th);
  }
  return report;
}

}  // namespace ebs::params
