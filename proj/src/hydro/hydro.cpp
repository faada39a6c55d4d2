#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "kinetic/errors.hpp"
#include "kinetic/format.hpp"
#include "kinetic/hydro.hpp"
#include "kinetic/parallel.hpp"

namespace kinetic {

EulerState::EulerState(double rho, const Vec3& u, double theta, bool cold)
    : rho_(rho), theta_(theta), u_(u), cold_(cold) {}

EulerState::EulerState(double rho, const Vec3& u, double theta) : EulerState(rho, u, theta, false) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ArgumentError("density must be finite and nonnegative");
  if (theta == 0.0)
    throw ColdGasError("temperature 0 needs an explicit cold-gas state; the local Maxwellian is then a Dirac mass");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ArgumentError("temperature must be finite and positive");
}

EulerState EulerState::cold_gas(double rho, const Vec3& u) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ArgumentError("density must be finite and nonnegative");
  return EulerState(rho, u, 0.0, true);
}

namespace {

void reject_cold(const EulerState& s, const char* what) {
  if (s.cold())
    throw ColdGasError(std::string(what) +
                       ": cold gas has no local Maxwellian; it must be replaced by a Dirac mass in velocity");
}

}  // namespace

VelocityField maxwellian_field(const EulerState& s) {
  reject_cold(s, "maxwellian_field");
  return gaussian_field(3, s.rho(), s.u(), s.theta());
}

MomentResult maxwellian_moments(const VelocityField& f, const QuadratureScheme& q) {
  if (f.dim() != 3) throw ArgumentError("moments are defined for three-dimensional fields");
  q.validate();
  const WeightedNodes nodes = polar_ball_nodes(3, Vec3{}, 0.0, q);
  std::vector<double> fv(nodes.size());
  f.eval_batch(nodes.x, fv);
  std::vector<double> t0(nodes.size()), t1(nodes.size()), t2(nodes.size()), t3(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double wf = nodes.w[i] * fv[i];
    t0[i] = wf;
    t1[i] = wf * nodes.x[i].x;
    t2[i] = wf * nodes.x[i].y;
    t3[i] = wf * nodes.x[i].z;
  }
  MomentResult out;
  out.rho = pairwise_sum(t0);
  if (!(out.rho >= 1e-14)) {
    out.vacuum = true;
    return out;
  }
  const Vec3 u = (1.0 / out.rho) * Vec3{pairwise_sum(t1), pairwise_sum(t2), pairwise_sum(t3)};
  for (std::size_t i = 0; i < nodes.size(); ++i) t0[i] = nodes.w[i] * fv[i] * norm2(nodes.x[i] - u);
  const double theta = pairwise_sum(t0) / (3.0 * out.rho);
  out.state = EulerState(out.rho, u, theta);
  return out;
}

double specific_entropy(const EulerState& s) {
  reject_cold(s, "specific_entropy");
  if (!(s.rho() > 0.0)) throw DomainError("specific entropy needs positive density");
  return std::log(2.0 * std::cbrt(s.rho() * s.rho()) / (3.0 * s.theta()));
}

EntropyBound entropy_bound(const std::vector<EulerState>& states0, const EulerState& state_t) {
  if (states0.empty()) throw ArgumentError("entropy_bound needs at least one initial state");
  for (const EulerState& s : states0) reject_cold(s, "entropy_bound (initial data)");
  reject_cold(state_t, "entropy_bound");
  double smax = -std::numeric_limits<double>::infinity();
  for (const EulerState& s : states0) smax = std::max(smax, specific_entropy(s));
  EntropyBound out;
  out.C = 1.5 * std::exp(smax);
  const double lhs = std::cbrt(state_t.rho() * state_t.rho());
  const double rhs = out.C * state_t.theta();
  out.holds = lhs <= rhs * (1.0 + 1e-12);
  return out;
}

MaxwellianNorm maxwellian_weighted_norm(const EulerState& s, double gamma) {
  reject_cold(s, "maxwellian_weighted_norm");
  if (!(gamma >= -3.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [-3, 1]");
  const double k = 3.0 + gamma;
  MaxwellianNorm out;
  out.peak = s.rho() * std::pow(2.0 * std::numbers::pi * s.theta(), -1.5);
  const double un = norm(s.u());
  out.exact = out.peak * gaussian_bracket_sup(un, s.theta(), k, &out.argmax);
  out.three_term = 1.0 + std::pow(s.theta(), 0.5 * k) + std::pow(un, k);
  out.explicit_bound =
      out.peak * std::pow(3.0, 0.5 * k) * (1.0 + std::pow(k * s.theta() / std::numbers::e, 0.5 * k) + std::pow(un, k));
  return out;
}

bool blowup_integrability_condition(double lambda, double gamma) {
  if (!(lambda > 1.0)) throw DomainError("lambda must exceed 1 for a focusing implosion");
  if (!(gamma >= -3.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [-3, 1]");
  return (3.0 + gamma) * (1.0 / lambda - 1.0) <= -1.0;
}

double critical_gamma(double lambda) {
  if (!(lambda > 1.0)) throw DomainError("lambda must exceed 1 for a focusing implosion");
  return lambda / (lambda - 1.0) - 3.0;
}

bool admissible_exponent_check(double kappa, double lambda) {
  return -3.0 < kappa && kappa <= -3.0 * (lambda - 1.0) && 1.0 < lambda && lambda < 0.5 * (5.0 + kappa);
}

ExponentEnvelope admissible_lambda_envelope() {
  // kappa <= a lambda + b and lambda < (c + kappa) / e; the sup over kappa puts
  // kappa on the first line, so lambda (e - a) < b + c.
  constexpr double a = -3.0, b = 3.0, c = 5.0, e = 2.0;
  ExponentEnvelope out;
  out.lambda_sup = (b + c) / (e - a);
  out.kappa_at_sup = a * out.lambda_sup + b;
  return out;
}

const char* symmetry_name(Symmetry s) { return s == Symmetry::Spherical ? "spherical" : "cylindrical"; }

const char* verdict_name(Verdict v) { return v == Verdict::Excluded ? "excluded" : "open"; }

void ImplosionScenario::validate() const {
  const std::string who = "scenario '" + name + "': ";
  if (!(lambda_min >= 1.0 && lambda_max >= lambda_min && std::isfinite(lambda_max)))
    throw ConfigurationError(who + "lambda range must satisfy 1 <= lambda_min <= lambda_max < inf");
  if (!(lambda_max > 1.0)) throw ConfigurationError(who + "lambda range must lie inside (1, inf)");
  if (lambda_min == 1.0 && !min_open) throw ConfigurationError(who + "lambda = 1 cannot belong to the range");
  if (lambda_min == lambda_max && (min_open || max_open))
    throw ConfigurationError(who + "a single lambda value needs a closed range");
}

ScenarioVerdict scenario_verdict(const ImplosionScenario& sc, double gamma) {
  sc.validate();
  if (!(gamma >= -3.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [-3, 1]");
  ScenarioVerdict out;
  // The condition is monotone in lambda, so the supremum of the range decides.
  out.critical_gamma = critical_gamma(sc.lambda_max);
  out.critical_strict = sc.max_open;
  const bool open = sc.max_open ? gamma > out.critical_gamma && 3.0 + gamma > 0.0
                                : blowup_integrability_condition(sc.lambda_max, gamma);
  out.verdict = open ? Verdict::Open : Verdict::Excluded;
  return out;
}

void write_verdict_csv(const std::vector<ImplosionScenario>& catalog, const std::vector<double>& gammas,
                       std::ostream& os) {
  os << "scenario,gamma,verdict,critical_gamma\n";
  for (const ImplosionScenario& sc : catalog)
    for (double g : gammas) {
      const ScenarioVerdict v = scenario_verdict(sc, g);
      os << sc.name << ',' << format_double(g) << ',' << verdict_name(v.verdict) << ','
         << format_double(v.critical_gamma) << '\n';
    }
}

}  // namespace kinetic
