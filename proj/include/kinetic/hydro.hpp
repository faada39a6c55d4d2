#pragma once

// Hydrodynamic side of the kinetic blowup question: local Maxwellians and their
// moments, the entropy bound rho^{2/3} <= C theta, self-similar exponent
// arithmetic and per-scenario verdicts on implosion compatibility.
// Units: Boltzmann constant 1, monatomic gas with internal energy (3/2) theta.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kinetic/field.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic {

class EulerState {
 public:
  EulerState(double rho, const Vec3& u, double theta);
  // theta = 0 is only representable through this constructor.
  static EulerState cold_gas(double rho, const Vec3& u);

  double rho() const { return rho_; }
  const Vec3& u() const { return u_; }
  double theta() const { return theta_; }
  bool cold() const { return cold_; }
  double pressure() const { return rho_ * theta_; }
  double energy() const { return 1.5 * theta_ + 0.5 * norm2(u_); }  // per unit mass

 private:
  EulerState(double rho, const Vec3& u, double theta, bool cold);
  double rho_, theta_;
  Vec3 u_;
  bool cold_;
};

// rho (2 pi theta)^{-3/2} exp(-|v - u|^2 / (2 theta)) with exact derivatives.
// Cold gas throws ColdGasError: the Maxwellian degenerates to a Dirac mass.
VelocityField maxwellian_field(const EulerState& s);

struct MomentResult {
  bool vacuum = false;              // rho below 1e-14; state is then absent
  std::optional<EulerState> state;
  double rho = 0.0;
};
// rho = int f, rho u = int v f, rho theta = (1/3) int |v - u|^2 f over |v| <= V.
MomentResult maxwellian_moments(const VelocityField& f, const QuadratureScheme& q);

// S = log(2 rho^{2/3} / (3 theta)).
double specific_entropy(const EulerState& s);

struct EntropyBound {
  bool holds = false;
  double C = 0.0;  // (3/2) exp(max S over the initial states)
};
// rho_t^{2/3} <= C theta_t, with a relative slack of 1e-12 for equality cases.
EntropyBound entropy_bound(const std::vector<EulerState>& states0, const EulerState& state_t);

struct MaxwellianNorm {
  double exact = 0.0;      // sup_v <v>^{3+gamma} M(v)
  double argmax = 0.0;     // signed position of the maximizer along u (or along e_1 if u = 0)
  double peak = 0.0;       // rho (2 pi theta)^{-3/2}
  double three_term = 0.0; // 1 + theta^{(3+gamma)/2} + |u|^{3+gamma}
  // peak 3^{k/2} (1 + (k theta / e)^{k/2} + |u|^k), k = 3 + gamma: an explicit
  // constant for the three-term bound, always >= exact.
  double explicit_bound = 0.0;
};
MaxwellianNorm maxwellian_weighted_norm(const EulerState& s, double gamma);

// (3 + gamma)(1/lambda - 1) <= -1; DomainError for lambda <= 1.
bool blowup_integrability_condition(double lambda, double gamma);
// Smallest gamma satisfying the condition at lambda: lambda / (lambda - 1) - 3.
double critical_gamma(double lambda);

// -3 < kappa <= -3(lambda - 1) and 1 < lambda < (5 + kappa)/2.
bool admissible_exponent_check(double kappa, double lambda);

struct ExponentEnvelope {
  double lambda_sup = 0.0;
  double kappa_at_sup = 0.0;
};
// Supremum of admissible lambda over kappa, by eliminating kappa between the
// two constraints above.
ExponentEnvelope admissible_lambda_envelope();

// Envelope from mass, energy and entropy, and the weaker one from compensated
// integrability; both exposed because which one is sharp is unsettled.
inline constexpr double kLambdaEnvelope = 8.0 / 5.0;
inline constexpr double kSerreLambdaEnvelope = 9.0 / 5.0;

enum class Symmetry { Spherical, Cylindrical };
const char* symmetry_name(Symmetry s);

struct ImplosionScenario {
  std::string name;
  std::string kappa;          // expression in lambda, a number, or "unspecified"
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  bool min_open = true;
  bool max_open = true;       // an open upper end makes the critical gamma strict
  Symmetry symmetry = Symmetry::Spherical;
  bool profiles_bounded = true;
  bool cold_gas = false;      // exact profile needs a zero-temperature region
  std::string notes;

  // Throws ConfigurationError unless 1 <= lambda_min <= lambda_max, with a
  // nonempty range inside (1, inf).
  void validate() const;
};

enum class Verdict { Excluded, Open };
const char* verdict_name(Verdict v);

struct ScenarioVerdict {
  Verdict verdict = Verdict::Excluded;
  double critical_gamma = 0.0;  // inf of gamma with an open verdict
  bool critical_strict = true;  // gamma must exceed (not merely reach) the critical value
};
ScenarioVerdict scenario_verdict(const ImplosionScenario& sc, double gamma);

// INI catalog: one [section] per scenario with keys kappa, lambda_min,
// lambda_max, min_open, max_open, symmetry, profiles_bounded, cold_gas, notes.
// Numeric entries accept +, -, *, /, parentheses and sqrt().
std::vector<ImplosionScenario> load_catalog(const std::string& path);
std::vector<ImplosionScenario> shipped_catalog();  // data/implosion_catalog.ini
std::string shipped_catalog_path();

// Evaluates an arithmetic expression with optional variable `lambda`.
double eval_expression(const std::string& text, std::optional<double> lambda = std::nullopt);

// CSV with columns scenario,gamma,verdict,critical_gamma.
void write_verdict_csv(const std::vector<ImplosionScenario>& catalog, const std::vector<double>& gammas,
                       std::ostream& os);

}  // namespace kinetic
