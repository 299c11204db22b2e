#pragma once

#include <cstdint>

namespace covcast {

/// Admissible range for the transmit prior rho1. Both bounds are strict.
struct PriorBounds {
  double rho_min = 0.01;
  double rho_max = 1.0 - 1e-6;
};

/// Bernoulli transmit prior: rho1 = P[transmit in a slot], rho0 = 1 - rho1.
class PriorPair {
 public:
  /// Throws InvalidArgument unless 0 < rho_min <= 0.5 < rho_max < 1 and
  /// rho_min < rho1 < rho_max.
  explicit PriorPair(double rho1, PriorBounds bounds = {});

  double rho0() const { return rho0_; }
  double rho1() const { return rho1_; }
  double min() const { return rho0_ < rho1_ ? rho0_ : rho1_; }
  double max() const { return rho0_ < rho1_ ? rho1_ : rho0_; }

 private:
  double rho0_;
  double rho1_;
};

struct DetectionOutcome {
  double p_fa = 0.0;   // P[decide H1 | H0]
  double p_md = 0.0;   // P[decide H0 | H1]
  double xi = 0.0;     // rho0 * p_fa + rho1 * p_md
  double xi_stderr = 0.0;
  double threshold = 0.0;  // on sum(y^2) / sigma_w^2; infinities allowed
};

/// Per-use KL divergence between N(0, s^2(1+gamma)) and N(0, s^2), in nats.
double kl_oh(double gamma_aw);

/// Pinsker lower bound on the warden's minimum detection error probability.
/// May be negative, in which case the bound is vacuous.
double dep_lower_bound(const PriorPair& priors, double kl_per_use, double n);

/// Largest warden SNR allowed by the small-SNR covertness budget
/// gamma <= 4 eps sqrt(2/n) min(rho)/max(rho).
double covert_snr_limit_oh(const PriorPair& priors, double epsilon, double n);

/// Largest warden SNR satisfying the exact constraint
/// max/(4 min) * sqrt(n (gamma - ln(1+gamma))) <= eps. Always >= the
/// small-SNR limit.
double covert_snr_limit_exact(const PriorPair& priors, double epsilon, double n);

/// True if `gamma_aw` satisfies the exact covertness constraint.
bool covert_constraint_exact(const PriorPair& priors, double epsilon, double n,
                             double gamma_aw);

double covert_power_oh(double h_aw, double sigma_w2, const PriorPair& priors,
                       double epsilon, double n);

/// sigma_w^2 / (P_r * l_rw^alpha_g2g).
double relay_kappa(double sigma_w2, double relay_power_w, double l_rw, double alpha_g2g);

/// Covert power budget when the relay's Rayleigh-faded signal interferes at
/// the warden; the OH budget divided by rayleigh_interference_factor(kappa).
double covert_power_th(double h_aw, double kappa_rw, double sigma_w2,
                       const PriorPair& priors, double epsilon, double n);

/// Monte-Carlo energy-detector estimate of the warden's detection error.
/// Simulates `trials` blocks of `n` Gaussian samples under each hypothesis
/// and picks the threshold minimizing the empirical error. Per-trial streams
/// derive from (seed, trial) so the result does not depend on `workers`.
DetectionOutcome empirical_dep_oh(double h_aw, double p_a, double sigma_w2,
                                  const PriorPair& priors, int n, int trials,
                                  std::uint64_t seed, unsigned workers = 1);

inline constexpr int kDetectorThresholds = 512;

}  // namespace covcast
