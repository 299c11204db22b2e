#include "covcast/covertness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "covcast/detail/parallel.hpp"
#include "covcast/error.hpp"
#include "covcast/numerics.hpp"
#include "covcast/rng.hpp"

namespace covcast {

PriorPair::PriorPair(double rho1, PriorBounds bounds) {
  if (!(bounds.rho_min > 0 && bounds.rho_min <= 0.5 && bounds.rho_max > 0.5 && bounds.rho_max < 1))
    throw InvalidArgument("prior bounds must satisfy 0 < rho_min <= 0.5 < rho_max < 1");
  if (!(rho1 > bounds.rho_min && rho1 < bounds.rho_max))
    throw InvalidArgument("rho1 outside (rho_min, rho_max)");
  rho1_ = rho1;
  rho0_ = 1.0 - rho1;
}

double kl_oh(double gamma_aw) {
  if (!(gamma_aw >= 0)) throw InvalidArgument("warden SNR must be non-negative");
  return 0.5 * (gamma_aw - std::log1p(gamma_aw));
}

double dep_lower_bound(const PriorPair& priors, double kl_per_use, double n) {
  return priors.min() - priors.max() * std::sqrt(n * kl_per_use / 2.0);
}

double covert_snr_limit_oh(const PriorPair& priors, double epsilon, double n) {
  if (!(epsilon > 0)) throw InvalidArgument("epsilon must be positive");
  if (!(n >= 1)) throw InvalidArgument("n must be at least 1");
  return 4.0 * epsilon * std::sqrt(2.0 / n) * priors.min() / priors.max();
}

bool covert_constraint_exact(const PriorPair& priors, double epsilon, double n, double gamma_aw) {
  const double lhs = priors.max() / (4.0 * priors.min()) *
                     std::sqrt(n * (gamma_aw - std::log1p(gamma_aw)));
  return lhs <= epsilon;
}

double covert_snr_limit_exact(const PriorPair& priors, double epsilon, double n) {
  const double ratio = priors.min() / priors.max();
  const double budget = 16.0 * epsilon * epsilon / n * ratio * ratio;
  auto excess = [&](double g) { return g - std::log1p(g) - budget; };
  // g - ln(1+g) <= g^2/2, so the small-SNR limit is always admissible
  double lo = covert_snr_limit_oh(priors, epsilon, n);
  double hi = 2.0 * lo + 1.0;
  while (excess(hi) <= 0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) <= 0 ? lo : hi) = mid;
  }
  return lo;
}

double covert_power_oh(double h_aw, double sigma_w2, const PriorPair& priors, double epsilon,
                       double n) {
  if (!(h_aw > 0)) throw InvalidArgument("warden channel gain must be positive");
  if (!(sigma_w2 > 0)) throw InvalidArgument("warden noise power must be positive");
  return sigma_w2 * covert_snr_limit_oh(priors, epsilon, n) / h_aw;
}

double relay_kappa(double sigma_w2, double relay_power_w, double l_rw, double alpha_g2g) {
  if (!(sigma_w2 > 0) || !(relay_power_w > 0) || !(l_rw > 0))
    throw InvalidArgument("relay_kappa requires positive noise, power and distance");
  return sigma_w2 / (relay_power_w * std::pow(l_rw, alpha_g2g));
}

double covert_power_th(double h_aw, double kappa_rw, double sigma_w2, const PriorPair& priors,
                       double epsilon, double n) {
  if (!(kappa_rw > 0)) throw InvalidArgument("kappa_rw must be positive");
  return covert_power_oh(h_aw, sigma_w2, priors, epsilon, n) /
         rayleigh_interference_factor(kappa_rw);
}

DetectionOutcome empirical_dep_oh(double h_aw, double p_a, double sigma_w2,
                                  const PriorPair& priors, int n, int trials,
                                  std::uint64_t seed, unsigned workers) {
  if (!(h_aw > 0) || !(sigma_w2 > 0) || !(p_a >= 0))
    throw InvalidArgument("empirical_dep_oh requires positive gain/noise and non-negative power");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (trials < 1000) throw InvalidArgument("empirical_dep_oh needs at least 1000 trials");

  const double gamma = p_a * h_aw / sigma_w2;
  const auto count = static_cast<std::size_t>(trials);
  // energy statistic sum(y^2)/sigma_w^2 under each hypothesis
  std::vector<double> s0(count), s1(count);
  detail::parallel_for(count, workers, [&](std::size_t i) {
    Rng rng(derive_seed(seed, {i}));
    std::normal_distribution<double> normal;
    double a = 0.0, b = 0.0;
    for (int k = 0; k < n; ++k) {
      const double z = normal(rng);
      a += z * z;
    }
    for (int k = 0; k < n; ++k) {
      const double z = normal(rng);
      b += z * z;
    }
    s0[i] = a;
    s1[i] = (1.0 + gamma) * b;
  });
  std::sort(s0.begin(), s0.end());
  std::sort(s1.begin(), s1.end());

  std::vector<double> pooled;
  pooled.reserve(2 * count);
  std::merge(s0.begin(), s0.end(), s1.begin(), s1.end(), std::back_inserter(pooled));
  std::vector<double> candidates{-std::numeric_limits<double>::infinity()};
  for (int q = 0; q < kDetectorThresholds; ++q) {
    const auto idx = static_cast<std::size_t>((q + 0.5) / kDetectorThresholds * pooled.size());
    candidates.push_back(pooled[std::min(idx, pooled.size() - 1)]);
  }
  candidates.push_back(std::numeric_limits<double>::infinity());

  const double total = static_cast<double>(count);
  DetectionOutcome best;
  best.xi = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    // decide H1 when the statistic exceeds t
    const auto above0 = s0.end() - std::upper_bound(s0.begin(), s0.end(), t);
    const auto below1 = std::upper_bound(s1.begin(), s1.end(), t) - s1.begin();
    const double p_fa = static_cast<double>(above0) / total;
    const double p_md = static_cast<double>(below1) / total;
    const double xi = priors.rho0() * p_fa + priors.rho1() * p_md;
    if (xi < best.xi) best = {p_fa, p_md, xi, 0.0, t};
  }
  const double r0 = priors.rho0(), r1 = priors.rho1();
  best.xi_stderr = std::sqrt((r0 * r0 * best.p_fa * (1 - best.p_fa) +
                              r1 * r1 * best.p_md * (1 - best.p_md)) /
                             total);
  return best;
}

}  // namespace covcast
