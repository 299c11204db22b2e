#pragma once

namespace covcast {

struct AccuracySpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
};

/// Gaussian tail probability Q(x) = P[N(0,1) > x].
double q_function(double x);

/// Exponential integral E1(z) = int_z^inf e^{-t}/t dt for real z > 0.
/// Series for z <= 1, continued fraction otherwise.
double exp_integral_e1(double z, AccuracySpec acc = {});

/// e^z * E1(z), evaluated without overflow for large z.
double exp_scaled_e1(double z, AccuracySpec acc = {});

/// e^k * k * E1(k): the factor by which unit-mean exponential interference
/// shrinks the expected SNR at the warden. In (0, 1), increasing in k.
double rayleigh_interference_factor(double kappa);

}  // namespace covcast
