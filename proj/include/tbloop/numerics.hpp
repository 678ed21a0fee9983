#pragma once

#include <span>

namespace tbloop {

/// Standard normal c.d.f. Throws std::domain_error on non-finite input.
double std_normal_cdf(double z);

/// Upper tail 1 - Phi(z), computed without cancellation for large z.
double std_normal_sf(double z);

/// Inverse of the standard normal c.d.f. on (0, 1).
double std_normal_quantile(double p);

/// Regularized incomplete beta function I_x(a, b).
///
/// Degenerate shapes follow the binomial c.d.f. limits: a point mass at 0
/// when a == 0, so I_x(0, b) = 1 on [0, 1]; a point mass at 1 when b == 0,
/// so I_x(a, 0) = 0 for x < 1 and 1 at x == 1. Both zero is a domain error,
/// as are x outside [0, 1] and negative shapes.
double reg_inc_beta(double x, double a, double b);

/// Smallest x in [0, 1] with I_x(a, b) >= p, accurate to |I_x - p| <= 1e-10.
/// For a == 0 this is 0 and for b == 0 it is 1, matching reg_inc_beta.
double reg_inc_beta_inv(double p, double a, double b);

/// Beta(a, b) density at x in (0, 1); a, b > 0.
double beta_pdf(double x, double a, double b);

/// log(sum(exp(v))) without overflow. Empty input is a domain error.
double log_sum_exp(std::span<const double> values);

/// Normal density N(y; mean, sd^2) on the log scale.
double normal_log_pdf(double y, double mean, double sd);

}  // namespace tbloop
