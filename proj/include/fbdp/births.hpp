#ifndef FBDP_BIRTHS_HPP
#define FBDP_BIRTHS_HPP

#include <utility>

#include "fbdp/linear.hpp"

namespace fbdp {

/// Roots of lambda v u^2 - (lambda + mu) u + mu = 0 for v in (0,1]; r1 <= 1 <= r2,
/// computed by the cancellation-free q route.
struct RootsPair {
  double r1;
  double r2;
  double v;
};

RootsPair roots(const LinearParams& p, double v);

/// E B(t) = 1 + lambda/(lambda-mu) (E_a((lambda-mu) t^a) - 1); the balanced
/// limit 1 + lambda t^a / Gamma(1+a) is forced by the governing moment
/// equation (not a printed formula).
double mean_births(const LinearParams& p, double t);

/// Cov(N(t), B(t)) of the time-changed pair. Includes the
/// lambda/(lambda-mu) (E_a(2 c t^a) - E_a(c t^a)^2) contribution from the
/// variance of the conditional means; at a = 1 that term vanishes and the
/// classical expression is recovered. Rejects lambda == mu.
double cov_nb(const LinearParams& p, double t);

/// Var B(t) of the time-changed pair, same construction as cov_nb.
double var_births(const LinearParams& p, double t);

/// Corr(N(t), B(t)); undefined at t = 0 (zero variances).
double corr_nb(const LinearParams& p, double t);

/// E D(t) = mu/(lambda-mu) (E_a((lambda-mu) t^a) - 1) = E B - E N.
double mean_deaths(const LinearParams& p, double t);

/// Joint pgf E[u^N v^B] by the geometric k-sum over the pgf kernel roots.
/// Rejects the double-root neighbourhood |r2 - r1| < 1e-10.
double joint_pgf(const LinearParams& p, double u, double v, double t, long k_max = 100000);

/// Limiting distribution of the total births when lambda <= mu:
/// Pr{B = b} = (2b)! / ((b!)^2 (2b-1)) * (lambda mu)^b / (2 lambda (lambda+mu)^{2b-1}).
double limiting_births_pmf(double lambda, double mu, long b);

/// (mean, variance) of the limiting total births; needs lambda < mu.
std::pair<double, double> limiting_births_moments(double lambda, double mu);

}  // namespace fbdp

#endif  // FBDP_BIRTHS_HPP
