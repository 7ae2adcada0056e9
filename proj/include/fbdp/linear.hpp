#ifndef FBDP_LINEAR_HPP
#define FBDP_LINEAR_HPP

#include "fbdp/rates.hpp"
#include "fbdp/subordinator.hpp"

namespace fbdp {

enum class LinearRegime { BirthDominant, DeathDominant, Balanced };

/// Linear rates lambda_n = n lambda, mu_n = n mu with a Caputo order; the
/// closed-form evaluator for this family, valid for all t.
struct LinearParams {
  double lambda;
  double mu;
  FractionalOrder order;

  LinearParams(double lambda_, double mu_, double alpha_);
  LinearRegime regime() const {
    return lambda > mu    ? LinearRegime::BirthDominant
           : lambda < mu  ? LinearRegime::DeathDominant
                          : LinearRegime::Balanced;
  }
};

/// State probability by the Mittag-Leffler sums (lambda != mu) or the
/// exp-weighted derivative integrals (lambda == mu). The geometric l-sums stop
/// once their tail bound drops below 1e-14 of the running sum; l_max caps them.
/// The alternating inner sums lose digits for n beyond ~30.
double pmf_linear(const LinearParams& p, int n, double t, int l_max = 10000);

/// E N(t) = E_{a,1}((lambda - mu) t^a).
double mean_linear(const LinearParams& p, double t);

/// Var N(t); at lambda == mu the closed limit 2 lambda t^a / Gamma(1+a).
double var_linear(const LinearParams& p, double t);

/// Extinction-time distribution function Pr{T <= t} = pmf_linear(0, t).
double extinction_cdf(const LinearParams& p, double t, int l_max = 10000);

/// Large-t tail asymptote -log(1 - lambda/mu) phi(1/t) / (lambda Gamma(1-d)),
/// d the exponent's index at zero. Needs lambda < mu and d in [0,1).
double extinction_tail_asymptote(const SubordinatorModel& model, double lambda, double mu,
                                 double t);

/// Small-t asymptote F(t) ~ F_classical(1/phi(1/t)) / Gamma(1+d), d the index
/// at infinity. Needs lambda < mu.
double extinction_cdf_zero_asymptote(const SubordinatorModel& model, double lambda, double mu,
                                     double t);

/// Classical (first-order) extinction probability, lambda < mu.
double classical_extinction(double lambda, double mu, double t);

/// -log(1 - lambda/mu)/lambda: mean classical extinction time, lambda < mu.
double mean_extinction_time_classical(double lambda, double mu);

}  // namespace fbdp

#endif  // FBDP_LINEAR_HPP
