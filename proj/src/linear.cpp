#include "fbdp/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fbdp/special_functions.hpp"

namespace fbdp {

namespace {

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 4) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double log_binomial(int a, int b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

// Alternating inner sum sum_{r=0}^{n-1} (-1)^r C(n-1,r) E_a(-t^a (r+l+1) c).
double inner_alternating(int n, int l, double alpha, double ta, double c) {
  std::vector<double> terms(n);
  for (int r = 0; r < n; ++r) {
    const double coeff = std::exp(log_binomial(n - 1, r));
    const double e = sf::ml_one(alpha, -ta * (r + l + 1) * c);
    terms[r] = (r % 2 == 0 ? 1.0 : -1.0) * coeff * e;
  }
  return pairwise_sum(terms, 0, terms.size());
}

// sum_{l>=1} rho^l E_a(-t^a l c): the extinction-side geometric sum.
double geometric_ml_sum(double rho, double alpha, double ta, double c, int l_max) {
  double sum = 0.0;
  double rl = 1.0;
  for (int l = 1; l <= l_max; ++l) {
    rl *= rho;
    const double e = sf::ml_one(alpha, -ta * l * c);
    sum += rl * e;
    // E is decreasing in l, so the remaining tail is below e * rho^{l+1}/(1-rho)
    if (rl * rho / (1.0 - rho) * e < 1e-14 * std::abs(sum) + 1e-300) return sum;
  }
  throw std::runtime_error("pmf_linear: l_max exhausted before the geometric tail bound was met");
}

// sum_{l>=0} rho^l C(n+l,l) * inner(l) for the n >= 1 states.
double state_sum(int n, double rho, double alpha, double ta, double c, int l_max) {
  double sum = 0.0;
  int small_run = 0;
  for (int l = 0; l <= l_max; ++l) {
    const double w = std::exp(static_cast<double>(l) * std::log(rho) + log_binomial(n + l, l));
    const double term = w * inner_alternating(n, l, alpha, ta, c);
    sum += term;
    if (std::abs(term) < 1e-15 * std::abs(sum) + 1e-300 && l > n) {
      if (++small_run >= 2) return sum;
    } else {
      small_run = 0;
    }
  }
  throw std::runtime_error("pmf_linear: l_max exhausted before the geometric tail bound was met");
}

// Balanced rates: Borel-type resummation through the derivative of
// w E_a(-w) under the e^{-x} weight (the series itself has k! growth).
double pmf_balanced(const LinearParams& p, int n, double t) {
  const double alpha = p.order.alpha;
  const double ta = std::pow(t, alpha);
  if (n == 0) {
    return 1.0 - sf::integrate_exp_weighted(
                     [&](double x) { return sf::ml_one(alpha, -p.lambda * ta * x); });
  }
  const double lognf = std::lgamma(n + 1.0);
  const double value = sf::integrate_exp_weighted([&](double x) {
    const double w = p.lambda * ta * x;
    const double d1 = sf::ml_one_deriv(alpha, n - 1, -w);
    const double d2 = sf::ml_one_deriv(alpha, n, -w);
    return n * std::pow(w, n - 1.0) * d1 - std::pow(w, static_cast<double>(n)) * d2;
  });
  return value * std::exp(-lognf);
}

}  // namespace

LinearParams::LinearParams(double lambda_, double mu_, double alpha_)
    : lambda(lambda_), mu(mu_), order(alpha_) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw std::domain_error("linear rates must be positive and finite");
  }
}

double pmf_linear(const LinearParams& p, int n, double t, int l_max) {
  if (n < 0) throw std::domain_error("state index must be nonnegative");
  if (t < 0.0) throw std::domain_error("pmf needs t >= 0");
  if (l_max < 1) throw std::domain_error("l_max must be positive");
  if (t == 0.0) return n == 1 ? 1.0 : 0.0;

  const double alpha = p.order.alpha;
  const double ta = std::pow(t, alpha);
  switch (p.regime()) {
    case LinearRegime::BirthDominant: {
      const double c = p.lambda - p.mu;
      const double rho = p.mu / p.lambda;
      if (n == 0) {
        return rho - (c / p.lambda) * geometric_ml_sum(rho, alpha, ta, c, l_max);
      }
      return (c / p.lambda) * (c / p.lambda) * state_sum(n, rho, alpha, ta, c, l_max);
    }
    case LinearRegime::DeathDominant: {
      const double c = p.mu - p.lambda;
      const double rho = p.lambda / p.mu;
      if (n == 0) {
        return 1.0 - (c / p.lambda) * geometric_ml_sum(rho, alpha, ta, c, l_max);
      }
      return std::pow(rho, n - 1.0) * (c / p.mu) * (c / p.mu) *
             state_sum(n, rho, alpha, ta, c, l_max);
    }
    case LinearRegime::Balanced:
      return pmf_balanced(p, n, t);
  }
  return 0.0;
}

double mean_linear(const LinearParams& p, double t) {
  if (t < 0.0) throw std::domain_error("mean needs t >= 0");
  if (t == 0.0) return 1.0;
  return sf::ml_one(p.order.alpha, (p.lambda - p.mu) * std::pow(t, p.order.alpha));
}

double var_linear(const LinearParams& p, double t) {
  if (t < 0.0) throw std::domain_error("variance needs t >= 0");
  if (t == 0.0) return 0.0;
  const double alpha = p.order.alpha;
  const double ta = std::pow(t, alpha);
  if (p.lambda == p.mu) {
    // c -> 0 limit of both representations below
    return 2.0 * p.lambda * ta * std::exp(-std::lgamma(alpha + 1.0));
  }
  const double c = p.lambda - p.mu;
  const double e1 = sf::ml_one(alpha, c * ta);
  const double e2 = sf::ml_one(alpha, 2.0 * c * ta);
  const double form_a = (p.lambda + p.mu) / c * (e2 - e1) + e2 - e1 * e1;
  const double form_b = 2.0 * p.lambda / c * e2 - (p.lambda + p.mu) / c * e1 - e1 * e1;
  const double scale = std::max({std::abs(form_a), std::abs(e2), 1.0});
  if (std::abs(form_a - form_b) > 1e-10 * scale) {
    throw std::logic_error("variance representations disagree beyond rounding");
  }
  return form_a;
}

double extinction_cdf(const LinearParams& p, double t, int l_max) {
  return pmf_linear(p, 0, t, l_max);
}

double extinction_tail_asymptote(const SubordinatorModel& model, double lambda, double mu,
                                 double t) {
  if (!(lambda < mu)) throw std::domain_error("tail asymptote needs lambda < mu");
  if (!(t > 0.0)) throw std::domain_error("tail asymptote needs t > 0");
  const double delta = model.rv_index_at_zero();
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw std::domain_error("tail asymptote needs the exponent's index at zero in [0,1)");
  }
  return -std::log1p(-lambda / mu) * model.laplace_exponent(1.0 / t) /
         (lambda * std::tgamma(1.0 - delta));
}

double extinction_cdf_zero_asymptote(const SubordinatorModel& model, double lambda, double mu,
                                     double t) {
  if (!(lambda < mu)) throw std::domain_error("zero asymptote needs lambda < mu");
  if (!(t > 0.0)) throw std::domain_error("zero asymptote needs t > 0");
  const double delta = model.rv_index_at_infinity();
  const double e = std::exp((lambda - mu) / model.laplace_exponent(1.0 / t));
  return (mu - mu * e) / (mu - lambda * e) / std::tgamma(1.0 + delta);
}

double classical_extinction(double lambda, double mu, double t) {
  if (!(lambda < mu)) throw std::domain_error("classical extinction formula needs lambda < mu");
  if (t < 0.0) throw std::domain_error("needs t >= 0");
  const double e = std::exp(-t * (mu - lambda));
  return (mu - mu * e) / (mu - lambda * e);
}

double mean_extinction_time_classical(double lambda, double mu) {
  if (!(lambda < mu)) throw std::domain_error("mean extinction time needs lambda < mu");
  return -std::log1p(-lambda / mu) / lambda;
}

double SubordinatorModel::laplace_exponent(double eta) const {
  if (!(eta >= 0.0)) throw std::domain_error("Laplace exponent argument must be nonnegative");
  switch (family_) {
    case Family::Stable:
      return std::pow(eta, p1_);
    case Family::Gamma:
      return p1_ * std::log1p(eta / p2_);
  }
  return 0.0;
}

}  // namespace fbdp
