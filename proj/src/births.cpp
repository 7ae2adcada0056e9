#include "fbdp/births.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fbdp/special_functions.hpp"

namespace fbdp {

namespace {

struct MlPack {
  double e1;   // E_a(c t^a)
  double e2;   // E_a(2 c t^a)
  double c1;   // (t^a / a) E_{a,a}(c t^a) -- the resolved convolution
};

MlPack eval_pack(const LinearParams& p, double t) {
  const double alpha = p.order.alpha;
  const double c = p.lambda - p.mu;
  const double ta = std::pow(t, alpha);
  return {sf::ml_one(alpha, c * ta), sf::ml_one(alpha, 2.0 * c * ta),
          ta / alpha * sf::ml_two(alpha, alpha, c * ta)};
}

void require_unbalanced(const LinearParams& p, const char* what) {
  if (p.lambda == p.mu) {
    throw std::domain_error(std::string(what) + " has no closed form at lambda == mu");
  }
}

}  // namespace

RootsPair roots(const LinearParams& p, double v) {
  if (!(v > 0.0) || !(v <= 1.0)) throw std::domain_error("roots need v in (0,1]");
  const double b = p.lambda + p.mu;
  const double disc = b * b - 4.0 * p.lambda * p.mu * v;
  if (disc < 0.0) {
    throw std::logic_error("negative discriminant cannot occur for v <= 1");
  }
  const double q = 0.5 * (b + std::sqrt(disc));
  const double r1 = p.mu / q;
  const double r2 = q / (p.lambda * v);
  return {std::min(r1, r2), std::max(r1, r2), v};
}

double mean_births(const LinearParams& p, double t) {
  if (t < 0.0) throw std::domain_error("mean needs t >= 0");
  if (t == 0.0) return 1.0;
  const double alpha = p.order.alpha;
  const double ta = std::pow(t, alpha);
  if (p.lambda == p.mu) {
    return 1.0 + p.lambda * ta * std::exp(-std::lgamma(alpha + 1.0));
  }
  const double c = p.lambda - p.mu;
  return 1.0 + p.lambda / c * (sf::ml_one(alpha, c * ta) - 1.0);
}

double cov_nb(const LinearParams& p, double t) {
  require_unbalanced(p, "cov_nb");
  if (t < 0.0) throw std::domain_error("covariance needs t >= 0");
  if (t == 0.0) return 0.0;
  const double c = p.lambda - p.mu;
  const MlPack m = eval_pack(p, t);
  return p.lambda * (p.lambda + p.mu) / (c * c) * (m.e2 - m.e1) -
         2.0 * p.lambda * p.mu / c * m.c1 + p.lambda / c * (m.e2 - m.e1 * m.e1);
}

double var_births(const LinearParams& p, double t) {
  require_unbalanced(p, "var_births");
  if (t < 0.0) throw std::domain_error("variance needs t >= 0");
  if (t == 0.0) return 0.0;
  const double c = p.lambda - p.mu;
  const MlPack m = eval_pack(p, t);
  return p.lambda * p.lambda * (p.lambda + p.mu) / (c * c * c) * (m.e2 - 1.0) -
         p.lambda * (p.lambda + p.mu) / (c * c) * (m.e1 - 1.0) -
         4.0 * p.lambda * p.lambda * p.mu / (c * c) * m.c1 +
         p.lambda * p.lambda / (c * c) * (m.e2 - m.e1 * m.e1);
}

double corr_nb(const LinearParams& p, double t) {
  if (!(t > 0.0)) throw std::domain_error("correlation is undefined at t = 0");
  const double vn = var_linear(p, t);
  const double vb = var_births(p, t);
  return cov_nb(p, t) / std::sqrt(vn * vb);
}

double mean_deaths(const LinearParams& p, double t) {
  require_unbalanced(p, "mean_deaths");
  if (t < 0.0) throw std::domain_error("mean needs t >= 0");
  if (t == 0.0) return 0.0;
  const double c = p.lambda - p.mu;
  return p.mu / c * (sf::ml_one(p.order.alpha, c * std::pow(t, p.order.alpha)) - 1.0);
}

double joint_pgf(const LinearParams& p, double u, double v, double t, long k_max) {
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
    throw std::domain_error("joint pgf needs u, v in [0,1]");
  }
  if (t < 0.0) throw std::domain_error("joint pgf needs t >= 0");
  if (t == 0.0) return u * v;
  const RootsPair r = roots(p, v);
  if (r.r2 - r.r1 < 1e-10) {
    throw std::domain_error("joint pgf is degenerate near the double root (lambda = mu, v = 1)");
  }
  const double ratio = (u - r.r1) / (u - r.r2);
  const double aratio = std::abs(ratio);
  const double rate = p.lambda * v * (r.r2 - r.r1);
  const double ta = std::pow(t, p.order.alpha);
  double sum = 0.0;
  double rk = 1.0;
  for (long k = 1; k <= k_max; ++k) {
    rk *= ratio;
    sum += rk * sf::ml_one(p.order.alpha, -rate * k * ta);
    const double bound = std::pow(aratio, k + 1.0) / (1.0 - aratio);
    if (bound < 1e-14 * std::max(std::abs(sum), 1e-3)) break;
    if (k == k_max) {
      throw std::runtime_error("joint pgf k-sum cap reached before the geometric bound");
    }
  }
  return v * (r.r1 - (r.r2 - r.r1) * sum);
}

double limiting_births_pmf(double lambda, double mu, long b) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw std::domain_error("rates must be positive");
  if (lambda > mu) {
    throw std::domain_error("total births stay infinite with positive probability for lambda > mu");
  }
  if (b < 1) throw std::domain_error("total births count from the progenitor: b >= 1");
  // (2b)! / ((b!)^2 (2b-1)) * (lambda mu)^b / (2 lambda (lambda+mu)^{2b-1})
  const double lg = std::lgamma(2.0 * b + 1.0) - 2.0 * std::lgamma(b + 1.0) -
                    std::log(2.0 * b - 1.0) + b * std::log(lambda * mu) - std::log(2.0 * lambda) -
                    (2.0 * b - 1.0) * std::log(lambda + mu);
  return std::exp(lg);
}

std::pair<double, double> limiting_births_moments(double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw std::domain_error("rates must be positive");
  if (!(lambda < mu)) {
    throw std::domain_error("limiting moments need lambda < mu (variance diverges at lambda = mu)");
  }
  const double d = mu - lambda;
  return {mu / d, lambda * mu * (lambda + mu) / (d * d * d)};
}

}  // namespace fbdp
