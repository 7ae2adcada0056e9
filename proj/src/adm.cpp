#include "fbdp/adm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fbdp {

namespace {

// t^{k a} / Gamma(k a + 1) with the t = 0, k = 0 case equal to 1.
double power_over_gamma(double t, int k, double alpha) {
  if (k == 0) return 1.0;
  if (t == 0.0) return 0.0;
  return std::exp(k * alpha * std::log(t) - std::lgamma(k * alpha + 1.0));
}

double sign_pm(int exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

// Shared truncation loop: feeds term magnitudes, watches for decay and for
// sustained growth past k = guard_k.
class SeriesAccumulator {
 public:
  SeriesAccumulator(double tol, int guard_k, bool keep_partials)
      : tol_(tol), guard_k_(guard_k), keep_(keep_partials) {}

  // Returns false once the series should stop.
  bool feed(int k, double term) {
    sum_ += term;
    const double mag = std::abs(term);
    ++diag_.terms_used;
    diag_.last_term_magnitude = mag;
    if (keep_) diag_.partial_sums.push_back(sum_);
    if (mag <= best_mag_ && mag > 0.0) {
      best_mag_ = mag;
      best_sum_ = sum_;
    }
    if (mag > prev_mag_ && k > guard_k_) {
      if (++growth_run_ >= 5) {
        diag_.divergence_flag = true;
        return false;
      }
    } else {
      growth_run_ = 0;
    }
    prev_mag_ = mag;
    if (mag < tol_ * std::abs(sum_) + 1e-300) {
      if (++small_run_ >= 3) return false;
    } else {
      small_run_ = 0;
    }
    return true;
  }

  double value() const { return diag_.divergence_flag ? best_sum_ : sum_; }
  SeriesDiagnostics take_diag() { return std::move(diag_); }

 private:
  double tol_;
  int guard_k_;
  bool keep_;
  double sum_ = 0.0;
  double prev_mag_ = std::numeric_limits<double>::infinity();
  double best_mag_ = std::numeric_limits<double>::infinity();
  double best_sum_ = 0.0;
  int growth_run_ = 0;
  int small_run_ = 0;
  SeriesDiagnostics diag_;
};

}  // namespace

PsiTable::PsiTable(const RateModel& model, int k_max) : model_(model) {
  if (k_max < 0) throw std::invalid_argument("psi table needs k_max >= 0");
  if (model.bounded() && model.max_state() < static_cast<std::size_t>(k_max) + 2) {
    throw std::invalid_argument(
        "rate table too short: the recursion touches mu_{n+1} on the diagonal, need n_max >= k_max + 2");
  }
  cols_.resize(k_max + 1);
  cols_[0] = {0.0, 1.0};  // psi_{0,0}, psi_{1,0}
  for (int k = 0; k < k_max; ++k) {
    const auto& prev = cols_[k];
    auto get = [&prev](int n) { return n < static_cast<int>(prev.size()) ? prev[n] : 0.0; };
    std::vector<double> col(k + 3, 0.0);
    col[0] = model_.mu_at(1) * prev[1];
    col[1] = model_.big_lambda(1) * prev[1] + model_.mu_at(2) * get(2);
    for (int n = 2; n <= k + 1; ++n) {
      col[n] = model_.big_lambda(n) * get(n) + model_.lambda_at(n - 1) * prev[n - 1] +
               model_.mu_at(n + 1) * get(n + 1);
    }
    col[k + 2] = prev[k + 1] * model_.lambda_at(k + 1);  // lambda_1 ... lambda_{k+1}
    cols_[k + 1] = std::move(col);
  }
}

double PsiTable::at(int n, int k) const {
  if (n < 0 || k < 0) throw std::out_of_range("psi indices must be nonnegative");
  if (k >= static_cast<int>(cols_.size())) {
    throw std::out_of_range("psi table built only through k_max");
  }
  if (n > k + 1) return 0.0;
  return cols_[k][n];
}

void PsiTable::write_csv(std::ostream& out) const {
  out << "n,k,psi\n";
  char buf[64];
  for (int k = 0; k < static_cast<int>(cols_.size()); ++k) {
    for (int n = 0; n <= k + 1; ++n) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", n, k, cols_[k][n]);
      out << buf;
    }
  }
}

double series_component(const PsiTable& psi, int n, int k, double alpha, double t) {
  FractionalOrder order(alpha);
  if (t < 0.0) throw std::domain_error("series component needs t >= 0");
  if (n < 0 || k < 0) throw std::out_of_range("series component indices must be nonnegative");
  if (n == 0 && k == 0) return 0.0;
  if (n - k > 1) return 0.0;
  if (n == 0) {
    return sign_pm(k + 1) * psi.at(0, k) * power_over_gamma(t, k, order.alpha);
  }
  return sign_pm(k - n + 1) * psi.at(n, k) * power_over_gamma(t, k, order.alpha);
}

AdmResult pmf_adm(const PsiTable& psi, double alpha, int n, double t, int k_max, double tol,
                  bool keep_partials) {
  FractionalOrder order(alpha);
  if (t < 0.0) throw std::domain_error("pmf needs t >= 0");
  if (n < 0) throw std::domain_error("state index must be nonnegative");
  if (k_max > psi.k_max()) throw std::out_of_range("k_max exceeds the psi table");
  AdmResult res;
  if (t == 0.0) {
    res.value = (n == 1) ? 1.0 : 0.0;
    return res;
  }
  SeriesAccumulator acc(tol, n + 2, keep_partials);
  for (int k = std::max(0, n - 1); k <= k_max; ++k) {
    if (!acc.feed(k, series_component(psi, n, k, order.alpha, t))) break;
  }
  res.value = acc.value();
  res.diag = acc.take_diag();
  return res;
}

AdmResult pmf_adm(const RateModel& model, double alpha, int n, double t, int k_max, double tol) {
  return pmf_adm(PsiTable(model, k_max), alpha, n, t, k_max, tol);
}

AdmResult regularity_defect(const RateModel& model, double alpha, double t, int n_max,
                            int k_max) {
  PsiTable psi(model, k_max);
  double total = 0.0;
  AdmResult out;
  for (int n = 0; n <= n_max; ++n) {
    AdmResult r = pmf_adm(psi, alpha, n, t, k_max);
    total += r.value;
    out.diag.divergence_flag = out.diag.divergence_flag || r.diag.divergence_flag;
    out.diag.terms_used = std::max(out.diag.terms_used, r.diag.terms_used);
    out.diag.last_term_magnitude =
        std::max(out.diag.last_term_magnitude, r.diag.last_term_magnitude);
  }
  out.value = std::abs(1.0 - total);
  return out;
}

namespace {

// Sum over k of (inner weight sum over n) * t^{(k+1)a} / Gamma((k+1)a + 1),
// with inner(n, k) supplied by the caller. Shared by the pgf and the moments.
template <typename Inner>
AdmResult weighted_series(const PsiTable& psi, double alpha, double t, int k_max, double lead,
                          Inner inner) {
  AdmResult res;
  if (t == 0.0) {
    res.value = lead;
    return res;
  }
  SeriesAccumulator acc(1e-14, 4, false);
  for (int k = 0; k <= k_max; ++k) {
    double group = 0.0;
    for (int n = 1; n <= k + 1; ++n) {
      const double w = inner(n);
      if (w == 0.0) continue;
      group += sign_pm(k - n + 1) * w * psi.at(n, k);
    }
    if (!acc.feed(k, group * power_over_gamma(t, k + 1, alpha))) break;
  }
  res.value = lead + acc.value();
  res.diag = acc.take_diag();
  return res;
}

// d^r/du^r of lambda_n u^{n+1} - (lambda_n + mu_n) u^n + mu_n u^{n-1} at u = 1.
double pgf_derivative_weight(const RateModel& m, int n, int r) {
  auto falling = [](int a, int r_) {
    double f = 1.0;
    for (int i = 0; i < r_; ++i) f *= (a - i);
    return f;
  };
  return m.lambda_at(n) * falling(n + 1, r) - m.big_lambda(n) * falling(n, r) +
         m.mu_at(n) * falling(n - 1, r);
}

}  // namespace

AdmResult pgf_adm(const PsiTable& psi, double alpha, double u, double t, int k_max) {
  FractionalOrder order(alpha);
  if (t < 0.0) throw std::domain_error("pgf needs t >= 0");
  if (std::abs(u) > 1.0) throw std::domain_error("pgf argument must satisfy |u| <= 1");
  if (k_max > psi.k_max()) throw std::out_of_range("k_max exceeds the psi table");
  const RateModel& m = psi.model();
  return weighted_series(psi, order.alpha, t, k_max, u, [&](int n) {
    return std::pow(u, n - 1) * (u - 1.0) * (m.lambda_at(n) * u - m.mu_at(n));
  });
}

AdmResult mean_adm(const PsiTable& psi, double alpha, double t, int k_max) {
  FractionalOrder order(alpha);
  if (t < 0.0) throw std::domain_error("mean needs t >= 0");
  if (k_max > psi.k_max()) throw std::out_of_range("k_max exceeds the psi table");
  const RateModel& m = psi.model();
  return weighted_series(psi, order.alpha, t, k_max, 1.0,
                         [&](int n) { return m.lambda_at(n) - m.mu_at(n); });
}

AdmResult factorial_moment_adm(const PsiTable& psi, double alpha, int r, double t, int k_max) {
  FractionalOrder order(alpha);
  if (r < 2) throw std::domain_error("factorial moments are defined here for r >= 2");
  if (t < 0.0) throw std::domain_error("factorial moment needs t >= 0");
  if (k_max > psi.k_max()) throw std::out_of_range("k_max exceeds the psi table");
  const RateModel& m = psi.model();
  return weighted_series(psi, order.alpha, t, k_max, 0.0,
                         [&](int n) { return pgf_derivative_weight(m, n, r); });
}

AdmResult pgf_adm(const RateModel& model, double alpha, double u, double t, int k_max) {
  return pgf_adm(PsiTable(model, k_max), alpha, u, t, k_max);
}

AdmResult mean_adm(const RateModel& model, double alpha, double t, int k_max) {
  return mean_adm(PsiTable(model, k_max), alpha, t, k_max);
}

AdmResult factorial_moment_adm(const RateModel& model, double alpha, int r, double t,
                               int k_max) {
  return factorial_moment_adm(PsiTable(model, k_max), alpha, r, t, k_max);
}

}  // namespace fbdp
