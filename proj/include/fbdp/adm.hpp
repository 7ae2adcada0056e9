#ifndef FBDP_ADM_HPP
#define FBDP_ADM_HPP

#include <iosfwd>
#include <vector>

#include "fbdp/rates.hpp"

namespace fbdp {

/// Triangular table of the decomposition coefficients psi_{n,k}, 0 <= k <= k_max,
/// 0 <= n <= k+1. Anchors psi_{0,0} = 0, psi_{1,0} = 1, psi_{0,1} = mu_1; interior
/// column step psi_{n,k+1} = Lambda_n psi_{n,k} + lambda_{n-1} psi_{n-1,k}
/// + mu_{n+1} psi_{n+1,k}; the n = k+1 diagonal carries lambda_1...lambda_{n-1}.
/// Entries with n > k+1 are identically zero. Values depend on the rates only,
/// never on the fractional order. Immutable once built.
class PsiTable {
 public:
  PsiTable(const RateModel& model, int k_max);

  int k_max() const { return static_cast<int>(cols_.size()) - 1; }
  const RateModel& model() const { return model_; }

  /// psi_{n,k}; zero in the vanishing region, throws when k exceeds the table.
  double at(int n, int k) const;

  /// CSV export with header "n,k,psi" over the stored triangle.
  void write_csv(std::ostream& out) const;

 private:
  RateModel model_;
  std::vector<std::vector<double>> cols_;  // cols_[k][n], n = 0..k+1
};

/// Truncation bookkeeping for the decomposition series. divergence_flag is set
/// when term magnitudes grow for 5 consecutive orders past k = n + 2 (the
/// series is a small-t object; growth means the truncation stopped carrying
/// information and the value reverts to the best partial sum).
struct SeriesDiagnostics {
  int terms_used = 0;
  double last_term_magnitude = 0.0;
  bool divergence_flag = false;
  std::vector<double> partial_sums;  // filled only when requested
};

struct AdmResult {
  double value = 0.0;
  SeriesDiagnostics diag;
};

/// Series component p_k(n, t) including the t^{k a} / Gamma(k a + 1) factor;
/// exactly zero when n - k >= 2 or n = k = 0.
double series_component(const PsiTable& psi, int n, int k, double alpha, double t);

/// State probability by truncated decomposition series. Stops once three
/// consecutive terms fall below tol * |partial sum| or k_max is exhausted.
AdmResult pmf_adm(const PsiTable& psi, double alpha, int n, double t, int k_max,
                  double tol = 1e-14, bool keep_partials = false);
AdmResult pmf_adm(const RateModel& model, double alpha, int n, double t, int k_max,
                  double tol = 1e-14);

/// |1 - sum_{n <= n_max} pmf(n, t)|: distance from the regularity condition at
/// the given truncation.
AdmResult regularity_defect(const RateModel& model, double alpha, double t, int n_max,
                            int k_max);

/// Probability generating function at u in [-1, 1] by the double series.
AdmResult pgf_adm(const PsiTable& psi, double alpha, double u, double t, int k_max);
AdmResult pgf_adm(const RateModel& model, double alpha, double u, double t, int k_max);

/// Mean and r-th factorial moment from the term-wise u-derivatives of the pgf
/// series at u = 1.
AdmResult mean_adm(const PsiTable& psi, double alpha, double t, int k_max);
AdmResult mean_adm(const RateModel& model, double alpha, double t, int k_max);
AdmResult factorial_moment_adm(const PsiTable& psi, double alpha, int r, double t, int k_max);
AdmResult factorial_moment_adm(const RateModel& model, double alpha, int r, double t, int k_max);

}  // namespace fbdp

#endif  // FBDP_ADM_HPP
