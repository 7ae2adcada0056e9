#ifndef FBDP_SUBORDINATOR_HPP
#define FBDP_SUBORDINATOR_HPP

#include <stdexcept>

namespace fbdp {

/// Laplace-exponent family of a subordinator, with its regular-variation
/// indices declared explicitly (the asymptotic results are hypotheses on the
/// exponent, not something estimated from samples).
///   stable(a):   phi(eta) = eta^a,            index a at zero and at infinity
///   gamma(a,b):  phi(eta) = a log(1 + eta/b), index 1 at zero, 0 at infinity
class SubordinatorModel {
 public:
  enum class Family { Stable, Gamma };

  static SubordinatorModel stable(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
      throw std::domain_error("stable index must lie in (0,1)");
    }
    return SubordinatorModel(Family::Stable, alpha, 0.0);
  }
  static SubordinatorModel gamma(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
      throw std::domain_error("gamma subordinator needs positive shape and rate");
    }
    return SubordinatorModel(Family::Gamma, a, b);
  }

  Family family() const { return family_; }
  double stable_alpha() const { return p1_; }
  double gamma_shape() const { return p1_; }
  double gamma_rate() const { return p2_; }

  double laplace_exponent(double eta) const;
  double rv_index_at_zero() const { return family_ == Family::Stable ? p1_ : 1.0; }
  double rv_index_at_infinity() const { return family_ == Family::Stable ? p1_ : 0.0; }

 private:
  SubordinatorModel(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}
  Family family_;
  double p1_, p2_;
};

}  // namespace fbdp

#endif  // FBDP_SUBORDINATOR_HPP
