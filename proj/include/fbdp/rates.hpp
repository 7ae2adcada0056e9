#ifndef FBDP_RATES_HPP
#define FBDP_RATES_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbdp {

/// Caputo order of the time derivative; validated to (0, 1]. alpha = 1 is the
/// classical (first-derivative) reduction.
struct FractionalOrder {
  double alpha;
  explicit FractionalOrder(double a);
};

/// Thrown by the CSV rate-table reader; carries the offending 1-based line.
class RateTableError : public std::runtime_error {
 public:
  RateTableError(const std::string& what, int line)
      : std::runtime_error(what), line_number(line) {}
  int line_number;
};

/// State-dependent birth/death rates lambda_n, mu_n with lambda_0 = mu_0 = 0
/// (no immigration). Three shapes: linear (n*lambda, n*mu), equal (linear with
/// lambda = mu), and explicit tables with a hard extent n_max. Immutable after
/// construction.
class RateModel {
 public:
  enum class Kind { Linear, Equal, Table };

  static RateModel linear(double lambda, double mu);
  static RateModel equal(double lambda);
  static RateModel table(std::vector<double> lambdas, std::vector<double> mus);

  /// Reads a table model from CSV with header "n,lambda,mu" and rows for
  /// n = 0..n_max. Malformed rows are rejected with their line number.
  static RateModel from_csv(std::istream& in);
  static RateModel from_csv_file(const std::string& path);

  double lambda_at(std::size_t n) const;  // birth rate; 0 at n = 0
  double mu_at(std::size_t n) const;      // death rate; 0 at n = 0
  double big_lambda(std::size_t n) const { return lambda_at(n) + mu_at(n); }
  double theta(std::size_t n) const { return lambda_at(n) * mu_at(n + 1); }

  Kind kind() const { return kind_; }
  bool bounded() const { return kind_ == Kind::Table; }
  /// Largest admissible state for table models; tables fail loudly past it
  /// rather than extrapolating.
  std::size_t max_state() const;

  /// True when lambda_n == mu_n for every representable n.
  bool equal_rates() const;

  /// Per-unit-state coefficients for linear/equal models.
  double linear_lambda() const;
  double linear_mu() const;

 private:
  RateModel(Kind kind, double lambda, double mu, std::vector<double> lambdas,
            std::vector<double> mus);

  Kind kind_;
  double lambda_ = 0.0;  // linear coefficient
  double mu_ = 0.0;
  std::vector<double> lambdas_;  // table payload, index 0..n_max
  std::vector<double> mus_;
};

}  // namespace fbdp

#endif  // FBDP_RATES_HPP
