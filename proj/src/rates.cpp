#include "fbdp/rates.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace fbdp {

FractionalOrder::FractionalOrder(double a) : alpha(a) {
  if (!(a > 0.0) || !(a <= 1.0)) {
    throw std::domain_error("fractional order must lie in (0, 1]");
  }
}

RateModel::RateModel(Kind kind, double lambda, double mu, std::vector<double> lambdas,
                     std::vector<double> mus)
    : kind_(kind), lambda_(lambda), mu_(mu), lambdas_(std::move(lambdas)), mus_(std::move(mus)) {}

RateModel RateModel::linear(double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw std::domain_error("linear rates must be positive and finite");
  }
  return RateModel(Kind::Linear, lambda, mu, {}, {});
}

RateModel RateModel::equal(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("equal-rate coefficient must be positive and finite");
  }
  return RateModel(Kind::Equal, lambda, lambda, {}, {});
}

RateModel RateModel::table(std::vector<double> lambdas, std::vector<double> mus) {
  if (lambdas.empty() || lambdas.size() != mus.size()) {
    throw std::invalid_argument("rate table needs equal-length nonempty lambda/mu sequences");
  }
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    if (!(lambdas[n] >= 0.0) || !(mus[n] >= 0.0) || !std::isfinite(lambdas[n]) ||
        !std::isfinite(mus[n])) {
      throw std::invalid_argument("rate table entries must be finite and nonnegative");
    }
  }
  // No immigration: the boundary rates at n = 0 vanish identically.
  if (lambdas[0] != 0.0 || mus[0] != 0.0) {
    throw std::invalid_argument("rate table must have lambda_0 = mu_0 = 0");
  }
  return RateModel(Kind::Table, 0.0, 0.0, std::move(lambdas), std::move(mus));
}

double RateModel::lambda_at(std::size_t n) const {
  if (n == 0) return 0.0;
  switch (kind_) {
    case Kind::Linear:
    case Kind::Equal:
      return static_cast<double>(n) * lambda_;
    case Kind::Table:
      if (n >= lambdas_.size()) {
        throw std::out_of_range("rate table accessed beyond n_max");
      }
      return lambdas_[n];
  }
  return 0.0;
}

double RateModel::mu_at(std::size_t n) const {
  if (n == 0) return 0.0;
  switch (kind_) {
    case Kind::Linear:
    case Kind::Equal:
      return static_cast<double>(n) * mu_;
    case Kind::Table:
      if (n >= mus_.size()) {
        throw std::out_of_range("rate table accessed beyond n_max");
      }
      return mus_[n];
  }
  return 0.0;
}

std::size_t RateModel::max_state() const {
  if (kind_ != Kind::Table) {
    throw std::logic_error("max_state is only defined for table models");
  }
  return lambdas_.size() - 1;
}

bool RateModel::equal_rates() const {
  if (kind_ == Kind::Equal) return true;
  if (kind_ == Kind::Linear) return lambda_ == mu_;
  for (std::size_t n = 0; n < lambdas_.size(); ++n) {
    if (lambdas_[n] != mus_[n]) return false;
  }
  return true;
}

double RateModel::linear_lambda() const {
  if (kind_ == Kind::Table) {
    throw std::logic_error("linear_lambda is undefined for table models");
  }
  return lambda_;
}

double RateModel::linear_mu() const {
  if (kind_ == Kind::Table) {
    throw std::logic_error("linear_mu is undefined for table models");
  }
  return mu_;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, int line) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw RateTableError("unparseable number '" + s + "' at line " + std::to_string(line), line);
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) {
    throw RateTableError("trailing junk in '" + s + "' at line " + std::to_string(line), line);
  }
  return v;
}

}  // namespace

RateModel RateModel::from_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) {
    throw RateTableError("empty rate table", 1);
  }
  ++lineno;
  {
    std::string hdr;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) hdr += static_cast<char>(std::tolower(c));
    }
    if (hdr != "n,lambda,mu") {
      throw RateTableError("expected header 'n,lambda,mu', got '" + line + "'", lineno);
    }
  }
  std::vector<double> lambdas, mus;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_row(line);
    if (cells.size() != 3) {
      throw RateTableError("expected 3 columns at line " + std::to_string(lineno), lineno);
    }
    const double n = parse_number(cells[0], lineno);
    if (n != static_cast<double>(lambdas.size())) {
      throw RateTableError("row index " + cells[0] + " out of order at line " +
                               std::to_string(lineno),
                           lineno);
    }
    lambdas.push_back(parse_number(cells[1], lineno));
    mus.push_back(parse_number(cells[2], lineno));
  }
  try {
    return table(std::move(lambdas), std::move(mus));
  } catch (const std::invalid_argument& e) {
    throw RateTableError(e.what(), lineno);
  }
}

RateModel RateModel::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open rate table '" + path + "'");
  }
  return from_csv(in);
}

}  // namespace fbdp
