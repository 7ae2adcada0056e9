#include "fbdp/rates.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"

using fbdp::FractionalOrder;
using fbdp::RateModel;
using fbdp::RateTableError;

TEST_CASE("linear model rates") {
  const auto m = RateModel::linear(2.0, 1.0);
  CHECK(m.lambda_at(3) == 6.0);
  CHECK(m.lambda_at(0) == 0.0);  // no immigration
  CHECK(m.mu_at(0) == 0.0);
  CHECK(m.mu_at(4) == 4.0);
  CHECK(m.big_lambda(2) == 6.0);
  CHECK(m.theta(2) == 4.0 * 3.0);
  CHECK(m.big_lambda(0) == 0.0);
  CHECK(m.theta(0) == 0.0);
  // lambda_n / n constant across n >= 1
  for (std::size_t n = 1; n <= 20; ++n) {
    CHECK(m.lambda_at(n) / static_cast<double>(n) == doctest::Approx(2.0).epsilon(1e-15));
  }
  CHECK_FALSE(m.equal_rates());
  CHECK(RateModel::linear(1.5, 1.5).equal_rates());
}

TEST_CASE("equal model is linear with matched rates") {
  const auto m = RateModel::equal(0.7);
  CHECK(m.equal_rates());
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(m.lambda_at(n) == m.mu_at(n));
  }
  CHECK(m.lambda_at(3) == doctest::Approx(2.1));
}

TEST_CASE("table model lookups and extent") {
  const auto m = RateModel::table({0.0, 1.0, 4.0}, {0.0, 2.0, 3.0});
  CHECK(m.lambda_at(2) == 4.0);
  CHECK(m.mu_at(1) == 2.0);
  CHECK(m.max_state() == 2);
  CHECK_THROWS_AS(m.lambda_at(3), std::out_of_range);
  CHECK_THROWS_AS(m.theta(2), std::out_of_range);  // needs mu_3
  // theta definition check on the valid range
  CHECK(m.theta(1) == m.lambda_at(1) * m.mu_at(2));
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(RateModel::table({1.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(RateModel::table({0.0, -1.0}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(RateModel::table({0.0, 1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(RateModel::linear(0.0, 1.0), std::domain_error);
  // zero interior rates are allowed
  CHECK_NOTHROW(RateModel::table({0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}));
}

TEST_CASE("fractional order validation") {
  CHECK_NOTHROW(FractionalOrder(1.0));
  CHECK_NOTHROW(FractionalOrder(0.01));
  CHECK_THROWS_AS(FractionalOrder(0.0), std::domain_error);
  CHECK_THROWS_AS(FractionalOrder(1.0001), std::domain_error);
  CHECK_THROWS_AS(FractionalOrder(-0.5), std::domain_error);
}

TEST_CASE("csv round trip") {
  std::istringstream in("n,lambda,mu\n0,0,0\n1,1.5,2\n2,3,0.25\n");
  const auto m = RateModel::from_csv(in);
  CHECK(m.max_state() == 2);
  CHECK(m.lambda_at(1) == 1.5);
  CHECK(m.mu_at(2) == 0.25);
}

TEST_CASE("csv rejects malformed input with line numbers") {
  {
    std::istringstream in("x,y\n");
    CHECK_THROWS_AS(RateModel::from_csv(in), RateTableError);
  }
  {
    std::istringstream in("n,lambda,mu\n0,0,0\n2,1,1\n");
    try {
      RateModel::from_csv(in);
      FAIL("expected throw");
    } catch (const RateTableError& e) {
      CHECK(e.line_number == 3);  // out-of-order row index
    }
  }
  {
    std::istringstream in("n,lambda,mu\n0,0,0\n1,abc,1\n");
    try {
      RateModel::from_csv(in);
      FAIL("expected throw");
    } catch (const RateTableError& e) {
      CHECK(e.line_number == 3);
    }
  }
  {
    std::istringstream in("n,lambda,mu\n0,0,0\n1,1\n");
    CHECK_THROWS_AS(RateModel::from_csv(in), RateTableError);
  }
}
