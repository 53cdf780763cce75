#include <catch2/catch_amalgamated.hpp>

#include "psicalc/scalar/binomial.hpp"
#include "psicalc/scalar/scalars.hpp"
#include "support/random.hpp"

using namespace psicalc;
using testing_support::Gen;

namespace {

// Falling factorial over j! in plain machine integers, for |n|, j <= 12.
long long small_binom(long long n, long long j) {
  long long num = 1, den = 1;
  for (long long i = 0; i < j; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

}  // namespace

TEST_CASE("rationals are kept in lowest terms with a positive denominator") {
  CHECK(Rational(2, 4).to_string() == "1/2");
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(0, -5).to_string() == "0");
  CHECK(Rational(6, 3).is_integer());
  CHECK(Rational(-4, 6).denominator() == 3);
  CHECK(Rational::parse(" -10 / 4 ") == Rational(-5, 2));
}

TEST_CASE("rational division by zero is reported") {
  CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
  CHECK_THROWS_AS(Rational(0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Rational(3) / Rational(0), DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("1/0"), DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("1/x"), ContractViolation);
  CHECK_THROWS_AS(Rational::parse(""), ContractViolation);
}

TEST_CASE("rational text round-trips") {
  Gen g(11);
  for (int i = 0; i < 300; ++i) {
    const Rational r = g.rational(50) / g.nonzero_rational(50);
    CHECK(Rational::parse(r.to_string()) == r);
  }
}

TEST_CASE("binomial coefficient examples") {
  CHECK(binom(4, 2) == Rational(6));
  CHECK(binom(-5, 0) == Rational(1));
  CHECK(binom(0, 0) == Rational(1));
  CHECK(binom(3, 5) == Rational(0));
  CHECK(binom(-1, 2) == Rational(small_binom(-1, 2)));
  CHECK(binom(-2, 3) == Rational(small_binom(-2, 3)));
  CHECK(small_binom(-1, 2) == 1);
  CHECK(small_binom(-2, 3) == -4);
  CHECK_THROWS_AS(binom(4, -1), ContractViolation);
}

TEST_CASE("binomial agrees with the machine-integer falling factorial") {
  for (Order n = -12; n <= 12; ++n)
    for (Order j = 0; j <= 12; ++j) {
      const Rational b = binom(n, j);
      REQUIRE(b.is_integer());
      CHECK(b == Rational(small_binom(n, j)));
    }
}

TEST_CASE("Pascal recurrence for all integer n") {
  for (Order n = -12; n <= 12; ++n)
    for (Order j = 1; j <= 12; ++j) CHECK(binom(n, j) == binom(n - 1, j) + binom(n - 1, j - 1));
}

TEST_CASE("sign-reflected binomial identity") {
  for (Order n = -12; n <= 12; ++n)
    for (Order j = 0; j <= 12; ++j) {
      const Rational lhs = (j % 2 == 0 ? Rational(1) : Rational(-1)) * binom(-n + j - 1, j);
      CHECK(lhs == binom(n, j));
    }
}

TEST_CASE("Gaussian rationals") {
  const GaussianRational a(Rational(1, 2), Rational(1));
  const GaussianRational b(Rational(1, 2), Rational(-1));
  CHECK(a * b == GaussianRational(Rational(5, 4)));
  CHECK(a.conj() == b);
  CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
  CHECK(a * a.inverse() == GaussianRational(1));
  CHECK_THROWS_AS(GaussianRational().inverse(), DivisionByZero);
}

TEST_CASE("Gaussian text forms") {
  CHECK(GaussianRational(Rational(1, 2), Rational(3, 4)).to_string() == "1/2+3/4*i");
  CHECK(GaussianRational::i().to_string() == "i");
  CHECK((-GaussianRational::i()).to_string() == "-i");
  CHECK(GaussianRational(Rational(0), Rational(2)).to_string() == "2*i");
  CHECK(GaussianRational(Rational(1, 2), Rational(-1)).to_string() == "1/2-i");
  CHECK(GaussianRational(Rational(-3)).to_string() == "-3");
  CHECK(GaussianRational().to_string() == "0");
  CHECK(GaussianRational::parse("-i") == -GaussianRational::i());
  CHECK(GaussianRational::parse("2*i+1") == GaussianRational(Rational(1), Rational(2)));
  Gen g(5);
  for (int i = 0; i < 300; ++i) {
    const GaussianRational z = g.gaussian();
    CHECK(GaussianRational::parse(z.to_string()) == z);
  }
}

TEST_CASE("Gaussian field axioms on random triples") {
  Gen g(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = g.gaussian(), b = g.gaussian(), c = g.gaussian();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == GaussianRational());
    if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
  }
}

TEST_CASE("cyclotomic reduction") {
  const Cyclotomic q2 = Cyclotomic::root_power(2, 1);
  CHECK(q2 == Cyclotomic(2, -1));
  CHECK(q2 * q2 == Cyclotomic(2, 1));
  // Phi_4 = q^2 + 1: (1 + q)(1 - q) = 1 - q^2 = 2
  const Cyclotomic q4 = Cyclotomic::root_power(4, 1);
  const Cyclotomic one4(4, 1);
  CHECK((one4 + q4) * (one4 - q4) == Cyclotomic(4, 2));
  for (unsigned n = 1; n <= 12; ++n) {
    CHECK(Cyclotomic::root_power(n, static_cast<std::int64_t>(n)) == Cyclotomic(n, 1));
    CHECK(Cyclotomic::root_power(n, -1) * Cyclotomic::root_power(n, 1) == Cyclotomic(n, 1));
    CHECK(Cyclotomic(n).coeffs().size() == Cyclotomic(n).degree());
  }
  CHECK(Cyclotomic(12).degree() == 4);
  CHECK(Cyclotomic(7).degree() == 6);
}

TEST_CASE("cyclotomic canonical forms are unique") {
  Gen g(3);
  for (unsigned n : {3u, 5u, 8u, 12u}) {
    for (int t = 0; t < 50; ++t) {
      const auto a = g.integer(-30, 30), b = g.integer(-30, 30);
      CHECK(Cyclotomic::root_power(n, a) * Cyclotomic::root_power(n, b) == Cyclotomic::root_power(n, a + b));
      CHECK(Cyclotomic::root_power(n, a) == Cyclotomic::root_power(n, a + static_cast<std::int64_t>(n)));
    }
    // sum of all N-th roots of unity vanishes for N > 1
    Cyclotomic sum(n);
    for (unsigned k = 0; k < n; ++k) sum = sum + Cyclotomic::root_power(n, k);
    CHECK(sum.is_zero());
  }
}

TEST_CASE("cyclotomic field axioms and inverses") {
  Gen g(13);
  for (unsigned n : {1u, 2u, 4u, 5u, 7u, 12u}) {
    for (int t = 0; t < 40; ++t) {
      const auto a = g.cyclotomic(n), b = g.cyclotomic(n), c = g.cyclotomic(n);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(n, 1));
      CHECK(Cyclotomic::parse(n, a.to_string()) == a);
    }
  }
  CHECK_THROWS_AS(Cyclotomic(5).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Cyclotomic(3, 1) + Cyclotomic(4, 1), ContextMismatch);
}

TEST_CASE("cyclotomic text form") {
  const Cyclotomic c = Cyclotomic::parse(5, "1/2*q^3-2");
  CHECK(c.to_string() == "1/2*q^3-2");
  CHECK(Cyclotomic::parse(2, "q").to_string() == "-1");
  CHECK(Cyclotomic::parse(4, "q^2").to_string() == "-1");
  CHECK(Cyclotomic::parse(4, "3*q - q").to_string() == "2*q");
  CHECK(Cyclotomic(6).to_string() == "0");
}

TEST_CASE("exact scalar types satisfy the field concept") {
  STATIC_REQUIRE(ExactField<Rational>);
  STATIC_REQUIRE(ExactField<GaussianRational>);
  STATIC_REQUIRE(ExactField<Cyclotomic>);
}
