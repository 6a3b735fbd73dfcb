#include <random>

#include "chvatal/numerics.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chvatal;

TEST_CASE("binom_coeff matches Pascal's triangle") {
  CHECK(binom_coeff(0, 0) == 1);
  CHECK(binom_coeff(2, 1) == 2);
  CHECK(binom_coeff(5, 2) == 10);
  CHECK(binom_coeff(3, 5) == 0);
  const auto triangle = oracle::pascal_triangle(40);
  for (unsigned long n = 0; n <= 40; ++n) {
    for (unsigned long k = 0; k <= n; ++k) CHECK(binom_coeff(n, k) == triangle[n][k]);
  }
}

TEST_CASE("Rational is canonical and exact") {
  const Rational a(BigInt(6), BigInt(-4));
  CHECK(a.numerator() == -3);
  CHECK(a.denominator() == 2);
  CHECK(a.str() == "-3/2");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DomainError);
  CHECK(Rational(7).floor() == 7);
  CHECK(Rational(BigInt(-7), BigInt(2)).floor() == -4);
  CHECK(Rational(BigInt(-7), BigInt(2)).ceil() == -3);
  CHECK(Rational(BigInt(2), BigInt(3)).pow(3) == Rational(BigInt(8), BigInt(27)));
  CHECK(Rational(BigInt(2), BigInt(3)).pow(-2) == Rational(BigInt(9), BigInt(4)));
  CHECK_THROWS_AS(Rational(0).reciprocal(), DomainError);
}

TEST_CASE("Rational arithmetic round-trips on random operands") {
  std::mt19937_64 rng(20240521);
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<long> den(1, 100000);
  for (int i = 0; i < 500; ++i) {
    const Rational a(BigInt(num(rng)), BigInt(den(rng)));
    const Rational b(BigInt(num(rng)), BigInt(den(rng)));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    CHECK(Rational::parse(a.str()) == a);
  }
}

TEST_CASE("Rational parsing of fractions and decimals") {
  CHECK(Rational::parse("0.6") == Rational(BigInt(3), BigInt(5)));
  CHECK(Rational::parse("-1.25") == Rational(BigInt(-5), BigInt(4)));
  CHECK(Rational::parse("2/3") == Rational(BigInt(2), BigInt(3)));
  CHECK(Rational::parse("1e6") == Rational(1000000));
  CHECK(Rational::parse("1.5e-3") == Rational(BigInt(3), BigInt(2000)));
  CHECK(Rational::parse(" 7 ") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("abc"), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), DomainError);
  CHECK_THROWS_AS(Rational::parse("0.5.1"), DomainError);
  CHECK_THROWS_AS(Rational::parse(""), DomainError);
}

TEST_CASE("decimal rendering") {
  CHECK(Rational(BigInt(3), BigInt(4)).decimal(12) == "0.750000000000");
  CHECK(Rational(BigInt(20), BigInt(27)).decimal(12) == "0.740740740741");
  CHECK(Rational(BigInt(-1), BigInt(3)).decimal(3) == "-0.333");
  CHECK(Rational(BigInt(-1), BigInt(3000)).decimal(2) == "0.00");
  CHECK(Rational(BigInt(5), BigInt(2)).decimal(0) == "3");
  CHECK(Rational(BigInt(1), BigInt(3000)).scientific_upper(3) == "3.34e-04");
  CHECK(Rational(1000).scientific_upper(2) == "1.0e+03");
  CHECK(Rational(BigInt(999), BigInt(1)).scientific_upper(2) == "1.0e+03");
}

TEST_CASE("floor_log2 and ldexp") {
  CHECK(floor_log2(Rational(1)) == 0);
  CHECK(floor_log2(Rational(8)) == 3);
  CHECK(floor_log2(Rational(7)) == 2);
  CHECK(floor_log2(Rational(BigInt(1), BigInt(3))) == -2);
  CHECK(floor_log2(Rational(BigInt(-1), BigInt(4))) == -2);
  CHECK(ldexp(Rational(BigInt(3), BigInt(5)), 4) == Rational(BigInt(48), BigInt(5)));
  CHECK(ldexp(Rational(BigInt(3), BigInt(5)), -2) == Rational(BigInt(3), BigInt(20)));
}

TEST_CASE("memory guard rejects oversized numerators") {
  const std::size_t saved = memory_guard_bits();
  set_memory_guard_bits(64);
  CHECK_THROWS_AS(Rational(BigInt(1) << 100), MemoryGuardError);
  CHECK_THROWS_AS(Rational(1L << 40).pow(2), MemoryGuardError);
  set_memory_guard_bits(saved);
  CHECK_NOTHROW(Rational(BigInt(1) << 100));
}

TEST_CASE("CertifiedReal ball arithmetic contains exact results") {
  const int bits = 64;
  const Rational third(BigInt(1), BigInt(3));
  CertifiedReal x(third, bits);
  CertifiedReal y = x * x * x;  // rounding folds into the radius
  CHECK(y.contains(Rational(BigInt(1), BigInt(27))));
  CHECK(y.precision_bits() == bits);
  CertifiedReal z = (x + Rational(1)) / CertifiedReal(Rational(7), bits);
  CHECK(z.contains(Rational(BigInt(4), BigInt(21))));
  CHECK((-x).contains(-third));
  CHECK((x - x).contains(Rational(0)));
  CHECK_THROWS_AS(x / CertifiedReal(Rational(0), Rational(1), bits), DomainError);
  CHECK_THROWS_AS(CertifiedReal(Rational(0), Rational(-1), bits), DomainError);

  const CertifiedReal straddle(Rational(BigInt(-1), BigInt(4)), Rational(1), bits);
  const CertifiedReal a = straddle.abs();
  CHECK(a.lower() == Rational(0));
  CHECK(a.upper() == Rational(BigInt(5), BigInt(4)));
}

TEST_CASE("exp_enclosure examples") {
  SUBCASE("x = 0 is exactly 1") {
    const auto e0 = exp_enclosure(Rational(0), 192);
    CHECK(e0.contains(Rational(1)));
    CHECK(e0.radius() <= pow2(-192));
  }
  SUBCASE("x = -1 against the alternating series") {
    const Rational x = -1;
    const auto e1 = exp_enclosure(x, 192);
    const Rational s = oracle::exp_partial(x, 80);
    const Rational tail = oracle::exp_alternating_bound(x, 80);
    CHECK((e1.midpoint() - s).abs() <= e1.radius() + tail);
    CHECK(e1.radius() <= pow2(-192));
    CHECK(oracle::encloses_constant(e1, oracle::kInvE));
  }
  SUBCASE("x = -2 against the alternating series") {
    const Rational x = -2;
    const auto e2 = exp_enclosure(x, 192);
    const Rational s = oracle::exp_partial(x, 100);
    const Rational tail = oracle::exp_alternating_bound(x, 100);
    CHECK((e2.midpoint() - s).abs() <= e2.radius() + tail);
    CHECK(oracle::encloses_constant(e2, oracle::kExpMinus2));
  }
  SUBCASE("relative radius at large |x|") {
    const auto big = exp_enclosure(Rational(-10000), 192);
    CHECK(big.lower().sign() > 0);
    CHECK(big.radius() <= pow2(-192) * big.lower());
    const auto pos = exp_enclosure(Rational(50), 128);
    CHECK(pos.radius() <= pow2(-128) * pos.upper());
  }
  CHECK_THROWS_AS(exp_enclosure(Rational(1), 4), DomainError);
}

TEST_CASE("exp(x) * exp(-x) contains 1 on a grid") {
  for (long num = -40; num <= 40; num += 3) {
    const Rational x(BigInt(num), BigInt(7));
    const auto product = exp_enclosure(x, 128) * exp_enclosure(-x, 128);
    CHECK(product.contains(Rational(1)));
  }
}

TEST_CASE("radius shrinks when precision doubles") {
  for (const Rational x : {Rational(-3), Rational(BigInt(5), BigInt(11)), Rational(-250)}) {
    Rational previous = exp_enclosure(x, 64).radius();
    for (int bits = 128; bits <= 1024; bits *= 2) {
      const Rational current = exp_enclosure(x, bits).radius();
      CHECK(current <= previous);
      previous = current;
    }
  }
  Rational previous = ln_ratio_enclosure(Rational(7), Rational(3), 64).radius();
  for (int bits = 128; bits <= 1024; bits *= 2) {
    const Rational current = ln_ratio_enclosure(Rational(7), Rational(3), bits).radius();
    CHECK(current <= previous);
    previous = current;
  }
}

TEST_CASE("ln_ratio_enclosure examples") {
  const auto zero = ln_ratio_enclosure(Rational(5), Rational(5), 192);
  CHECK(zero.contains(Rational(0)));
  CHECK(zero.radius() <= pow2(-192));

  const auto half = ln_ratio_enclosure(Rational(1), Rational(2), 192);
  CHECK(half.radius() <= pow2(-192));
  const Rational series = -oracle::ln2_partial(200);
  CHECK((half.midpoint() - series).abs() <= half.radius() + oracle::ln2_tail(200));
  CHECK(oracle::encloses_constant(half, oracle::kLnHalf));

  const auto also_half = ln_ratio_enclosure(Rational(2), Rational(4), 192);
  CHECK(also_half.overlaps(half));

  // ln(a/b) + ln(b/a) contains 0 across magnitudes.
  for (const auto& [a, b] : std::vector<std::pair<long, long>>{{1, 1000000}, {999999, 1000001}, {3, 2}, {17, 5}}) {
    const auto sum = ln_ratio_enclosure(Rational(a), Rational(b), 256) + ln_ratio_enclosure(Rational(b), Rational(a), 256);
    CHECK(sum.contains(Rational(0)));
  }
  // exp(ln(q)) contains q.
  const auto ln = ln_ratio_enclosure(Rational(22), Rational(7), 256);
  const auto lo = exp_enclosure(ln.lower(), 256);
  const auto hi = exp_enclosure(ln.upper(), 256);
  CHECK(lo.lower() <= Rational(BigInt(22), BigInt(7)));
  CHECK(hi.upper() >= Rational(BigInt(22), BigInt(7)));

  CHECK_THROWS_AS(ln_ratio_enclosure(Rational(0), Rational(1), 64), DomainError);
  CHECK_THROWS_AS(ln_ratio_enclosure(Rational(1), Rational(-1), 64), DomainError);
}

TEST_CASE("decide_sign") {
  CHECK(decide_sign([](int bits) { return CertifiedReal(Rational(3), Rational(BigInt(1), BigInt(4)), bits); }) ==
        Sign::positive);
  CHECK(decide_sign([](int bits) { return CertifiedReal(Rational(0), bits); }) == Sign::zero);
  CHECK(decide_sign([](int bits) { return CertifiedReal(Rational(0), Rational(1), bits); }, 1024) ==
        Sign::undecided);

  // h2(3) = 3/8 + 1/4 + ln(1/2)
  const auto h2_at_3 = [](int bits) {
    return ln_ratio_enclosure(Rational(2), Rational(4), bits) + Rational(BigInt(5), BigInt(8));
  };
  CHECK(decide_sign(h2_at_3) == Sign::negative);
  CHECK(oracle::encloses_constant(h2_at_3(192), oracle::kH2At3));

  // A quantity whose sign needs more than the starting precision.
  int calls = 0;
  const auto tiny = [&calls](int bits) {
    ++calls;
    const Rational value = pow2(-300);
    return CertifiedReal(value, pow2(-bits), bits);
  };
  CHECK(decide_sign(tiny, 4096, 64) == Sign::positive);
  CHECK(calls > 1);
}

TEST_CASE("decide_sign never contradicts a wider enclosure") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  for (int i = 0; i < 50; ++i) {
    const Rational x(BigInt(num(rng)), BigInt(13));
    if (x.is_zero()) continue;
    const auto fn = [&x](int bits) { return exp_enclosure(x, bits) - Rational(1); };
    const Sign s = decide_sign(fn);
    const auto wide = fn(32);
    if (wide.sign() != Sign::undecided) CHECK(wide.sign() == s);
    CHECK(s == (x.sign() > 0 ? Sign::positive : Sign::negative));
  }
}
