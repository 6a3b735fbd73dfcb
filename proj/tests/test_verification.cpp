#include <algorithm>
#include <variant>

#include "chvatal/verification.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chvatal;

namespace {

Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

const Rational& exact_of(const RealValue& v) { return std::get<Rational>(v); }
const CertifiedReal& ball_of(const RealValue& v) { return std::get<CertifiedReal>(v); }

const RealValue& critical(const VerificationReport& r, const std::string& label) {
  for (const auto& c : r.critical_values) {
    if (c.label == label) return c.value;
  }
  FAIL("missing critical value " << label);
  return r.critical_values.front().value;
}

bool has_erratum(const VerificationReport& r) {
  return std::any_of(r.notes.begin(), r.notes.end(), [](const std::string& n) {
    return n.find("297/625") != std::string::npos && n.find("390625") != std::string::npos;
  });
}

bool same_value(const RealValue& a, const RealValue& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Rational>(a)) return exact_of(a) == exact_of(b);
  return ball_of(a).midpoint() == ball_of(b).midpoint() && ball_of(a).radius() == ball_of(b).radius();
}

// mpmath, 30 digits: |P(B(n,(k+1)/n) >= k+1) - P(X_{k+1} >= k+1)|
const char* const kGap[3][3] = {
    {"0.0192010010714423215955237701615", "0.00184709989821281666490774358894", "0.000184016400478276968717630941"},
    {"0.0301962113098380756819984849175", "0.00273413892783348502015396189565", "0.000270941598457866796340217907363"},
    {"0.0404072947268435153244105330255", "0.00341499814498815170503266239937", "0.000336595947618659725498625622938"},
};

}  // namespace

TEST_CASE("report bookkeeping") {
  VerificationReport r;
  CHECK(r.passed);
  r.fail({"n=1", "x < y", {{"x", Rational(2)}}});
  r.fail({"n=2", "later", {}});
  CHECK_FALSE(r.passed);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->input == "n=1");

  VerificationReport u;
  u.mark_undecided("sign at x=3");
  CHECK_FALSE(u.passed);
  CHECK(u.undecided);
  CHECK_FALSE(u.counterexample);
  CHECK(u.notes.size() == 1);
}

TEST_CASE("probe grids") {
  CHECK_THROWS_AS(ProbeGrid(Rational(3), Rational(3), Spacing::linear, 4), DomainError);
  CHECK_THROWS_AS(ProbeGrid(Rational(3), Rational(4), Spacing::linear, 1), DomainError);
  CHECK_THROWS_AS(ProbeGrid(Rational(0), Rational(4), Spacing::logarithmic, 4), DomainError);

  const auto lin = ProbeGrid(Rational(3), Rational(6), Spacing::linear, 4).points();
  CHECK(lin == std::vector<Rational>{3, 4, 5, 6});

  const auto log = default_h2_grid().points();
  CHECK(log.size() == 64);
  CHECK(log.front() == 3);
  CHECK(log.back() == 1000000);
  for (std::size_t i = 1; i < log.size(); ++i) CHECK(log[i - 1] < log[i]);
  // Geometric ratio (10^6/3)^(1/63) is about 1.224.
  CHECK(log[1] > q(36, 10));
  CHECK(log[1] < q(37, 10));
  CHECK(default_h3_grid().points().front() == 4);
}

TEST_CASE("identity samples are deterministic and in range") {
  const auto a = pascal_identity_samples(200, 7, 10, 100, 1000);
  const auto b = pascal_identity_samples(200, 7, 10, 100, 1000);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].r == b[i].r);
    CHECK(a[i].m == b[i].m);
    CHECK(a[i].p == b[i].p);
    CHECK(a[i].r >= 1);
    CHECK(a[i].r <= 10);
    CHECK(a[i].m >= a[i].r);
    CHECK(a[i].m <= 100);
    CHECK(a[i].p.sign() > 0);
    CHECK(a[i].p <= 1);
    CHECK(a[i].p.denominator() <= 1000);
  }
  const auto c = pascal_identity_samples(200, 8, 10, 100, 1000);
  CHECK_FALSE(std::equal(a.begin(), a.end(), c.begin(),
                         [](const PascalSample& x, const PascalSample& y) { return x.p == y.p && x.m == y.m; }));
}

TEST_CASE("verify_chvatal") {
  const auto two = verify_chvatal(2);
  CHECK(two.passed);
  CHECK(exact_of(critical(two, "n=2 argmin m")) == 1);
  CHECK(exact_of(critical(two, "n=2 q_min")) == q(3, 4));

  const auto three = verify_chvatal(3);
  CHECK(three.passed);
  CHECK(exact_of(critical(three, "n=3 argmin m")) == 2);
  // q_2 for n=3: 1 - (2/3)^3 = 19/27
  CHECK(exact_of(critical(three, "n=3 q_min")) == q(19, 27));

  const auto sixty = verify_chvatal(60, {192, 4096, 2});
  CHECK(sixty.passed);
  CHECK(exact_of(critical(sixty, "n=60 argmin m")) == 40);
  CHECK_THROWS_AS(verify_chvatal(1), DomainError);
}

TEST_CASE("verify_poisson_increasing") {
  const auto one = verify_poisson_increasing(1);
  CHECK(one.passed);
  CHECK(oracle::encloses_constant(ball_of(critical(one, "P(X_1 <= 0)")), oracle::kInvE));
  CHECK(oracle::encloses_constant(ball_of(critical(one, "P(X_2 <= 1)")), oracle::kThreeExpMinus2));

  const auto two = verify_poisson_increasing(2);
  CHECK(two.passed);
  CHECK(oracle::encloses_constant(ball_of(critical(two, "P(X_3 <= 2)")), oracle::kSeventeenHalvesExpMinus3));

  CHECK(verify_poisson_increasing(100, {192, 4096, 2}).passed);
  CHECK_THROWS_AS(verify_poisson_increasing(0), DomainError);
}

TEST_CASE("verify_poisson_clt") {
  const auto one = verify_poisson_clt({Rational(1)}, Rational(1));
  CHECK(one.passed);
  // |2/e - 1/2| = 0.2357...
  const auto& tail = ball_of(critical(one, "P(X_l <= l) at l=1"));
  CHECK(oracle::encloses_constant(tail, oracle::kTwoOverE));

  const auto hundred = verify_poisson_clt({Rational(100)}, Rational(1));
  CHECK(oracle::encloses_constant(ball_of(critical(hundred, "P(X_l <= l) at l=100")), oracle::kMeanTail100));

  const auto chain = verify_poisson_clt({Rational(1), Rational(10), Rational(100), Rational(10000)}, q(1, 100));
  CHECK(chain.passed);
  CHECK(oracle::encloses_constant(ball_of(critical(chain, "P(X_l <= l) at l=10000")), oracle::kMeanTail10000));

  // The gap at 10^4 is about 0.0027, so a tighter tolerance must fail.
  const auto tight = verify_poisson_clt({Rational(10000)}, q(1, 1000));
  CHECK_FALSE(tight.passed);
  REQUIRE(tight.counterexample);

  CHECK_THROWS_AS(verify_poisson_clt({Rational(2), Rational(1)}, q(1, 100)), DomainError);
  CHECK_THROWS_AS(verify_poisson_clt({}, q(1, 100)), DomainError);
}

TEST_CASE("verify_poisson_lambda_monotone") {
  const auto zero = verify_poisson_lambda_monotone(0, {{q(1, 2), Rational(1)}});
  CHECK(zero.passed);
  CHECK(oracle::encloses_constant(ball_of(critical(zero, "P(X_1/2 <= 0)")), oracle::kExpMinusHalf));
  CHECK(oracle::encloses_constant(ball_of(critical(zero, "P(X_1 <= 0)")), oracle::kInvE));

  const auto one = verify_poisson_lambda_monotone(1, {{Rational(1), Rational(2)}});
  CHECK(one.passed);
  CHECK(oracle::encloses_constant(ball_of(critical(one, "P(X_2 <= 1)")), oracle::kThreeExpMinus2));

  CHECK(verify_poisson_lambda_monotone(3, {{Rational(2), Rational(3)}}).passed);

  // Pairs must be ordered.
  CHECK_THROWS_AS(verify_poisson_lambda_monotone(1, {{Rational(2), Rational(1)}}), DomainError);
}

TEST_CASE("verify_geometric") {
  const auto one = verify_geometric(1);
  CHECK(one.passed);
  CHECK(exact_of(critical(one, "a_1")) == q(1, 2));

  const auto three = verify_geometric(3);
  CHECK(three.passed);
  CHECK(exact_of(critical(three, "a_2")) == q(5, 9));
  CHECK(exact_of(critical(three, "a_3")) == q(37, 64));

  CHECK(verify_geometric(2000, {192, 4096, 2}).passed);
  CHECK_THROWS_AS(verify_geometric(0), DomainError);
}

TEST_CASE("verify_pascal_identity") {
  const std::vector<PascalSample> samples{{1, q(1, 2), 2}, {2, q(2, 3), 3}, {3, Rational(1), 3}};
  const auto report = verify_pascal_identity(samples);
  CHECK(report.passed);
  CHECK(exact_of(critical(report, "r=1 p=1/2 m=2")) == q(3, 4));
  CHECK(exact_of(critical(report, "r=2 p=2/3 m=3")) == q(20, 27));
  CHECK(exact_of(critical(report, "r=3 p=1 m=3")) == 1);

  CHECK(verify_pascal_identity(pascal_identity_samples(300, 11, 10, 100, 1000), {192, 4096, 2}).passed);
  CHECK_THROWS_AS(verify_pascal_identity({{3, q(1, 2), 2}}), DomainError);
}

TEST_CASE("verify_pascal_conjecture") {
  const auto two = verify_pascal_conjecture(2, 3);
  CHECK(two.passed);
  CHECK(exact_of(critical(two, "a_2(2)")) == q(4, 9));
  CHECK(exact_of(critical(two, "a_2(3)")) == q(1, 2));
  CHECK_FALSE(has_erratum(two));

  const auto three = verify_pascal_conjecture(3, 4);
  CHECK(three.passed);
  CHECK(exact_of(critical(three, "a_3(3)")) == q(27, 64));
  CHECK(exact_of(critical(three, "a_3(4)")) == q(297, 625));
  CHECK(has_erratum(three));

  const auto geometric_side = verify_geometric(100);
  const auto one = verify_pascal_conjecture(1, 100);
  CHECK(one.passed);
  CHECK(same_value(critical(one, "a_1(1)"), critical(geometric_side, "a_1")));
  CHECK(same_value(critical(one, "a_1(2)"), critical(geometric_side, "a_2")));

  CHECK(verify_pascal_conjecture(5, 600, {192, 4096, 2}).passed);
  CHECK_THROWS_AS(verify_pascal_conjecture(3, 2), DomainError);
  CHECK_THROWS_AS(verify_pascal_conjecture(0, 2), DomainError);
}

TEST_CASE("verify_closed_forms") {
  const auto report = verify_closed_forms(200);
  CHECK(report.passed);
  CHECK(exact_of(critical(report, "a_2(2)")) == q(4, 9));
  CHECK(exact_of(critical(report, "b_2(3)")) == q(1, 2));
  CHECK(exact_of(critical(report, "a_2(3)")) == q(1, 2));
  CHECK(exact_of(critical(report, "a_3(3)")) == q(27, 64));
  CHECK(exact_of(critical(report, "a_3(4)")) == q(297, 625));
  CHECK(has_erratum(report));
  CHECK_THROWS_AS(verify_closed_forms(3), DomainError);
}

TEST_CASE("h2 and h3 enclosures") {
  CHECK(oracle::encloses_constant(h2(Rational(3), 192), oracle::kH2At3));
  CHECK(oracle::encloses_constant(h2(Rational(4), 192), oracle::kH2At4));
  CHECK(oracle::encloses_constant(h3(Rational(4), 192), oracle::kH3At4));
  CHECK(oracle::encloses_constant(h3(Rational(5), 192), oracle::kH3At5));

  // mpmath: h2(10^6) = -6.6667e-13, h3(100) = -7.9465e-5, h3(10^6) = -7.94e-13.
  const auto far2 = h2(Rational(1000000), 192);
  CHECK(far2.sign() == Sign::negative);
  CHECK(far2.magnitude() < q(6667, 10000) * oracle::ten_pow_neg(12));
  CHECK(far2.magnitude() > q(6666, 10000) * oracle::ten_pow_neg(12));
  const auto mid3 = h3(Rational(100), 192);
  CHECK(mid3.sign() == Sign::negative);
  CHECK(mid3.magnitude() > q(79464, 10000) * oracle::ten_pow_neg(5));
  CHECK(mid3.magnitude() < q(79466, 10000) * oracle::ten_pow_neg(5));

  CHECK_THROWS_AS(h2(Rational(1), 192), DomainError);
  CHECK_THROWS_AS(h3(Rational(2), 192), DomainError);
}

TEST_CASE("probe_h2 and probe_h3") {
  const auto pair2 = probe_h2(ProbeGrid(Rational(3), Rational(4), Spacing::linear, 2));
  CHECK(pair2.passed);
  CHECK(oracle::encloses_constant(ball_of(critical(pair2, "h2(3)")), oracle::kH2At3));

  const auto full2 = probe_h2(default_h2_grid());
  CHECK(full2.passed);
  CHECK_FALSE(full2.undecided);
  CHECK(ball_of(critical(full2, "h2(1000000)")).magnitude() < q(1, 100000));

  const auto pair3 = probe_h3(ProbeGrid(Rational(4), Rational(5), Spacing::linear, 2));
  CHECK(pair3.passed);
  CHECK(probe_h3(default_h3_grid()).passed);

  // Grids leaving the domain are rejected.
  CHECK_THROWS_AS(probe_h2(ProbeGrid(Rational(2), Rational(5), Spacing::linear, 3)), DomainError);
  CHECK_THROWS_AS(probe_h3(ProbeGrid(Rational(3), Rational(5), Spacing::linear, 3)), DomainError);

  CHECK(probe_h2(ProbeGrid(Rational(3), Rational(200), Spacing::linear, 3)).passed);
}

TEST_CASE("probe_positivity_polynomials") {
  CHECK(h2_derivative_polynomial(0) == 3);
  CHECK(h2_derivative_polynomial(q(1, 3)) == q(8, 3));
  CHECK(h3_derivative_polynomial(4) == 2074);
  const auto report = probe_positivity_polynomials(default_h2_grid(), default_h3_grid());
  CHECK(report.passed);
  CHECK(exact_of(critical(report, "quartic at 4")) == 2074);
  CHECK_THROWS_AS(
      probe_positivity_polynomials(ProbeGrid(Rational(2), Rational(5), Spacing::linear, 3), default_h3_grid()),
      DomainError);
}

TEST_CASE("probe_b_sequences") {
  const auto report = probe_b_sequences(1000);
  CHECK(report.passed);
  CHECK(exact_of(critical(report, "b_2(3)")) == q(1, 2));
  CHECK(exact_of(critical(report, "b_2(4)")) == q(297, 625));
  CHECK(exact_of(critical(report, "b_3(4)")) == q(328, 625));
  CHECK(exact_of(critical(report, "b_3(5)")) == q(1, 2));
  CHECK(has_erratum(report));
  CHECK_THROWS_AS(probe_b_sequences(4), DomainError);
}

TEST_CASE("probe_gk_monotone") {
  CHECK(probe_gk_monotone(2, 3, 8).passed);
  CHECK(probe_gk_monotone(2, 2, 8).passed);
  CHECK(probe_gk_monotone(3, 5, 16).passed);
  CHECK_THROWS_AS(probe_gk_monotone(2, 3, 1), DomainError);
}

TEST_CASE("verify_binomial_poisson_limit") {
  const std::vector<long> ns{10, 100, 1000};
  for (long k = 0; k <= 2; ++k) {
    const auto report = verify_binomial_poisson_limit(k, ns);
    CHECK(report.passed);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto& gap = ball_of(critical(report, "gap at n=" + std::to_string(ns[i])));
      const Rational expected = oracle::decimal_constant(kGap[k][i]);
      CHECK((gap.midpoint() - expected).abs() <= gap.radius() + oracle::ten_pow_neg(29));
    }
  }
  CHECK_FALSE(verify_binomial_poisson_limit(0, {1000, 10}).passed);
  CHECK_THROWS_AS(verify_binomial_poisson_limit(1, {2, 10}), DomainError);
}

TEST_CASE("reports are deterministic and stable under precision doubling") {
  const auto a = verify_poisson_increasing(10, {192, 4096, 1});
  const auto b = verify_poisson_increasing(10, {192, 4096, 2});
  REQUIRE(a.critical_values.size() == b.critical_values.size());
  for (std::size_t i = 0; i < a.critical_values.size(); ++i) {
    CHECK(same_value(a.critical_values[i].value, b.critical_values[i].value));
  }
  const auto doubled = verify_poisson_increasing(10, {384, 4096, 1});
  CHECK(doubled.passed);
  for (std::size_t i = 0; i < a.critical_values.size(); ++i) {
    CHECK(ball_of(a.critical_values[i].value).overlaps(ball_of(doubled.critical_values[i].value)));
  }
  CHECK(probe_h3(default_h3_grid(), {384, 4096, 1}).passed);
}
