#include "chvatal/distributions.hpp"

#include <string>
#include <utility>

namespace chvatal {
namespace {

BigInt ipow(const BigInt& base, long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
  return out;
}

void divexact(BigInt& value, const BigInt& divisor) {
  mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), divisor.get_mpz_t());
}

void require_probability(const Rational& p, bool allow_zero) {
  const bool low_ok = allow_zero ? p.sign() >= 0 : p.sign() > 0;
  if (!low_ok || p > Rational(1)) {
    throw DomainError("probability " + p.str() + (allow_zero ? " outside [0,1]" : " outside (0,1]"));
  }
}

}  // namespace

BinomialParams::BinomialParams(long n_, Rational p_) : n(n_), p(std::move(p_)) {
  if (n < 1) throw DomainError("binomial n must be positive");
  require_probability(p, true);
}

PoissonParams::PoissonParams(Rational lambda_) : lambda(std::move(lambda_)) {
  if (lambda.sign() <= 0) throw DomainError("poisson lambda must be positive");
}

GeometricParams::GeometricParams(Rational p_) : p(std::move(p_)) { require_probability(p, false); }

PascalParams::PascalParams(long r_, Rational p_) : r(r_), p(std::move(p_)) {
  if (r < 1) throw DomainError("pascal r must be positive");
  require_probability(p, false);
}

Rational binomial_pmf(const BinomialParams& params, long k) {
  if (k < 0 || k > params.n) return Rational(0);
  const Rational q = Rational(1) - params.p;
  return Rational(binom_coeff(static_cast<unsigned long>(params.n), static_cast<unsigned long>(k))) *
         params.p.pow(k) * q.pow(params.n - k);
}

Fraction binomial_cdf_leq_fraction(const BinomialParams& params, long m) {
  const long n = params.n;
  const BigInt a = params.p.numerator();
  const BigInt b = params.p.denominator();
  BigInt denominator = ipow(b, n);
  if (m < 0) return {0, denominator};
  if (m >= n) return {denominator, denominator};
  const BigInt c = b - a;
  if (c == 0) return {0, denominator};  // p = 1: all mass at n > m

  // term_k = C(n,k) a^k c^(n-k); term_{k+1} = term_k * (n-k) a / ((k+1) c), exactly divisible.
  BigInt term = ipow(c, n);
  BigInt sum = term;
  for (long k = 0; k < m; ++k) {
    term *= a;
    term *= static_cast<unsigned long>(n - k);
    divexact(term, c);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(k + 1));
    sum += term;
  }
  return {sum, denominator};
}

Rational binomial_cdf_leq(const BinomialParams& params, long m) {
  return binomial_cdf_leq_fraction(params, m).reduced();
}

Rational binomial_tail_geq(const BinomialParams& params, long r) {
  return Rational(1) - binomial_cdf_leq(params, r - 1);
}

Rational poisson_partial_sum(const Rational& lambda, long m) {
  if (m < 0) throw DomainError("poisson partial sum needs m >= 0");
  const BigInt a = lambda.numerator();
  const BigInt b = lambda.denominator();
  // sum_k a^k/(b^k k!) = [sum_k c_k] / (b^m m!), with c_k = a^k b^(m-k) m!/k!
  // and c_k = c_{k-1} * a / (b k).
  BigInt factorial;
  mpz_fac_ui(factorial.get_mpz_t(), static_cast<unsigned long>(m));
  const BigInt denominator = ipow(b, m) * factorial;
  BigInt c = denominator;
  BigInt sum = c;
  for (long k = 1; k <= m; ++k) {
    c *= a;
    divexact(c, b);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    sum += c;
  }
  return Rational(sum, denominator);
}

CertifiedReal poisson_cdf_leq(const PoissonParams& params, long m, int precision_bits) {
  if (m < 0) return CertifiedReal(Rational(0), precision_bits);
  const Rational partial = poisson_partial_sum(params.lambda, m);
  const CertifiedReal value = exp_enclosure(-params.lambda, precision_bits + 4) * partial;
  return CertifiedReal(value.midpoint(), value.radius(), precision_bits);
}

Rational geometric_cdf_leq(const GeometricParams& params, long m) {
  if (m <= 0) return Rational(0);
  return Rational(1) - (Rational(1) - params.p).pow(m);
}

Rational pascal_pmf(const PascalParams& params, long j) {
  if (j < params.r) return Rational(0);
  const Rational q = Rational(1) - params.p;
  return Rational(binom_coeff(static_cast<unsigned long>(j - 1), static_cast<unsigned long>(params.r - 1))) *
         q.pow(j - params.r) * params.p.pow(params.r);
}

Rational pascal_cdf_leq(const PascalParams& params, long m) {
  const long r = params.r;
  if (m < r) return Rational(0);
  const BigInt a = params.p.numerator();
  const BigInt b = params.p.denominator();
  const BigInt c = b - a;
  // sum_{j=r}^{m} C(j-1,r-1) a^r c^(j-r) b^(m-j) / b^m, accumulated in Horner form.
  BigInt coeff = 1;  // C(j-1, r-1)
  BigInt c_power = 1;
  BigInt acc = 1;
  for (long j = r + 1; j <= m; ++j) {
    coeff *= static_cast<unsigned long>(j - 1);
    mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(j - r));
    c_power *= c;
    acc *= b;
    acc += coeff * c_power;
  }
  return Rational(BigInt(acc * ipow(a, r)), ipow(b, m));
}

}  // namespace chvatal
