#pragma once

#include "chvatal/numerics.hpp"

namespace chvatal {

/// B(n, p). p = 0 and p = 1 are allowed (point masses).
struct BinomialParams {
  BinomialParams(long n, Rational p);
  long n;
  Rational p;
};

struct PoissonParams {
  explicit PoissonParams(Rational lambda);
  Rational lambda;
};

/// Number of trials up to and including the first success; support {1, 2, ...}.
struct GeometricParams {
  explicit GeometricParams(Rational p);
  Rational p;
};

/// Number of trials up to and including the r-th success; support {r, r+1, ...}.
struct PascalParams {
  PascalParams(long r, Rational p);
  long r;
  Rational p;
};

/// An unreduced fraction; used by sweeps that compare values by cross-multiplication
/// and never need the canonical form.
struct Fraction {
  BigInt numerator;
  BigInt denominator;

  Rational reduced() const { return Rational(numerator, denominator); }
};

Rational binomial_pmf(const BinomialParams& params, long k);

/// P(B(n, p) <= m); 0 for m < 0 and 1 for m >= n.
Rational binomial_cdf_leq(const BinomialParams& params, long m);

/// Same value as binomial_cdf_leq over the common denominator b^n, where p = a/b.
Fraction binomial_cdf_leq_fraction(const BinomialParams& params, long m);

/// P(B(n, p) >= r) = 1 - P(B(n, p) <= r - 1).
Rational binomial_tail_geq(const BinomialParams& params, long r);

/// sum_{k=0}^{m} lambda^k / k!, exact.
Rational poisson_partial_sum(const Rational& lambda, long m);

/// Enclosure of P(X_lambda <= m) = poisson_partial_sum(lambda, m) * e^-lambda.
CertifiedReal poisson_cdf_leq(const PoissonParams& params, long m, int precision_bits);

/// 1 - (1-p)^m for m >= 0; 0 below the support.
Rational geometric_cdf_leq(const GeometricParams& params, long m);

Rational pascal_pmf(const PascalParams& params, long j);

/// sum_{j=r}^{m} pascal_pmf(j); 0 when m < r.
Rational pascal_cdf_leq(const PascalParams& params, long m);

}  // namespace chvatal
