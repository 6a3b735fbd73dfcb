#include "chvatal/numerics.hpp"

#include <algorithm>
#include <cstdlib>

namespace chvatal {
namespace {

constexpr int kGuardAttempts = 4;

// Taylor sum of e^t for |t| <= 1/16, working at `bits` significant bits.
CertifiedReal exp_small(const Rational& t, int bits) {
  CertifiedReal sum(Rational(1), bits);
  CertifiedReal term(Rational(1), bits);
  const Rational tiny = pow2(-(bits + 2));
  const long cap = 8L * bits + 64;
  for (long k = 1;; ++k) {
    term *= t / Rational(k);
    sum += term;
    const Rational bound = term.magnitude();
    if (bound < tiny) {
      // Tail after term k: |term| * (|t|/(k+1)) / (1 - |t|) <= |term|.
      return sum.widened(bound);
    }
    if (k > cap) throw PrecisionExhausted("exp series did not converge within the term cap");
  }
}

// atanh(z) for |z| <= 1/3.
CertifiedReal atanh_small(const Rational& z, int bits) {
  const Rational z2 = z * z;
  CertifiedReal power(z, bits);
  CertifiedReal sum(z, bits);
  const Rational tiny = pow2(-(bits + 2));
  const long cap = 8L * bits + 64;
  for (long k = 1;; ++k) {
    power *= z2;
    sum += power / Rational(2 * k + 1);
    const Rational bound = power.magnitude();
    if (bound < tiny) {
      // Tail: sum_{j>k} |z|^(2j+1)/(2j+1) <= |power| z^2 / (1 - z^2) <= |power| / 8.
      return sum.widened(bound);
    }
    if (k > cap) throw PrecisionExhausted("atanh series did not converge within the term cap");
  }
}

}  // namespace

CertifiedReal exp_enclosure(const Rational& x, int precision_bits) {
  if (precision_bits < 8) throw DomainError("exp_enclosure needs at least 8 bits");
  if (x.is_zero()) return CertifiedReal(Rational(1), precision_bits);

  // Reduce to |t| <= 1/16, then square s times.
  const long s = std::max(0L, floor_log2(x) + 5);
  const Rational t = ldexp(x, -s);
  const Rational target = pow2(-precision_bits);

  int extra = 32;
  for (int attempt = 0; attempt < kGuardAttempts; ++attempt, extra *= 4) {
    const int bits = precision_bits + static_cast<int>(s) + extra;
    CertifiedReal value = exp_small(t, bits);
    for (long i = 0; i < s; ++i) value *= value;
    const CertifiedReal out = value.with_precision(precision_bits + 8);
    const Rational low = out.lower();
    if (low.sign() > 0 && out.radius() <= target * low) {
      return CertifiedReal(out.midpoint(), out.radius(), precision_bits);
    }
  }
  throw PrecisionExhausted("exp_enclosure could not reach the requested radius");
}

CertifiedReal ln_ratio_enclosure(const Rational& a, const Rational& b, int precision_bits) {
  if (a.sign() <= 0 || b.sign() <= 0) throw DomainError("ln_ratio_enclosure requires a, b > 0");
  if (precision_bits < 8) throw DomainError("ln_ratio_enclosure needs at least 8 bits");
  const Rational q = a / b;
  if (q == Rational(1)) return CertifiedReal(Rational(0), precision_bits);

  // q = 2^e * c with c in (3/4, 3/2], so z = (c-1)/(c+1) lies in (-1/7, 1/5].
  long e = floor_log2(q);
  Rational c = ldexp(q, -e);
  if (c > Rational(3) / 2) {
    ++e;
    c = ldexp(c, -1);
  }
  const Rational z = (c - 1) / (c + 1);
  const Rational target = pow2(-precision_bits);
  const int exponent_bits = e == 0 ? 0 : static_cast<int>(floor_log2(Rational(std::labs(e)))) + 1;

  int extra = 32;
  for (int attempt = 0; attempt < kGuardAttempts; ++attempt, extra *= 4) {
    const int bits = precision_bits + exponent_bits + extra;
    CertifiedReal value = atanh_small(z, bits) * Rational(2);
    if (e != 0) {
      const CertifiedReal ln2 = atanh_small(Rational(1) / 3, bits) * Rational(2);
      value += ln2 * Rational(e);
    }
    const CertifiedReal out = value.with_precision(precision_bits + 8);
    if (out.radius() <= target) return CertifiedReal(out.midpoint(), out.radius(), precision_bits);
  }
  throw PrecisionExhausted("ln_ratio_enclosure could not reach the requested radius");
}

Sign decide_sign(const PrecisionFn& value_fn, int max_bits, int start_bits) {
  int bits = std::min(std::max(start_bits, 8), max_bits);
  while (true) {
    try {
      const Sign s = value_fn(bits).sign();
      if (s != Sign::undecided) return s;
    } catch (const PrecisionExhausted&) {
      // fall through to a higher precision
    }
    if (bits >= max_bits) return Sign::undecided;
    bits = std::min(bits * 2, max_bits);
  }
}

}  // namespace chvatal
