#include "chvatal/numerics.hpp"

#include <algorithm>
#include <utility>

namespace chvatal {
namespace {

// Radii are kept to this many significant bits, rounded upward.
constexpr long kRadiusBits = 30;

Rational round_up_radius(const Rational& radius) {
  if (radius.is_zero()) return radius;
  const mpq_class& v = radius.raw();
  if (mpz_sizeinbase(v.get_num_mpz_t(), 2) + mpz_sizeinbase(v.get_den_mpz_t(), 2) <= 2 * kRadiusBits) {
    return radius;
  }
  const long shift = kRadiusBits - floor_log2(radius);
  return ldexp(Rational(ldexp(radius, shift).ceil()), -shift);
}

}  // namespace

CertifiedReal::CertifiedReal(Rational exact, int precision_bits)
    : midpoint_(std::move(exact)), radius_(0), precision_bits_(precision_bits) {
  if (precision_bits < 1) throw DomainError("precision_bits must be positive");
}

CertifiedReal::CertifiedReal(Rational midpoint, Rational radius, int precision_bits)
    : midpoint_(std::move(midpoint)), radius_(std::move(radius)), precision_bits_(precision_bits) {
  if (precision_bits < 1) throw DomainError("precision_bits must be positive");
  if (radius_.sign() < 0) throw DomainError("negative enclosure radius");
}

bool CertifiedReal::contains(const Rational& x) const {
  return (x - midpoint_).abs() <= radius_;
}

bool CertifiedReal::overlaps(const CertifiedReal& other) const {
  return (midpoint_ - other.midpoint_).abs() <= radius_ + other.radius_;
}

Sign CertifiedReal::sign() const {
  if (midpoint_.is_zero() && radius_.is_zero()) return Sign::zero;
  if (lower().sign() > 0) return Sign::positive;
  if (upper().sign() < 0) return Sign::negative;
  return Sign::undecided;
}

CertifiedReal CertifiedReal::abs() const {
  if (lower().sign() >= 0) return *this;
  if (upper().sign() <= 0) return -*this;
  // Straddles zero: [0, max(|lower|, |upper|)].
  const Rational hi = std::max(lower().abs(), upper());
  return CertifiedReal(hi / 2, hi / 2, precision_bits_);
}

CertifiedReal CertifiedReal::with_precision(int precision_bits) const {
  CertifiedReal out(midpoint_, radius_, precision_bits);
  out.round();
  return out;
}

CertifiedReal CertifiedReal::widened(const Rational& extra) const {
  CertifiedReal out(midpoint_, round_up_radius(radius_ + extra.abs()), precision_bits_);
  return out;
}

void CertifiedReal::round() {
  if (!midpoint_.is_zero()) {
    const mpq_class& v = midpoint_.raw();
    const bool dyadic = mpz_scan1(v.get_den_mpz_t(), 0) + 1 == mpz_sizeinbase(v.get_den_mpz_t(), 2);
    const auto num_bits = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2));
    if (!dyadic || num_bits > precision_bits_ + 1) {
      // Scale so the truncated integer carries precision_bits significant bits.
      const long shift = precision_bits_ - 1 - floor_log2(midpoint_);
      BigInt num = v.get_num();
      BigInt den = v.get_den();
      if (shift >= 0) {
        num <<= static_cast<mp_bitcnt_t>(shift);
      } else {
        den <<= static_cast<mp_bitcnt_t>(-shift);
      }
      BigInt q;
      BigInt r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (r != 0) {
        midpoint_ = ldexp(Rational(q), -shift);
        radius_ += pow2(-shift);
      }
    }
  }
  radius_ = round_up_radius(radius_);
}

CertifiedReal& CertifiedReal::operator+=(const CertifiedReal& rhs) {
  precision_bits_ = std::min(precision_bits_, rhs.precision_bits_);
  midpoint_ += rhs.midpoint_;
  radius_ += rhs.radius_;
  round();
  return *this;
}

CertifiedReal& CertifiedReal::operator-=(const CertifiedReal& rhs) {
  precision_bits_ = std::min(precision_bits_, rhs.precision_bits_);
  midpoint_ -= rhs.midpoint_;
  radius_ += rhs.radius_;
  round();
  return *this;
}

CertifiedReal& CertifiedReal::operator*=(const CertifiedReal& rhs) {
  precision_bits_ = std::min(precision_bits_, rhs.precision_bits_);
  radius_ = midpoint_.abs() * rhs.radius_ + rhs.midpoint_.abs() * radius_ + radius_ * rhs.radius_;
  midpoint_ *= rhs.midpoint_;
  round();
  return *this;
}

CertifiedReal& CertifiedReal::operator/=(const CertifiedReal& rhs) {
  precision_bits_ = std::min(precision_bits_, rhs.precision_bits_);
  const Rational denom_floor = rhs.midpoint_.abs() - rhs.radius_;
  if (denom_floor.sign() <= 0) throw DomainError("division by an enclosure containing zero");
  const Rational quotient = midpoint_ / rhs.midpoint_;
  // |x/y - m1/m2| <= (r1 + |m1/m2| r2) / (|m2| - r2)
  radius_ = (radius_ + quotient.abs() * rhs.radius_) / denom_floor;
  midpoint_ = quotient;
  round();
  return *this;
}

CertifiedReal& CertifiedReal::operator*=(const Rational& rhs) {
  radius_ *= rhs.abs();
  midpoint_ *= rhs;
  round();
  return *this;
}

CertifiedReal& CertifiedReal::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  radius_ /= rhs.abs();
  midpoint_ /= rhs;
  round();
  return *this;
}

CertifiedReal& CertifiedReal::operator+=(const Rational& rhs) {
  midpoint_ += rhs;
  round();
  return *this;
}

CertifiedReal& CertifiedReal::operator-=(const Rational& rhs) {
  midpoint_ -= rhs;
  round();
  return *this;
}

CertifiedReal CertifiedReal::operator-() const {
  CertifiedReal out(*this);
  out.midpoint_ = -midpoint_;
  return out;
}

std::string CertifiedReal::str(int digits) const {
  return midpoint_.decimal(digits) + " ± " + radius_.scientific_upper(3);
}

}  // namespace chvatal
