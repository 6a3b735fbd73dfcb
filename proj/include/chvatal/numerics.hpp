#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace chvatal {

using BigInt = mpz_class;

inline constexpr int kDefaultPrecisionBits = 192;
inline constexpr int kMaxPrecisionBits = 4096;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enclosure cannot be tightened to the requested radius.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a single rational grows past the configured size limit.
class MemoryGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Largest numerator (in bits) a Rational may hold. Defaults to 10^8.
void set_memory_guard_bits(std::size_t bits);
std::size_t memory_guard_bits();

/// Exact rational in canonical form: positive denominator, gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() = default;
  template <typename Int>
    requires std::is_integral_v<Int>
  Rational(Int value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& integer);
  Rational(const BigInt& numerator, const BigInt& denominator);

  /// Accepts "a", "a/b", and decimal literals such as "-0.6" or "1.5e-3".
  /// Decimals are converted exactly; no binary floating point is involved.
  static Rational parse(std::string_view text);

  /// Skips the gcd reduction. Requires denominator > 0 and gcd(|numerator|, denominator) = 1.
  static Rational from_coprime(const BigInt& numerator, const BigInt& denominator);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  BigInt floor() const;
  BigInt ceil() const;
  Rational abs() const;
  Rational reciprocal() const;
  Rational pow(long exponent) const;

  /// "num/den", always with an explicit denominator.
  std::string str() const;
  /// Fixed-point rendering rounded half away from zero.
  std::string decimal(int digits) const;
  /// d.ddd...e±XX rendering with `significant` digits, rounded up in magnitude.
  std::string scientific_upper(int significant) const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Trusted {};
  Rational(mpq_class value, Trusted);
  void guard() const;

  mpq_class value_;
};

/// floor(log2 |q|) for q != 0.
long floor_log2(const Rational& q);
/// q * 2^shift, exact.
Rational ldexp(const Rational& q, long shift);
/// 2^shift as a Rational.
Rational pow2(long shift);

BigInt binom_coeff(unsigned long n, unsigned long k);

enum class Sign { negative, zero, positive, undecided };
std::string_view to_string(Sign s);

/// Ball enclosure: the represented real lies in [midpoint - radius, midpoint + radius].
///
/// Arithmetic rounds the midpoint to `precision_bits` significant bits and
/// folds the rounding error into the radius, so sizes stay bounded while
/// every result still contains the exact value.
class CertifiedReal {
 public:
  CertifiedReal(Rational exact, int precision_bits);
  CertifiedReal(Rational midpoint, Rational radius, int precision_bits);

  const Rational& midpoint() const { return midpoint_; }
  const Rational& radius() const { return radius_; }
  int precision_bits() const { return precision_bits_; }

  Rational lower() const { return midpoint_ - radius_; }
  Rational upper() const { return midpoint_ + radius_; }
  /// Upper bound on |x|.
  Rational magnitude() const { return midpoint_.abs() + radius_; }

  bool is_exact() const { return radius_.is_zero(); }
  bool contains(const Rational& x) const;
  bool overlaps(const CertifiedReal& other) const;
  /// positive/negative when the ball excludes 0, zero when exactly 0, else undecided.
  Sign sign() const;

  CertifiedReal abs() const;
  CertifiedReal with_precision(int precision_bits) const;
  /// Adds `extra` to the radius.
  CertifiedReal widened(const Rational& extra) const;

  CertifiedReal& operator+=(const CertifiedReal& rhs);
  CertifiedReal& operator-=(const CertifiedReal& rhs);
  CertifiedReal& operator*=(const CertifiedReal& rhs);
  CertifiedReal& operator/=(const CertifiedReal& rhs);
  CertifiedReal& operator*=(const Rational& rhs);
  CertifiedReal& operator/=(const Rational& rhs);
  CertifiedReal& operator+=(const Rational& rhs);
  CertifiedReal& operator-=(const Rational& rhs);

  friend CertifiedReal operator+(CertifiedReal a, const CertifiedReal& b) { return a += b; }
  friend CertifiedReal operator-(CertifiedReal a, const CertifiedReal& b) { return a -= b; }
  friend CertifiedReal operator*(CertifiedReal a, const CertifiedReal& b) { return a *= b; }
  friend CertifiedReal operator/(CertifiedReal a, const CertifiedReal& b) { return a /= b; }
  friend CertifiedReal operator+(CertifiedReal a, const Rational& b) { return a += b; }
  friend CertifiedReal operator-(CertifiedReal a, const Rational& b) { return a -= b; }
  friend CertifiedReal operator*(CertifiedReal a, const Rational& b) { return a *= b; }
  friend CertifiedReal operator/(CertifiedReal a, const Rational& b) { return a /= b; }
  friend CertifiedReal operator+(const Rational& a, CertifiedReal b) { return b += a; }
  friend CertifiedReal operator*(const Rational& a, CertifiedReal b) { return b *= a; }
  friend CertifiedReal operator-(const Rational& a, const CertifiedReal& b) { return -b + a; }
  CertifiedReal operator-() const;

  /// "midpoint ± radius" with `digits` fractional digits for the midpoint.
  std::string str(int digits) const;

 private:
  void round();

  Rational midpoint_;
  Rational radius_;
  int precision_bits_;
};

/// Enclosure of e^x whose radius is at most 2^-precision_bits * e^x.
CertifiedReal exp_enclosure(const Rational& x, int precision_bits);

/// Enclosure of ln(a/b) with radius at most 2^-precision_bits. Requires a, b > 0.
CertifiedReal ln_ratio_enclosure(const Rational& a, const Rational& b, int precision_bits);

using PrecisionFn = std::function<CertifiedReal(int precision_bits)>;

/// Evaluates `value_fn` at doubling precision, starting at `start_bits`,
/// until the enclosure excludes zero or `max_bits` is reached.
Sign decide_sign(const PrecisionFn& value_fn, int max_bits = kMaxPrecisionBits,
                 int start_bits = kDefaultPrecisionBits);

}  // namespace chvatal
