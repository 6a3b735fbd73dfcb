#include "chvatal/numerics.hpp"

#include <atomic>
#include <cctype>
#include <string>
#include <utility>

namespace chvatal {
namespace {

std::atomic<std::size_t> g_guard_bits{100'000'000};

BigInt pow10(unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

// round(|q| * 10^digits), half away from zero.
BigInt scaled_round(const Rational& q, unsigned long digits) {
  const BigInt scaled_num = abs(q.numerator()) * pow10(digits);
  const BigInt den = q.denominator();
  BigInt quotient;
  BigInt remainder;
  mpz_fdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), scaled_num.get_mpz_t(),
              den.get_mpz_t());
  if (2 * remainder >= den) ++quotient;
  return quotient;
}

}  // namespace

void set_memory_guard_bits(std::size_t bits) { g_guard_bits.store(bits); }
std::size_t memory_guard_bits() { return g_guard_bits.load(); }

Rational::Rational(const BigInt& integer) : value_(integer) { guard(); }

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_.get_num() = numerator;
  value_.get_den() = denominator;
  value_.canonicalize();
  guard();
}

Rational Rational::from_coprime(const BigInt& numerator, const BigInt& denominator) {
  if (denominator <= 0) throw DomainError("from_coprime needs a positive denominator");
  mpq_class value;
  value.get_num() = numerator;
  value.get_den() = denominator;
  return Rational(std::move(value), Trusted{});
}

Rational::Rational(mpq_class value, Trusted) : value_(std::move(value)) { guard(); }

void Rational::guard() const {
  if (mpz_sizeinbase(value_.get_num_mpz_t(), 2) > g_guard_bits.load()) {
    throw MemoryGuardError("rational numerator exceeds the memory guard");
  }
}

Rational Rational::parse(std::string_view text) {
  const auto fail = [&]() -> Rational {
    throw DomainError("not a rational literal: '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num;
    BigInt den;
    const std::string n(text.substr(0, slash));
    const std::string d(text.substr(slash + 1));
    if (n.empty() || d.empty() || num.set_str(n, 10) != 0 || den.set_str(d, 10) != 0) return fail();
    if (d.find_first_of("+-") != std::string::npos) return fail();
    if (den == 0) throw DomainError("rational with zero denominator");
    return Rational(num, den);
  }

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long fraction_digits = 0;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++fraction_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (digits.empty()) return fail();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    ++i;
    const std::string exp_text(text.substr(i));
    if (exp_text.empty()) return fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exp_text.size()) return fail();
  }
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long shift = exponent - fraction_digits;
  if (shift >= 0) return Rational(BigInt(mantissa * pow10(static_cast<unsigned long>(shift))));
  return Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

BigInt Rational::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_)), Trusted{}); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  mpq_class out;
  mpq_inv(out.get_mpq_t(), value_.get_mpq_t());
  return Rational(std::move(out), Trusted{});
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  mpq_class out;
  const auto e = static_cast<unsigned long>(exponent);
  mpz_pow_ui(out.get_num_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), value_.get_den_mpz_t(), e);
  return Rational(std::move(out), Trusted{});
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  const auto d = static_cast<unsigned long>(digits < 0 ? 0 : digits);
  const BigInt rounded = scaled_round(*this, d);
  std::string body = rounded.get_str();
  if (body.size() <= d) body.insert(0, d + 1 - body.size(), '0');
  if (d > 0) body.insert(body.size() - d, ".");
  if (sign() < 0 && rounded != 0) body.insert(0, "-");
  return body;
}

std::string Rational::scientific_upper(int significant) const {
  if (is_zero()) return "0";
  if (significant < 1) significant = 1;
  // Find e with 10^e <= |q| < 10^(e+1).
  const Rational magnitude = abs();
  long e = static_cast<long>((static_cast<double>(floor_log2(magnitude)) * 0.30102999566398120));
  const auto power = [](long k) {
    return k >= 0 ? Rational(pow10(static_cast<unsigned long>(k)))
                  : Rational(BigInt(1), pow10(static_cast<unsigned long>(-k)));
  };
  while (power(e) > magnitude) --e;
  while (power(e + 1) <= magnitude) ++e;
  const Rational scaled = magnitude / power(e - significant + 1);
  BigInt mantissa = scaled.ceil();
  if (mantissa == pow10(static_cast<unsigned long>(significant))) {
    mantissa /= 10;
    ++e;
  }
  std::string m = mantissa.get_str();
  if (m.size() > 1) m.insert(1, ".");
  std::string out = (sign() < 0 ? "-" : "") + m + "e";
  out += (e < 0 ? "-" : "+");
  const std::string exp_digits = std::to_string(e < 0 ? -e : e);
  if (exp_digits.size() < 2) out += "0";
  return out + exp_digits;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  guard();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  guard();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  guard();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  value_ /= rhs.value_;
  guard();
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_), Trusted{}); }

long floor_log2(const Rational& q) {
  if (q.is_zero()) throw DomainError("floor_log2 of zero");
  const mpq_class& v = q.raw();
  const long num_bits = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2));
  const long den_bits = static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 2));
  // |q| lies in [2^(e-1), 2^(e+1)) for e = num_bits - den_bits.
  long e = num_bits - den_bits;
  BigInt lhs = ::abs(v.get_num());
  BigInt rhs = v.get_den();
  if (e >= 0) {
    rhs <<= static_cast<mp_bitcnt_t>(e);
  } else {
    lhs <<= static_cast<mp_bitcnt_t>(-e);
  }
  if (lhs < rhs) --e;
  return e;
}

Rational pow2(long shift) {
  BigInt one = 1;
  if (shift >= 0) return Rational(BigInt(one << static_cast<mp_bitcnt_t>(shift)));
  return Rational(one, BigInt(one << static_cast<mp_bitcnt_t>(-shift)));
}

Rational ldexp(const Rational& q, long shift) {
  if (shift == 0 || q.is_zero()) return q;
  mpq_class out;
  if (shift > 0) {
    mpq_mul_2exp(out.get_mpq_t(), q.raw().get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpq_div_2exp(out.get_mpq_t(), q.raw().get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  return Rational(out.get_num(), out.get_den());
}

BigInt binom_coeff(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
    case Sign::undecided: return "undecided";
  }
  return "undecided";
}

}  // namespace chvatal
