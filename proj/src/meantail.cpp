#include "chvatal/meantail.hpp"

#include <limits>
#include <string>

#include "chvatal/parallel.hpp"

namespace chvatal {
namespace {

long to_long(const BigInt& value) {
  if (!value.fits_slong_p()) throw DomainError("integer does not fit the piece index range");
  return value.get_si();
}

BigInt ipow(long base, long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

void require_unit_interval(const Rational& p) {
  if (p.sign() <= 0 || p > Rational(1)) throw DomainError("parameter " + p.str() + " outside (0,1]");
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::poisson: return "poisson";
    case Family::geometric: return "geometric";
    case Family::pascal: return "pascal";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "poisson") return Family::poisson;
  if (name == "geometric") return Family::geometric;
  if (name == "pascal") return Family::pascal;
  throw DomainError("unknown family '" + std::string(name) + "'");
}

long FamilySpec::first_piece() const {
  switch (family) {
    case Family::poisson: return 0;
    case Family::geometric: return 1;
    case Family::pascal: return r;
  }
  return 0;
}

std::string FamilySpec::label() const {
  if (family == Family::pascal) return "pascal r=" + std::to_string(r);
  return std::string(to_string(family));
}

Rational chvatal_q(long n, long m) {
  if (n < 2) throw DomainError("chvatal_q needs n >= 2");
  if (m < 0 || m > n) throw DomainError("chvatal_q needs 0 <= m <= n");
  return binomial_cdf_leq(BinomialParams(n, Rational(BigInt(m), BigInt(n))), m);
}

ChvatalArgmin chvatal_argmin(long n) {
  if (n < 2) throw DomainError("chvatal_argmin needs n >= 2");
  ChvatalArgmin out;
  out.q_values.reserve(static_cast<std::size_t>(n + 1));
  for (long m = 0; m <= n; ++m) out.q_values.push_back(chvatal_q(n, m));
  const Rational* best = &out.q_values.front();
  for (const auto& q : out.q_values) {
    if (q < *best) best = &q;
  }
  for (long m = 0; m <= n; ++m) {
    if (out.q_values[static_cast<std::size_t>(m)] == *best) out.minimizers.push_back(m);
  }
  return out;
}

CertifiedReal poisson_mean_tail(const Rational& lambda, int precision_bits) {
  const PoissonParams params(lambda);
  return poisson_cdf_leq(params, to_long(lambda.floor()), precision_bits);
}

CertifiedReal poisson_piece_infimum(long k, int precision_bits) {
  if (k < 0) throw DomainError("poisson piece index must be >= 0");
  return poisson_cdf_leq(PoissonParams(Rational(k + 1)), k, precision_bits);
}

Rational geometric_f(const Rational& p) {
  require_unit_interval(p);
  const long x = to_long(p.reciprocal().floor());
  return Rational(1) - (Rational(1) - p).pow(x);
}

Rational geometric_a(long n) {
  if (n < 1) throw DomainError("geometric_a needs n >= 1");
  // n^n and (n+1)^n are coprime, and so are (n+1)^n - n^n and (n+1)^n.
  const BigInt den = ipow(n + 1, n);
  return Rational::from_coprime(BigInt(den - ipow(n, n)), den);
}

Rational pascal_f(long r, const Rational& p) {
  require_unit_interval(p);
  const PascalParams params(r, p);
  return pascal_cdf_leq(params, to_long((Rational(r) / p).floor()));
}

Rational pascal_a(long r, long n) {
  if (r < 1 || n < r) throw DomainError("pascal_a needs n >= r >= 1");
  // (r/(n+1))^r * sum_{k=r}^{n} C(k-1,r-1) ((n+1-r)/(n+1))^(k-r)
  //   = r^r * [sum_k C(k-1,r-1) x^(k-r) y^(n-k)] / y^n   with x = n+1-r, y = n+1.
  const auto x = static_cast<unsigned long>(n + 1 - r);
  const auto y = static_cast<unsigned long>(n + 1);
  BigInt coeff = 1;
  BigInt x_power = 1;
  BigInt acc = 1;
  for (long k = r + 1; k <= n; ++k) {
    coeff *= static_cast<unsigned long>(k - 1);
    mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(k - r));
    x_power *= x;
    acc *= y;
    acc += coeff * x_power;
  }
  return Rational(BigInt(acc * ipow(r, r)), ipow(n + 1, n));
}

Fraction pascal_a_fraction(long r, long n) {
  if (r < 1 || n < r) throw DomainError("pascal_a needs n >= r >= 1");
  const BinomialParams params(n, Rational(BigInt(r), BigInt(n + 1)));
  Fraction lower = binomial_cdf_leq_fraction(params, r - 1);
  return {BigInt(lower.denominator - lower.numerator), lower.denominator};
}

Rational pascal_a_via_binomial(long r, long n) {
  if (r < 1 || n < r) throw DomainError("pascal_a needs n >= r >= 1");
  return binomial_tail_geq(BinomialParams(n, Rational(BigInt(r), BigInt(n + 1))), r);
}

Rational pascal_g(long r, long k, const Rational& p) {
  if (r < 1 || k < r) throw DomainError("pascal_g needs k >= r >= 1");
  return Rational(binom_coeff(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(r - 1))) *
         p.pow(r) * (Rational(1) - p).pow(k - r);
}

Rational b2(long n) {
  if (n < 3) throw DomainError("b2 needs n >= 3");
  return Rational(BigInt(3 * n - 1), BigInt(n + 1)) * Rational(BigInt(n - 1), BigInt(n + 1)).pow(n - 1);
}

Rational b3(long n) {
  if (n < 4) throw DomainError("b3 needs n >= 4");
  const BigInt quadratic = BigInt(17) * n * n - BigInt(29) * n + 8;
  return Rational(quadratic, BigInt(2 * (n + 1) * (n + 1))) *
         Rational(BigInt(n - 2), BigInt(n + 1)).pow(n - 2);
}

Rational a2_closed(long n) {
  if (n < 2) throw DomainError("a2_closed needs n >= 2");
  if (n == 2) return Rational(4) / 9;
  return Rational(1) - b2(n);
}

Rational a3_closed(long n) {
  if (n < 3) throw DomainError("a3_closed needs n >= 3");
  if (n == 3) return Rational(27) / 64;
  return Rational(1) - b3(n);
}

bool ParameterInterval::contains(const Rational& x) const {
  const bool above = lo_open ? x > lo : x >= lo;
  const bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

std::string ParameterInterval::str() const {
  return std::string(lo_open ? "(" : "[") + lo.str() + ", " + hi.str() + (hi_open ? ")" : "]");
}

long piece_index_of(const FamilySpec& family, const Rational& parameter) {
  if (parameter.sign() <= 0) throw DomainError("parameter must be positive");
  switch (family.family) {
    case Family::poisson: return to_long(parameter.floor());
    case Family::geometric: require_unit_interval(parameter); return to_long(parameter.reciprocal().floor());
    case Family::pascal: require_unit_interval(parameter); return to_long((Rational(family.r) / parameter).floor());
  }
  return 0;
}

ParameterInterval piece_interval(const FamilySpec& family, long index) {
  if (index < family.first_piece()) throw DomainError("piece index below the first piece of " + family.label());
  switch (family.family) {
    case Family::poisson:
      return {Rational(index), Rational(index + 1), index == 0, true};
    case Family::geometric:
      return {Rational(BigInt(1), BigInt(index + 1)), Rational(BigInt(1), BigInt(index)), true, false};
    case Family::pascal:
      return {Rational(BigInt(family.r), BigInt(index + 1)), Rational(BigInt(family.r), BigInt(index)), true, false};
  }
  throw DomainError("unknown family");
}

RealValue mean_tail(const FamilySpec& family, const Rational& parameter, int precision_bits) {
  switch (family.family) {
    case Family::poisson: return poisson_mean_tail(parameter, precision_bits);
    case Family::geometric: return geometric_f(parameter);
    case Family::pascal: return pascal_f(family.r, parameter);
  }
  throw DomainError("unknown family");
}

PieceReport piece_report(const FamilySpec& family, long index, int precision_bits) {
  PieceReport out{family, index, piece_interval(family, index), Rational(0), false, Rational(0)};
  switch (family.family) {
    case Family::poisson:
      out.piece_infimum = poisson_piece_infimum(index, precision_bits);
      out.limit_witness = out.interval.hi;
      break;
    case Family::geometric:
      out.piece_infimum = geometric_a(index);
      out.limit_witness = out.interval.lo;
      break;
    case Family::pascal:
      out.piece_infimum = pascal_a(family.r, index);
      out.limit_witness = out.interval.lo;
      break;
  }
  return out;
}

std::vector<PieceReport> piece_decompose(const FamilySpec& family, long first, long last,
                                         int precision_bits, unsigned jobs) {
  if (first < family.first_piece()) throw DomainError("piece range starts below the first piece");
  if (last < first) return {};
  return parallel_map(static_cast<std::size_t>(last - first + 1), jobs, [&](std::size_t i) {
    return piece_report(family, first + static_cast<long>(i), precision_bits);
  });
}

std::vector<Rational> piece_samples(const FamilySpec& family, long index, long count) {
  if (count < 1) throw DomainError("sample count must be positive");
  const ParameterInterval interval = piece_interval(family, index);
  const Rational width = interval.hi - interval.lo;
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    if (family.family != Family::poisson) {
      out.push_back(interval.lo + width * Rational(BigInt(i + 1), BigInt(count)));
    } else if (index == 0) {
      out.push_back(Rational(BigInt(i + 1), BigInt(count + 1)));
    } else {
      out.push_back(interval.lo + Rational(BigInt(i), BigInt(count)));
    }
  }
  return out;
}

namespace {

std::vector<WitnessPoint> witnesses_for(const PieceReport& piece, int precision_bits) {
  std::vector<WitnessPoint> out;
  const Rational width = piece.interval.hi - piece.interval.lo;
  const bool from_below = piece.family.family == Family::poisson;
  for (long j = 1; j <= 4; ++j) {
    const Rational step = width / Rational(ipow(10, j));
    const Rational parameter = from_below ? piece.limit_witness - step : piece.limit_witness + step;
    out.push_back({parameter, mean_tail(piece.family, parameter, precision_bits)});
  }
  return out;
}

void finish_exact(InfimumReport& report, const Rational& claim) {
  const PieceReport* best = &report.pieces.front();
  for (const auto& piece : report.pieces) {
    if (std::get<Rational>(piece.piece_infimum) < std::get<Rational>(best->piece_infimum)) best = &piece;
  }
  report.global_infimum = best->piece_infimum;
  report.argmin_piece = best->piece_index;
  report.claimed_value = claim;
  report.agrees_with_claim = std::get<Rational>(best->piece_infimum) == claim;
}

}  // namespace

InfimumReport global_infimum(const FamilySpec& family, long scan_bound, const ScanOptions& options) {
  const long first = family.first_piece();
  if (scan_bound < first) throw DomainError("scan bound below the first piece of " + family.label());

  InfimumReport report;
  report.family = family;
  report.first_piece = first;
  report.scan_bound = scan_bound;
  report.pieces = piece_decompose(family, first, scan_bound, options.precision_bits, options.jobs);

  switch (family.family) {
    case Family::geometric:
      report.claimed_label = "1/2";
      finish_exact(report, Rational(1) / 2);
      break;
    case Family::pascal:
      report.claimed_label = "(r/(r+1))^r";
      finish_exact(report, Rational(BigInt(family.r), BigInt(family.r + 1)).pow(family.r));
      break;
    case Family::poisson: {
      report.claimed_label = "1/e";
      long best = first;
      for (long k = first + 1; k <= scan_bound; ++k) {
        const Sign s = decide_sign(
            [&](int bits) { return poisson_piece_infimum(k, bits) - poisson_piece_infimum(best, bits); },
            options.max_precision_bits, options.precision_bits);
        if (s == Sign::undecided || s == Sign::zero) {
          report.undecided = true;
          report.notes.push_back("piece " + std::to_string(k) + " could not be separated from piece " +
                                 std::to_string(best));
        } else if (s == Sign::negative) {
          best = k;
        }
      }
      report.argmin_piece = best;
      report.global_infimum = report.pieces[static_cast<std::size_t>(best - first)].piece_infimum;
      const CertifiedReal claim = exp_enclosure(Rational(-1), options.precision_bits);
      report.claimed_value = claim;
      report.agrees_with_claim = !report.undecided && best == 0 &&
                                 std::get<CertifiedReal>(report.global_infimum).overlaps(claim);
      report.notes.push_back("pieces 0.." + std::to_string(scan_bound) +
                             " compared by separated enclosures; lambda >= " + std::to_string(scan_bound + 1) +
                             " is covered by the increasing sequence P(X_{1+k} <= k) and the limit 1/2 > 1/e, "
                             "not by this scan");
      break;
    }
  }
  report.witnesses = witnesses_for(report.pieces[static_cast<std::size_t>(report.argmin_piece - first)],
                                   options.precision_bits);
  return report;
}

}  // namespace chvatal
