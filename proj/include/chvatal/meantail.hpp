#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chvatal/distributions.hpp"
#include "chvatal/numerics.hpp"

namespace chvatal {

/// Exact rational for the binomial/geometric/Pascal families, enclosure for Poisson.
using RealValue = std::variant<Rational, CertifiedReal>;

enum class Family { poisson, geometric, pascal };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

/// A family together with the Pascal order r (ignored for the other families).
struct FamilySpec {
  Family family;
  long r = 1;

  /// First admissible piece index: 0 (Poisson), 1 (geometric), r (Pascal).
  long first_piece() const;
  std::string label() const;
};

// --- binomial / Chvatal ------------------------------------------------------

/// q_m = P(B(n, m/n) <= m).
Rational chvatal_q(long n, long m);

struct ChvatalArgmin {
  std::vector<long> minimizers;
  std::vector<Rational> q_values;  // q_0 .. q_n
};

ChvatalArgmin chvatal_argmin(long n);

// --- Poisson -----------------------------------------------------------------

/// P(X_lambda <= lambda) = P(X_lambda <= floor(lambda)).
CertifiedReal poisson_mean_tail(const Rational& lambda, int precision_bits);

/// P(X_{k+1} <= k): the unattained infimum of the mean-tail on lambda in [k, k+1).
CertifiedReal poisson_piece_infimum(long k, int precision_bits);

// --- geometric ---------------------------------------------------------------

/// f(p) = 1 - (1-p)^floor(1/p), p in (0, 1].
Rational geometric_f(const Rational& p);

/// a_n = 1 - (n/(n+1))^n, the infimum of f on (1/(n+1), 1/n].
Rational geometric_a(long n);

// --- Pascal ------------------------------------------------------------------

/// f_r(p) = P(B*(r,p) <= floor(r/p)).
Rational pascal_f(long r, const Rational& p);

/// a_r(n) = sum_{k=r}^{n} C(k-1,r-1) (r/(n+1))^r (1 - r/(n+1))^(k-r), the
/// infimum of f_r on (r/(n+1), r/n].
Rational pascal_a(long r, long n);

/// a_r(n) through the binomial tail P(B(n, r/(n+1)) >= r). Only r terms are
/// summed, so this is the route used for long sweeps.
Rational pascal_a_via_binomial(long r, long n);

/// a_r(n) = 1 - lower/denominator with lower = P(B(n, r/(n+1)) <= r-1) * (n+1)^n.
Fraction pascal_a_fraction(long r, long n);

/// g_k(p) = C(k-1,r-1) p^r (1-p)^(k-r).
Rational pascal_g(long r, long k, const Rational& p);

Rational a2_closed(long n);
Rational a3_closed(long n);
/// (3n-1)/(n+1) * ((n-1)/(n+1))^(n-1), n >= 3.
Rational b2(long n);
/// (17n^2-29n+8)/(2(n+1)^2) * ((n-2)/(n+1))^(n-2), n >= 4.
Rational b3(long n);

// --- piece structure ---------------------------------------------------------

/// Parameter interval of one floor piece. Geometric and Pascal pieces are
/// (lo, hi]; Poisson pieces are [k, k+1), except piece 0 which is (0, 1).
struct ParameterInterval {
  Rational lo;
  Rational hi;
  bool lo_open = true;
  bool hi_open = false;

  bool contains(const Rational& x) const;
  std::string str() const;
};

struct PieceReport {
  FamilySpec family;
  long piece_index = 0;
  ParameterInterval interval;
  RealValue piece_infimum;
  bool attained = false;
  /// The open endpoint the infimum is approached from.
  Rational limit_witness;
};

/// The floor quantity that indexes pieces: floor(lambda), floor(1/p) or floor(r/p).
long piece_index_of(const FamilySpec& family, const Rational& parameter);

ParameterInterval piece_interval(const FamilySpec& family, long index);

/// P(X <= E[X]) at the given parameter (lambda or p).
RealValue mean_tail(const FamilySpec& family, const Rational& parameter, int precision_bits);

PieceReport piece_report(const FamilySpec& family, long index, int precision_bits);

std::vector<PieceReport> piece_decompose(const FamilySpec& family, long first, long last,
                                         int precision_bits, unsigned jobs = 1);

/// `count` evenly spaced parameters inside a piece, ending at the closed endpoint
/// for geometric/Pascal and starting at the closed endpoint for Poisson.
std::vector<Rational> piece_samples(const FamilySpec& family, long index, long count);

struct WitnessPoint {
  Rational parameter;
  RealValue value;
};

struct InfimumReport {
  FamilySpec family;
  long first_piece = 0;
  long scan_bound = 0;
  std::vector<PieceReport> pieces;
  RealValue global_infimum;
  long argmin_piece = 0;
  bool attained = false;
  std::string claimed_label;
  RealValue claimed_value;
  bool agrees_with_claim = false;
  /// A Poisson comparison could not be separated at the precision cap.
  bool undecided = false;
  /// Parameters approaching the open endpoint of the argmin piece.
  std::vector<WitnessPoint> witnesses;
  std::vector<std::string> notes;
};

struct ScanOptions {
  int precision_bits = kDefaultPrecisionBits;
  int max_precision_bits = kMaxPrecisionBits;
  unsigned jobs = 1;
};

InfimumReport global_infimum(const FamilySpec& family, long scan_bound, const ScanOptions& options = {});

}  // namespace chvatal
