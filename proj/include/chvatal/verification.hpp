#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chvatal/meantail.hpp"

namespace chvatal {

struct Counterexample {
  std::string input;
  /// The relation that failed, e.g. "a_r(n) > a_r(r)".
  std::string relation;
  std::vector<std::pair<std::string, RealValue>> actual;
};

struct CriticalValue {
  std::string label;
  RealValue value;
};

/// Outcome of one named check. passed is false exactly when a counterexample
/// was found or a sign decision came back undecided.
struct VerificationReport {
  std::string check_name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string range_scanned;
  bool passed = true;
  bool undecided = false;
  std::optional<Counterexample> counterexample;
  std::vector<CriticalValue> critical_values;
  std::vector<std::string> notes;

  void fail(Counterexample cx);
  void mark_undecided(std::string what);
};

enum class Spacing { linear, logarithmic };

struct ProbeGrid {
  ProbeGrid(Rational start, Rational end, Spacing spacing, long count);

  Rational start;
  Rational end;
  Spacing spacing;
  long count;

  /// Strictly increasing rational points from start to end (both included).
  /// Logarithmic interior points are rounded to multiples of 1/1024.
  std::vector<Rational> points() const;
};

struct VerifyOptions {
  int precision_bits = kDefaultPrecisionBits;
  int max_precision_bits = kMaxPrecisionBits;
  unsigned jobs = 1;
};

struct PascalSample {
  long r;
  Rational p;
  long m;
};

/// Deterministic pseudo-random samples with 1 <= r <= r_max, r <= m <= m_max and
/// p = a/b, 1 <= a <= b <= max_denominator.
std::vector<PascalSample> pascal_identity_samples(std::size_t count, std::uint64_t seed, long r_max, long m_max,
                                                  long max_denominator);

/// h2(x) = 3/(3x-1) + 1/(x+1) + ln((x-1)/(x+1)).
CertifiedReal h2(const Rational& x, int precision_bits);
/// h3(x) = (34x-29)/(17x^2-29x+8) + 1/(x+1) + ln((x-2)/(x+1)).
CertifiedReal h3(const Rational& x, int precision_bits);
/// 3x^2 - 2x + 3
Rational h2_derivative_polynomial(const Rational& x);
/// 17x^4 - 57x^3 + 105x^2 - 91x + 54
Rational h3_derivative_polynomial(const Rational& x);

VerificationReport verify_chvatal(long n_max, const VerifyOptions& options = {});
VerificationReport verify_poisson_increasing(long k_max, const VerifyOptions& options = {});
VerificationReport verify_poisson_clt(const std::vector<Rational>& lambdas, const Rational& tolerance,
                                      const VerifyOptions& options = {});
VerificationReport verify_poisson_lambda_monotone(long x, const std::vector<std::pair<Rational, Rational>>& lambda_pairs,
                                                  const VerifyOptions& options = {});
VerificationReport verify_geometric(long n_max, const VerifyOptions& options = {}, long sampled_pieces = 100,
                                    long samples_per_piece = 16);
VerificationReport verify_pascal_identity(const std::vector<PascalSample>& samples, const VerifyOptions& options = {});
VerificationReport verify_pascal_conjecture(long r, long n_max, const VerifyOptions& options = {});
VerificationReport verify_closed_forms(long n_max, const VerifyOptions& options = {});
VerificationReport probe_h2(const ProbeGrid& grid, const VerifyOptions& options = {});
VerificationReport probe_h3(const ProbeGrid& grid, const VerifyOptions& options = {});
VerificationReport probe_positivity_polynomials(const ProbeGrid& h2_grid, const ProbeGrid& h3_grid);
VerificationReport probe_b_sequences(long n_max);
VerificationReport probe_gk_monotone(long r, long n, long sample_count);
VerificationReport verify_binomial_poisson_limit(long k, const std::vector<long>& n_list,
                                                 const VerifyOptions& options = {});

/// Default probe grids: 64 log-spaced points on [3, 10^6] and [4, 10^6].
ProbeGrid default_h2_grid();
ProbeGrid default_h3_grid();

}  // namespace chvatal
