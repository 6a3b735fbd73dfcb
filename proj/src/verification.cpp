#include "chvatal/verification.hpp"

#include <algorithm>
#include <string>

#include "chvatal/parallel.hpp"

namespace chvatal {
namespace {

Rational frac(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

std::string num(long v) { return std::to_string(v); }

std::string txt(const Rational& q) { return q.is_integer() ? q.numerator().get_str() : q.str(); }

constexpr const char* kA34Erratum =
    "erratum: a_3(4) evaluates to 297/625 = 1 - 328/625; the published value 1 - 328/390625 "
    "does not match (390625 = 625^2)";

/// Result of one sweep cell.
struct Outcome {
  std::optional<Counterexample> counterexample;
  std::optional<std::string> undecided;

  static Outcome ok() { return {}; }
  static Outcome fail(Counterexample cx) { return {std::move(cx), std::nullopt}; }
  static Outcome unknown(std::string what) { return {std::nullopt, std::move(what)}; }
};

/// Runs `cell` over 0..count-1 and records the first failure in index order.
template <typename Cell>
void sweep(VerificationReport& report, std::size_t count, unsigned jobs, Cell&& cell) {
  const auto outcomes = parallel_map(count, jobs, cell);
  for (const auto& outcome : outcomes) {
    if (outcome.counterexample) {
      report.fail(*outcome.counterexample);
      return;
    }
    if (outcome.undecided) {
      report.mark_undecided(*outcome.undecided);
      return;
    }
  }
}

/// Outcome for a sign requirement on a precision-parameterized quantity.
Outcome require_sign(const PrecisionFn& fn, Sign wanted, const VerifyOptions& options, std::string input,
                     std::string relation, std::vector<std::pair<std::string, RealValue>> values = {}) {
  const Sign got = decide_sign(fn, options.max_precision_bits, options.precision_bits);
  if (got == wanted) return Outcome::ok();
  if (got == Sign::undecided) return Outcome::unknown(relation + " undecided at " + input);
  values.emplace_back("difference", fn(options.precision_bits));
  return Outcome::fail({std::move(input), std::move(relation), std::move(values)});
}

}  // namespace

void VerificationReport::fail(Counterexample cx) {
  passed = false;
  if (!counterexample) counterexample = std::move(cx);
}

void VerificationReport::mark_undecided(std::string what) {
  passed = false;
  undecided = true;
  notes.push_back("undecided: " + std::move(what));
}

ProbeGrid::ProbeGrid(Rational start_, Rational end_, Spacing spacing_, long count_)
    : start(std::move(start_)), end(std::move(end_)), spacing(spacing_), count(count_) {
  if (!(start < end)) throw DomainError("probe grid needs start < end");
  if (count < 2) throw DomainError("probe grid needs at least two points");
  if (spacing == Spacing::logarithmic && start.sign() <= 0) throw DomainError("log grid needs start > 0");
}

std::vector<Rational> ProbeGrid::points() const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(start);
  const Rational steps(count - 1);
  if (spacing == Spacing::linear) {
    for (long i = 1; i + 1 < count; ++i) out.push_back(start + (end - start) * Rational(i) / steps);
  } else {
    const Rational log_start = ln_ratio_enclosure(start, Rational(1), 96).midpoint();
    const Rational log_end = ln_ratio_enclosure(end, Rational(1), 96).midpoint();
    for (long i = 1; i + 1 < count; ++i) {
      const Rational exponent = log_start + (log_end - log_start) * Rational(i) / steps;
      const Rational x = ldexp(Rational(ldexp(exp_enclosure(exponent, 64).midpoint(), 10).floor()), -10);
      if (x > out.back() && x < end) out.push_back(x);
    }
  }
  out.push_back(end);
  return out;
}

std::vector<PascalSample> pascal_identity_samples(std::size_t count, std::uint64_t seed, long r_max, long m_max,
                                                  long max_denominator) {
  if (r_max < 1 || m_max < r_max || max_denominator < 1) throw DomainError("invalid sample ranges");
  // SplitMix64 keeps the stream identical across standard libraries.
  std::uint64_t state = seed;
  const auto next = [&state](long lo, long hi) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return lo + static_cast<long>(z % static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::vector<PascalSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const long r = next(1, r_max);
    const long m = next(r, m_max);
    const long b = next(1, max_denominator);
    const long a = next(1, b);
    out.push_back({r, frac(a, b), m});
  }
  return out;
}

CertifiedReal h2(const Rational& x, int precision_bits) {
  if (x <= Rational(1)) throw DomainError("h2 needs x > 1");
  const Rational rational_part = Rational(3) / (Rational(3) * x - 1) + (x + 1).reciprocal();
  return ln_ratio_enclosure(x - 1, x + 1, precision_bits) + rational_part;
}

CertifiedReal h3(const Rational& x, int precision_bits) {
  if (x <= Rational(2)) throw DomainError("h3 needs x > 2");
  const Rational quadratic = Rational(17) * x * x - Rational(29) * x + 8;
  const Rational rational_part = (Rational(34) * x - 29) / quadratic + (x + 1).reciprocal();
  return ln_ratio_enclosure(x - 2, x + 1, precision_bits) + rational_part;
}

Rational h2_derivative_polynomial(const Rational& x) { return Rational(3) * x * x - Rational(2) * x + 3; }

Rational h3_derivative_polynomial(const Rational& x) {
  return (((Rational(17) * x - 57) * x + 105) * x - 91) * x + 54;
}

ProbeGrid default_h2_grid() { return ProbeGrid(Rational(3), Rational(1000000), Spacing::logarithmic, 64); }
ProbeGrid default_h3_grid() { return ProbeGrid(Rational(4), Rational(1000000), Spacing::logarithmic, 64); }

VerificationReport verify_chvatal(long n_max, const VerifyOptions& options) {
  if (n_max < 2) throw DomainError("verify_chvatal needs n_max >= 2");
  VerificationReport report;
  report.check_name = "chvatal";
  report.parameters = {{"n_max", num(n_max)}};
  report.range_scanned = "n in [2, " + num(n_max) + "], m in [0, n]";

  const auto results = parallel_map(static_cast<std::size_t>(n_max - 1), options.jobs,
                                    [](std::size_t i) { return chvatal_argmin(static_cast<long>(i) + 2); });
  for (std::size_t i = 0; i < results.size(); ++i) {
    const long n = static_cast<long>(i) + 2;
    const auto& result = results[i];
    // Nearest integer to 2n/3; a tie would need 2n/3 to sit exactly halfway.
    const Rational target = frac(2 * n, 3);
    const Rational fractional = target - Rational(target.floor());
    const long nearest = (target + frac(1, 2)).floor().get_si();
    const long m = result.minimizers.front();
    if (fractional == frac(1, 2)) {
      report.fail({"n=" + num(n), "unique integer nearest to 2n/3", {{"2n/3", target}}});
      break;
    }
    if (result.minimizers.size() > 1) {
      report.fail({"n=" + num(n), "unique argmin of q_m",
                   {{"q_" + num(m), result.q_values[static_cast<std::size_t>(m)]},
                    {"q_" + num(result.minimizers[1]), result.q_values[static_cast<std::size_t>(result.minimizers[1])]}}});
      break;
    }
    if (m != nearest) {
      report.fail({"n=" + num(n), "argmin q_m = nearest integer to 2n/3",
                   {{"argmin", Rational(m)}, {"nearest", Rational(nearest)},
                    {"q_argmin", result.q_values[static_cast<std::size_t>(m)]},
                    {"q_nearest", result.q_values[static_cast<std::size_t>(nearest)]}}});
      break;
    }
    if (n <= 3 || n == n_max) {
      report.critical_values.push_back({"n=" + num(n) + " argmin m", Rational(m)});
      report.critical_values.push_back({"n=" + num(n) + " q_min", result.q_values[static_cast<std::size_t>(m)]});
    }
  }
  return report;
}

VerificationReport verify_poisson_increasing(long k_max, const VerifyOptions& options) {
  if (k_max < 1) throw DomainError("verify_poisson_increasing needs k_max >= 1");
  VerificationReport report;
  report.check_name = "poisson-increasing";
  report.parameters = {{"k_max", num(k_max)}, {"precision_bits", num(options.precision_bits)}};
  report.range_scanned = "P(X_{k+1} <= k) < P(X_{k+2} <= k+1) for k in [0, " + num(k_max - 1) + "]";
  sweep(report, static_cast<std::size_t>(k_max), options.jobs, [&](std::size_t i) {
    const long k = static_cast<long>(i);
    return require_sign(
        [k](int bits) { return poisson_piece_infimum(k + 1, bits) - poisson_piece_infimum(k, bits); },
        Sign::positive, options, "k=" + num(k), "P(X_{k+1} <= k) < P(X_{k+2} <= k+1)");
  });
  report.critical_values.push_back({"P(X_1 <= 0)", poisson_piece_infimum(0, options.precision_bits)});
  report.critical_values.push_back({"P(X_2 <= 1)", poisson_piece_infimum(1, options.precision_bits)});
  report.critical_values.push_back(
      {"P(X_" + num(k_max + 1) + " <= " + num(k_max) + ")", poisson_piece_infimum(k_max, options.precision_bits)});
  return report;
}

VerificationReport verify_poisson_clt(const std::vector<Rational>& lambdas, const Rational& tolerance,
                                      const VerifyOptions& options) {
  if (lambdas.empty()) throw DomainError("verify_poisson_clt needs at least one lambda");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i - 1] < lambdas[i])) throw DomainError("lambdas must be strictly increasing");
  }
  VerificationReport report;
  report.check_name = "poisson-clt";
  std::string list;
  for (const auto& l : lambdas) list += (list.empty() ? "" : " ") + txt(l);
  report.parameters = {{"lambdas", list}, {"tolerance", txt(tolerance)}};
  report.range_scanned = "|P(X_l <= l) - 1/2| along lambda = " + list;

  const auto gap = [](const Rational& lambda) {
    return [lambda](int bits) { return (poisson_mean_tail(lambda, bits) - frac(1, 2)).abs(); };
  };
  sweep(report, lambdas.size(), options.jobs, [&](std::size_t i) {
    if (i + 1 == lambdas.size()) {
      const auto g = gap(lambdas[i]);
      return require_sign([&](int bits) { return tolerance - g(bits); }, Sign::positive, options,
                          "lambda=" + txt(lambdas[i]), "|mean-tail - 1/2| < tolerance");
    }
    const auto lo = gap(lambdas[i]);
    const auto hi = gap(lambdas[i + 1]);
    return require_sign([&](int bits) { return lo(bits) - hi(bits); }, Sign::positive, options,
                        "lambda=" + txt(lambdas[i]) + " -> " + txt(lambdas[i + 1]), "gap to 1/2 decreases");
  });
  for (const auto& lambda : lambdas) {
    report.critical_values.push_back({"P(X_l <= l) at l=" + txt(lambda), poisson_mean_tail(lambda, options.precision_bits)});
  }
  return report;
}

VerificationReport verify_poisson_lambda_monotone(long x, const std::vector<std::pair<Rational, Rational>>& lambda_pairs,
                                                  const VerifyOptions& options) {
  if (x < 0) throw DomainError("threshold x must be >= 0");
  for (const auto& [a, b] : lambda_pairs) {
    if (!(a.sign() > 0 && a < b)) throw DomainError("lambda pairs need 0 < lambda1 < lambda2");
  }
  VerificationReport report;
  report.check_name = "poisson-lambda-monotone x=" + num(x);
  std::string list;
  for (const auto& [a, b] : lambda_pairs) list += (list.empty() ? "" : " ") + ("(" + txt(a) + "," + txt(b) + ")");
  report.parameters = {{"x", num(x)}, {"pairs", list}};
  report.range_scanned = "P(X_l1 <= x) > P(X_l2 <= x) for pairs " + list;
  sweep(report, lambda_pairs.size(), options.jobs, [&](std::size_t i) {
    const auto& [a, b] = lambda_pairs[i];
    return require_sign(
        [&](int bits) { return poisson_cdf_leq(PoissonParams(a), x, bits) - poisson_cdf_leq(PoissonParams(b), x, bits); },
        Sign::positive, options, "lambda1=" + txt(a) + " lambda2=" + txt(b), "P(X_l1 <= x) > P(X_l2 <= x)");
  });
  for (const auto& [a, b] : lambda_pairs) {
    report.critical_values.push_back({"P(X_" + txt(a) + " <= " + num(x) + ")", poisson_cdf_leq(PoissonParams(a), x, options.precision_bits)});
    report.critical_values.push_back({"P(X_" + txt(b) + " <= " + num(x) + ")", poisson_cdf_leq(PoissonParams(b), x, options.precision_bits)});
  }
  return report;
}

VerificationReport verify_geometric(long n_max, const VerifyOptions& options, long sampled_pieces,
                                    long samples_per_piece) {
  if (n_max < 1) throw DomainError("verify_geometric needs n_max >= 1");
  VerificationReport report;
  report.check_name = "geometric";
  const long pieces = std::min(n_max, sampled_pieces);
  report.parameters = {{"n_max", num(n_max)}, {"sampled_pieces", num(pieces)}, {"samples_per_piece", num(samples_per_piece)}};
  report.range_scanned = "a_n strictly increasing for n in [1, " + num(n_max) + "]; f sampled on pieces 1.." + num(pieces);

  if (geometric_a(1) != frac(1, 2)) report.fail({"n=1", "a_1 = 1/2", {{"a_1", geometric_a(1)}}});

  sweep(report, static_cast<std::size_t>(n_max - 1), options.jobs, [&](std::size_t i) {
    const long n = static_cast<long>(i) + 1;
    const Rational here = geometric_a(n);
    const Rational next = geometric_a(n + 1);
    if (here < next) return Outcome::ok();
    return Outcome::fail({"n=" + num(n), "a_n < a_{n+1}", {{"a_n", here}, {"a_{n+1}", next}}});
  });

  const FamilySpec family{Family::geometric};
  sweep(report, static_cast<std::size_t>(pieces), options.jobs, [&](std::size_t i) {
    const long x = static_cast<long>(i) + 1;
    const Rational infimum = geometric_a(x);
    Rational previous = infimum;
    for (const auto& p : piece_samples(family, x, samples_per_piece)) {
      const Rational value = geometric_f(p);
      if (piece_index_of(family, p) != x || !(previous < value)) {
        return Outcome::fail({"piece x=" + num(x) + " p=" + txt(p), "a_x < f(p_1) < f(p_2) < ... on (1/(x+1), 1/x]",
                              {{"previous", previous}, {"f(p)", value}}});
      }
      previous = value;
    }
    return Outcome::ok();
  });

  report.critical_values.push_back({"a_1", geometric_a(1)});
  if (n_max >= 2) report.critical_values.push_back({"a_2", geometric_a(2)});
  if (n_max >= 3) report.critical_values.push_back({"a_3", geometric_a(3)});
  return report;
}

VerificationReport verify_pascal_identity(const std::vector<PascalSample>& samples, const VerifyOptions& options) {
  VerificationReport report;
  report.check_name = "pascal-identity";
  report.parameters = {{"samples", num(static_cast<long>(samples.size()))}};
  report.range_scanned = "P(B*(r,p) <= m) = P(B(m,p) >= r) on the listed samples";
  for (const auto& s : samples) {
    if (s.m < s.r) throw DomainError("identity samples need m >= r");
  }
  sweep(report, samples.size(), options.jobs, [&](std::size_t i) {
    const auto& s = samples[i];
    const Rational lhs = pascal_cdf_leq(PascalParams(s.r, s.p), s.m);
    const Rational rhs = binomial_tail_geq(BinomialParams(s.m, s.p), s.r);
    if (lhs == rhs) return Outcome::ok();
    return Outcome::fail({"r=" + num(s.r) + " p=" + txt(s.p) + " m=" + num(s.m), "pascal_cdf_leq = binomial_tail_geq",
                          {{"pascal", lhs}, {"binomial", rhs}}});
  });
  for (std::size_t i = 0; i < std::min<std::size_t>(3, samples.size()); ++i) {
    const auto& s = samples[i];
    report.critical_values.push_back({"r=" + num(s.r) + " p=" + txt(s.p) + " m=" + num(s.m),
                                      pascal_cdf_leq(PascalParams(s.r, s.p), s.m)});
  }
  return report;
}

VerificationReport verify_pascal_conjecture(long r, long n_max, const VerifyOptions& options) {
  if (r < 1 || n_max < r) throw DomainError("verify_pascal_conjecture needs n_max >= r >= 1");
  VerificationReport report;
  report.check_name = "pascal-conjecture r=" + num(r);
  report.parameters = {{"r", num(r)}, {"n_max", num(n_max)}};
  report.range_scanned = "a_r(n) > a_r(r) for n in (" + num(r) + ", " + num(n_max) + "]";

  const Rational claim = frac(r, r + 1).pow(r);
  const Rational at_r = pascal_a(r, r);
  if (at_r != claim || pascal_a_via_binomial(r, r) != claim) {
    report.fail({"n=r=" + num(r), "a_r(r) = (r/(r+1))^r", {{"a_r(r)", at_r}, {"(r/(r+1))^r", claim}}});
  }

  const BigInt claim_num = claim.numerator();
  const BigInt claim_den = claim.denominator();
  // Both summation routes agree on a prefix of the sweep.
  const long cross_check_to = std::min(n_max, r + 200);
  sweep(report, static_cast<std::size_t>(n_max - r), options.jobs, [&](std::size_t i) {
    const long n = r + 1 + static_cast<long>(i);
    const Fraction a = pascal_a_fraction(r, n);
    if (n <= cross_check_to && a.reduced() != pascal_a(r, n)) {
      return Outcome::fail({"r=" + num(r) + " n=" + num(n), "summation form = binomial tail",
                            {{"sum", pascal_a(r, n)}, {"tail", a.reduced()}}});
    }
    if (a.numerator * claim_den > claim_num * a.denominator) return Outcome::ok();
    return Outcome::fail({"r=" + num(r) + " n=" + num(n), "a_r(n) > a_r(r)", {{"a_r(n)", a.reduced()}, {"a_r(r)", at_r}}});
  });

  report.critical_values.push_back({"a_" + num(r) + "(" + num(r) + ")", at_r});
  if (n_max > r) report.critical_values.push_back({"a_" + num(r) + "(" + num(r + 1) + ")", pascal_a(r, r + 1)});
  if (r == 3 && n_max >= 4) report.notes.emplace_back(kA34Erratum);
  return report;
}

VerificationReport verify_closed_forms(long n_max, const VerifyOptions& options) {
  if (n_max < 4) throw DomainError("verify_closed_forms needs n_max >= 4");
  VerificationReport report;
  report.check_name = "closed-forms";
  report.parameters = {{"n_max", num(n_max)}};
  report.range_scanned = "a2_closed = a_2(n) on [2, " + num(n_max) + "], a3_closed = a_3(n) on [3, " + num(n_max) + "]";

  const struct {
    const char* label;
    Rational computed;
    Rational expected;
  } anchors[] = {
      {"a_2(2)", pascal_a(2, 2), frac(4, 9)},   {"b_2(3)", b2(3), frac(1, 2)},
      {"a_2(3)", pascal_a(2, 3), frac(1, 2)},   {"a_3(3)", pascal_a(3, 3), frac(27, 64)},
      {"a_3(4)", pascal_a(3, 4), frac(297, 625)},
  };
  for (const auto& anchor : anchors) {
    report.critical_values.push_back({anchor.label, anchor.computed});
    if (anchor.computed != anchor.expected) {
      report.fail({anchor.label, "anchor value", {{"computed", anchor.computed}, {"expected", anchor.expected}}});
    }
  }
  if (!(b2(3) < frac(5, 9))) report.fail({"n=3", "b_2(3) < 5/9", {{"b_2(3)", b2(3)}}});

  // Cells 0..n_max-2 cover r=2, n in [2, n_max]; the rest cover r=3, n in [3, n_max].
  const auto r2_cells = static_cast<std::size_t>(n_max - 1);
  const auto r3_cells = static_cast<std::size_t>(n_max - 2);
  sweep(report, r2_cells + r3_cells, options.jobs, [&](std::size_t i) {
    const bool second = i >= r2_cells;
    const long r = second ? 3 : 2;
    const long n = second ? 3 + static_cast<long>(i - r2_cells) : 2 + static_cast<long>(i);
    const Rational closed = second ? a3_closed(n) : a2_closed(n);
    const Rational sum = pascal_a(r, n);
    if (closed == sum) return Outcome::ok();
    return Outcome::fail({"r=" + num(r) + " n=" + num(n), "closed form = summation form", {{"closed", closed}, {"sum", sum}}});
  });

  const Rational published = Rational(1) - frac(328, 390625);
  if (pascal_a(3, 4) != published) report.notes.emplace_back(kA34Erratum);
  return report;
}

namespace {

using HFunction = CertifiedReal (*)(const Rational&, int);

VerificationReport probe_h(const char* name, HFunction h, const Rational& domain_start, const ProbeGrid& grid,
                           const VerifyOptions& options) {
  if (grid.start < domain_start) throw DomainError(std::string(name) + " grid must start at or above " + txt(domain_start));
  VerificationReport report;
  report.check_name = std::string("probe-") + name;
  const auto points = grid.points();
  report.parameters = {{"start", txt(grid.start)},
                       {"end", txt(grid.end)},
                       {"points", num(static_cast<long>(points.size()))},
                       {"spacing", grid.spacing == Spacing::linear ? "linear" : "logarithmic"}};
  report.range_scanned = std::string(name) + " < 0 and increasing on [" + txt(grid.start) + ", " + txt(grid.end) + "]";

  sweep(report, 2 * points.size() - 1, options.jobs, [&](std::size_t i) {
    if (i < points.size()) {
      const Rational& x = points[i];
      return require_sign([&](int bits) { return h(x, bits); }, Sign::negative, options, "x=" + txt(x),
                          std::string(name) + "(x) < 0");
    }
    const std::size_t j = i - points.size();
    const Rational& a = points[j];
    const Rational& b = points[j + 1];
    return require_sign([&](int bits) { return h(b, bits) - h(a, bits); }, Sign::positive, options,
                        "x=" + txt(a) + " -> " + txt(b), std::string(name) + " increasing");
  });

  // The limit 0 at infinity is only checkable as a band: |h(end)| < 10 / end.
  const CertifiedReal at_end = h(grid.end, options.precision_bits);
  const Rational band = Rational(10) / grid.end;
  if (!(at_end.magnitude() < band)) {
    report.fail({"x=" + txt(grid.end), "|h(end)| < 10/end", {{"h(end)", at_end}, {"band", band}}});
  }
  report.critical_values.push_back({std::string(name) + "(" + txt(grid.start) + ")", h(grid.start, options.precision_bits)});
  report.critical_values.push_back({std::string(name) + "(" + txt(grid.end) + ")", at_end});
  report.critical_values.push_back({"band at end", band});
  return report;
}

}  // namespace

VerificationReport probe_h2(const ProbeGrid& grid, const VerifyOptions& options) {
  return probe_h("h2", &h2, Rational(3), grid, options);
}

VerificationReport probe_h3(const ProbeGrid& grid, const VerifyOptions& options) {
  return probe_h("h3", &h3, Rational(4), grid, options);
}

VerificationReport probe_positivity_polynomials(const ProbeGrid& h2_grid, const ProbeGrid& h3_grid) {
  if (h2_grid.start < Rational(3) || h3_grid.start < Rational(4)) {
    throw DomainError("polynomial grids must lie in [3, inf) and [4, inf)");
  }
  VerificationReport report;
  report.check_name = "probe-polynomials";
  report.parameters = {{"h2_grid", txt(h2_grid.start) + ".." + txt(h2_grid.end)},
                       {"h3_grid", txt(h3_grid.start) + ".." + txt(h3_grid.end)}};
  report.range_scanned = "3x^2-2x+3 > 0 on the h2 grid and at sample points <= 1; "
                         "17x^4-57x^3+105x^2-91x+54 > 0 on the h3 grid";
  std::vector<Rational> quadratic_points = h2_grid.points();
  for (const Rational& extra : {Rational(-10), Rational(-1), frac(-1, 3), Rational(0), frac(1, 3), Rational(1)}) {
    quadratic_points.push_back(extra);
  }
  for (const auto& x : quadratic_points) {
    const Rational v = h2_derivative_polynomial(x);
    if (v.sign() <= 0) {
      report.fail({"x=" + txt(x), "3x^2-2x+3 > 0", {{"value", v}}});
      break;
    }
  }
  for (const auto& x : h3_grid.points()) {
    const Rational v = h3_derivative_polynomial(x);
    if (v.sign() <= 0) {
      report.fail({"x=" + txt(x), "17x^4-57x^3+105x^2-91x+54 > 0", {{"value", v}}});
      break;
    }
  }
  report.critical_values.push_back({"3x^2-2x+3 at 0", h2_derivative_polynomial(0)});
  report.critical_values.push_back({"3x^2-2x+3 at 1/3", h2_derivative_polynomial(frac(1, 3))});
  report.critical_values.push_back({"quartic at 4", h3_derivative_polynomial(4)});
  return report;
}

VerificationReport probe_b_sequences(long n_max) {
  if (n_max < 5) throw DomainError("probe_b_sequences needs n_max >= 5");
  VerificationReport report;
  report.check_name = "probe-b-sequences";
  report.parameters = {{"n_max", num(n_max)}};
  report.range_scanned = "b_2 decreasing on [3, " + num(n_max) + "], b_3 decreasing on [4, " + num(n_max) + "]";
  if (b2(3) != frac(1, 2) || !(b2(3) < frac(5, 9))) report.fail({"n=3", "b_2(3) = 1/2 < 5/9", {{"b_2(3)", b2(3)}}});
  if (b3(4) != frac(328, 625)) report.fail({"n=4", "b_3(4) = 328/625", {{"b_3(4)", b3(4)}}});
  Rational previous = b2(3);
  for (long n = 4; n <= n_max && report.passed; ++n) {
    const Rational current = b2(n);
    if (!(current < previous)) report.fail({"n=" + num(n), "b_2(n) < b_2(n-1)", {{"b_2(n-1)", previous}, {"b_2(n)", current}}});
    previous = current;
  }
  previous = b3(4);
  for (long n = 5; n <= n_max && report.passed; ++n) {
    const Rational current = b3(n);
    if (!(current < previous)) report.fail({"n=" + num(n), "b_3(n) < b_3(n-1)", {{"b_3(n-1)", previous}, {"b_3(n)", current}}});
    previous = current;
  }
  report.critical_values.push_back({"b_2(3)", b2(3)});
  report.critical_values.push_back({"b_2(4)", b2(4)});
  report.critical_values.push_back({"b_3(4)", b3(4)});
  report.critical_values.push_back({"b_3(5)", b3(5)});
  report.notes.emplace_back(kA34Erratum);
  return report;
}

VerificationReport probe_gk_monotone(long r, long n, long sample_count) {
  if (r < 1 || n < r || sample_count < 2) throw DomainError("probe_gk_monotone needs n >= r >= 1 and >= 2 samples");
  VerificationReport report;
  report.check_name = "probe-gk r=" + num(r) + " n=" + num(n);
  report.parameters = {{"r", num(r)}, {"n", num(n)}, {"samples", num(sample_count)}};
  report.range_scanned = "g_k increasing on (r/(n+1), r/n] for k in [" + num(r) + ", " + num(n) + "]";
  const FamilySpec family{Family::pascal, r};
  const ParameterInterval interval = piece_interval(family, n);
  const auto samples = piece_samples(family, n, sample_count);
  for (long k = r; k <= n && report.passed; ++k) {
    Rational previous = pascal_g(r, k, interval.lo);  // limit value at the open endpoint
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Rational& p = samples[i];
      const Rational value = pascal_g(r, k, p);
      if (!(previous < value)) {
        report.fail({"k=" + num(k) + " p=" + txt(p), "g_k increasing", {{"previous", previous}, {"g_k(p)", value}}});
        break;
      }
      // Interior samples: the derivative factor r/k - p is positive.
      if (i + 1 < samples.size() && (frac(r, k) - p).sign() <= 0) {
        report.fail({"k=" + num(k) + " p=" + txt(p), "r/k - p > 0", {{"r/k - p", frac(r, k) - p}}});
        break;
      }
      previous = value;
    }
  }
  report.critical_values.push_back({"g_" + num(r) + "(r/(n+1))", pascal_g(r, r, interval.lo)});
  report.critical_values.push_back({"g_" + num(n) + "(r/n)", pascal_g(r, n, interval.hi)});
  return report;
}

VerificationReport verify_binomial_poisson_limit(long k, const std::vector<long>& n_list, const VerifyOptions& options) {
  if (k < 0) throw DomainError("k must be >= 0");
  if (n_list.size() < 2) throw DomainError("need at least two n values");
  for (long n : n_list) {
    if (n <= k + 1) throw DomainError("every n must exceed k+1");
  }
  VerificationReport report;
  report.check_name = "binomial-poisson-limit k=" + num(k);
  std::string list;
  for (long n : n_list) list += (list.empty() ? "" : " ") + num(n);
  report.parameters = {{"k", num(k)}, {"n_list", list}};
  report.range_scanned = "|P(B(n,(k+1)/n) >= k+1) - P(X_{k+1} >= k+1)| decreasing along n = " + list;

  std::vector<Rational> tails;
  for (long n : n_list) tails.push_back(binomial_tail_geq(BinomialParams(n, frac(k + 1, n)), k + 1));
  const auto gap = [&](std::size_t i, int bits) {
    const CertifiedReal poisson_tail = Rational(1) - poisson_cdf_leq(PoissonParams(Rational(k + 1)), k, bits);
    return (poisson_tail - tails[i]).abs();
  };
  sweep(report, n_list.size() - 1, options.jobs, [&](std::size_t i) {
    return require_sign([&](int bits) { return gap(i, bits) - gap(i + 1, bits); }, Sign::positive, options,
                        "n=" + num(n_list[i]) + " -> " + num(n_list[i + 1]), "gap decreases");
  });
  report.critical_values.push_back(
      {"P(X_" + num(k + 1) + " >= " + num(k + 1) + ")",
       Rational(1) - poisson_cdf_leq(PoissonParams(Rational(k + 1)), k, options.precision_bits)});
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    report.critical_values.push_back({"gap at n=" + num(n_list[i]), gap(i, options.precision_bits)});
  }
  return report;
}

}  // namespace chvatal
