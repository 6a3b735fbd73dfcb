#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "chvatal/cli.hpp"

namespace chvatal::cli {
namespace {

using nlohmann::ordered_json;

Rational frac(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

void append(std::vector<VerificationReport>& to, VerificationReport report) { to.push_back(std::move(report)); }

std::pair<Rational, Rational> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw DomainError("range must look like a..b: '" + text + "'");
  return {Rational::parse(text.substr(0, dots)), Rational::parse(text.substr(dots + 2))};
}

long to_long(const Rational& q, const char* what) {
  if (!q.is_integer() || !q.numerator().fits_slong_p()) throw DomainError(std::string(what) + " must be an integer");
  return q.numerator().get_si();
}

Rational required(const std::string& text, const char* flag) {
  if (text.empty()) throw DomainError(std::string("missing ") + flag);
  return Rational::parse(text);
}

struct Sink {
  const RunConfig& config;
  std::ostream& out;
  std::optional<CsvWriter> csv;

  Sink(const RunConfig& c, std::ostream& o) : config(c), out(o) {
    if (config.format == Format::csv) csv.emplace(out, config.digits);
  }
  void json(const ordered_json& j) { out << j.dump(2) << '\n'; }
};

// --- compute -----------------------------------------------------------------

struct ComputeArgs {
  std::string family;
  std::string p;
  std::string lambda;
  long r = 0;
  long n = 0;
  bool has_threshold = false;
  long threshold = 0;
};

int cmd_compute(const ComputeArgs& a, Sink& sink) {
  std::string parameters;
  long threshold = 0;
  RealValue value = Rational(0);
  const int bits = sink.config.precision_bits;
  if (a.family == "binomial") {
    const BinomialParams params(a.n, required(a.p, "--p"));
    parameters = "n=" + std::to_string(a.n) + " p=" + params.p.str();
    threshold = a.has_threshold ? a.threshold : (Rational(a.n) * params.p).floor().get_si();
    value = binomial_cdf_leq(params, threshold);
  } else {
    const Family family = parse_family(a.family);
    const FamilySpec spec{family, family == Family::pascal ? a.r : 1};
    Rational parameter;
    if (family == Family::poisson) {
      parameter = PoissonParams(required(a.lambda, "--lambda")).lambda;
      parameters = "lambda=" + parameter.str();
      threshold = parameter.floor().get_si();
      value = a.has_threshold ? RealValue(poisson_cdf_leq(PoissonParams(parameter), a.threshold, bits))
                              : mean_tail(spec, parameter, bits);
    } else if (family == Family::geometric) {
      parameter = GeometricParams(required(a.p, "--p")).p;
      parameters = "p=" + parameter.str();
      threshold = parameter.reciprocal().floor().get_si();
      value = a.has_threshold ? RealValue(geometric_cdf_leq(GeometricParams(parameter), a.threshold))
                              : mean_tail(spec, parameter, bits);
    } else {
      const PascalParams params(a.r, required(a.p, "--p"));
      parameter = params.p;
      parameters = "r=" + std::to_string(a.r) + " p=" + parameter.str();
      threshold = (Rational(a.r) / parameter).floor().get_si();
      value = a.has_threshold ? RealValue(pascal_cdf_leq(params, a.threshold)) : mean_tail(spec, parameter, bits);
    }
    if (a.has_threshold) threshold = a.threshold;
  }
  const Row row{{"family", a.family}, {"parameters", parameters}, {"threshold", threshold}, {"value", value_cell(value)}};
  if (sink.csv) {
    sink.csv->write(row);
  } else {
    sink.json(row_json(row, sink.config.digits));
  }
  return kExitPass;
}

// --- scan --------------------------------------------------------------------

struct ScanArgs {
  std::string family;
  long r = 1;
  std::string pieces;
  std::string grid;
  long count = 16;
};

FamilySpec family_spec(const std::string& name, long r) {
  const Family family = parse_family(name);
  if (family == Family::pascal && r < 1) throw DomainError("pascal needs --r >= 1");
  return {family, family == Family::pascal ? r : 1};
}

int cmd_scan(const ScanArgs& a, Sink& sink) {
  const FamilySpec spec = family_spec(a.family, a.r);
  if (a.pieces.empty() == a.grid.empty()) throw DomainError("scan needs exactly one of --pieces or --grid");
  const int bits = sink.config.precision_bits;
  ordered_json rows = ordered_json::array();
  const auto emit = [&](const Row& row) {
    if (sink.csv) {
      sink.csv->write(row);
    } else {
      rows.push_back(row_json(row, sink.config.digits));
    }
  };

  if (!a.pieces.empty()) {
    const auto [lo, hi] = parse_range(a.pieces);
    const long first = to_long(lo, "piece bound");
    const long last = to_long(hi, "piece bound");
    if (last < first) throw DomainError("empty piece range");
    if (first < spec.first_piece()) throw DomainError("pieces of " + spec.label() + " start at " + std::to_string(spec.first_piece()));
    const long chunk = 32L * static_cast<long>(sink.config.jobs);
    for (long from = first; from <= last; from += chunk) {
      const long to = std::min(last, from + chunk - 1);
      for (const auto& piece : piece_decompose(spec, from, to, bits, sink.config.jobs)) {
        emit({{"family", spec.label()},
              {"piece", piece.piece_index},
              {"interval", piece.interval.str()},
              {"infimum", value_cell(piece.piece_infimum)},
              {"attained", piece.attained},
              {"limit_witness", value_cell(piece.limit_witness)}});
      }
      sink.out.flush();
    }
  } else {
    const auto [lo, hi] = parse_range(a.grid);
    if (!(lo < hi) || a.count < 2) throw DomainError("empty grid");
    for (const auto& parameter : ProbeGrid(lo, hi, Spacing::linear, a.count).points()) {
      emit({{"family", spec.label()},
            {"parameter", value_cell(parameter)},
            {"piece", piece_index_of(spec, parameter)},
            {"mean_tail", value_cell(mean_tail(spec, parameter, bits))}});
    }
  }
  if (!sink.csv) sink.json({{"family", spec.label()}, {"rows", rows}});
  return kExitPass;
}

// --- infimum -----------------------------------------------------------------

int cmd_infimum(const std::string& family_name, long r, std::optional<long> bound, Sink& sink) {
  const FamilySpec spec = family_spec(family_name, r);
  const long scan_bound = bound.value_or(std::max(100L, spec.first_piece()));
  const ScanOptions options{sink.config.precision_bits, sink.config.max_precision_bits, sink.config.jobs};
  const InfimumReport report = global_infimum(spec, scan_bound, options);
  std::string notes;
  for (const auto& note : report.notes) notes += (notes.empty() ? "" : "; ") + note;
  const Row row{{"family", spec.label()},
                {"scan_bound", report.scan_bound},
                {"argmin_piece", report.argmin_piece},
                {"infimum", value_cell(report.global_infimum)},
                {"attained", report.attained},
                {"claim", report.claimed_label},
                {"claim_value", value_cell(report.claimed_value)},
                {"agrees_with_claim", report.agrees_with_claim},
                {"undecided", report.undecided},
                {"notes", notes}};
  if (sink.csv) {
    sink.csv->write(row);
  } else {
    ordered_json j = row_json(row, sink.config.digits);
    j.erase("notes");
    j["notes"] = report.notes;
    ordered_json witnesses = ordered_json::array();
    for (const auto& w : report.witnesses) {
      witnesses.push_back({{"parameter", value_json(w.parameter, sink.config.digits)},
                           {"value", value_json(w.value, sink.config.digits)}});
    }
    j["witnesses"] = witnesses;
    sink.json(j);
  }
  if (report.undecided) return kExitUndecided;
  return report.agrees_with_claim ? kExitPass : kExitFail;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const std::string& suite, const SuiteOptions& suite_options, Sink& sink) {
  const VerifyOptions options{sink.config.precision_bits, sink.config.max_precision_bits, sink.config.jobs};
  const auto reports = run_suite(suite, suite_options, options);
  const int code = suite_exit_code(reports);
  if (sink.csv) {
    for (const auto& report : reports) {
      for (const auto& row : report_rows(report)) sink.csv->write(row);
    }
  } else {
    ordered_json keyed = ordered_json::object();
    for (const auto& report : reports) keyed[report.check_name] = report_json(report, sink.config.digits);
    sink.json({{"suite", suite}, {"passed", code == kExitPass}, {"exit_code", code}, {"reports", keyed}});
  }
  return code;
}

// --- constants table ---------------------------------------------------------

int cmd_constants(Sink& sink) {
  std::vector<Row> rows;
  const auto add = [&](std::string label, RealValue value) {
    rows.push_back({{"label", std::move(label)}, {"value", value_cell(std::move(value))}});
  };
  add("1/e", exp_enclosure(Rational(-1), sink.config.precision_bits));
  add("1/2", frac(1, 2));
  add("4/9", pascal_a(2, 2));
  add("27/64", pascal_a(3, 3));
  for (long r = 1; r <= 20; ++r) add("(r/(r+1))^r r=" + std::to_string(r), pascal_a_via_binomial(r, r));
  if (sink.csv) {
    for (const auto& row : rows) sink.csv->write(row);
  } else {
    ordered_json table = ordered_json::array();
    for (const auto& row : rows) table.push_back(row_json(row, sink.config.digits));
    sink.json({{"constants", table}});
  }
  return kExitPass;
}

}  // namespace

std::vector<VerificationReport> run_suite(const std::string& suite, const SuiteOptions& s, const VerifyOptions& options) {
  std::vector<VerificationReport> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "chvatal") {
    known = true;
    append(out, verify_chvatal(s.n_max.value_or(300), options));
  }
  if (all || suite == "poisson") {
    known = true;
    append(out, verify_poisson_increasing(s.k_max.value_or(100), options));
    append(out, verify_poisson_clt({Rational(1), Rational(10), Rational(100), Rational(10000)}, frac(1, 100), options));
    append(out, verify_poisson_lambda_monotone(0, {{frac(1, 2), Rational(1)}}, options));
    append(out, verify_poisson_lambda_monotone(1, {{Rational(1), Rational(2)}}, options));
    append(out, verify_poisson_lambda_monotone(3, {{Rational(2), Rational(3)}}, options));
    for (long k = 0; k <= 2; ++k) append(out, verify_binomial_poisson_limit(k, {10, 100, 1000}, options));
  }
  if (all || suite == "geometric") {
    known = true;
    append(out, verify_geometric(s.n_max.value_or(10000), options));
  }
  if (all || suite == "pascal-identity") {
    known = true;
    const auto samples = pascal_identity_samples(static_cast<std::size_t>(s.samples.value_or(1000)), s.seed, 10, 100, 1000);
    append(out, verify_pascal_identity(samples, options));
  }
  if (all || suite == "pascal-conjecture") {
    known = true;
    const long first = s.r.value_or(1);
    const long last = s.r.value_or(20);
    for (long r = first; r <= last; ++r) append(out, verify_pascal_conjecture(r, s.n_max.value_or(10000), options));
  }
  if (all || suite == "closed-forms") {
    known = true;
    append(out, verify_closed_forms(s.n_max.value_or(2000), options));
  }
  if (all || suite == "probes") {
    known = true;
    append(out, probe_h2(default_h2_grid(), options));
    append(out, probe_h3(default_h3_grid(), options));
    append(out, probe_positivity_polynomials(default_h2_grid(), default_h3_grid()));
    append(out, probe_b_sequences(s.n_max.value_or(1000)));
    append(out, probe_gk_monotone(2, 2, 16));
    append(out, probe_gk_monotone(2, 3, 16));
    append(out, probe_gk_monotone(3, 5, 16));
  }
  if (!known) throw DomainError("unknown suite '" + suite + "'");
  return out;
}

int suite_exit_code(const std::vector<VerificationReport>& reports) {
  bool undecided = false;
  for (const auto& report : reports) {
    if (report.counterexample) return kExitFail;
    if (!report.passed) undecided = true;
  }
  return undecided ? kExitUndecided : kExitPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact mean-tail probabilities P(X <= E[X]) and verification sweeps", "chvatal"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  RunConfig config;
  std::string format = "csv";
  bool constants_table = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.out_path, "Write output to PATH instead of standard output");
  app.add_option("--precision", config.precision_bits, "Starting precision in bits")->check(CLI::Range(8, 1 << 20));
  app.add_option("--max-precision", config.max_precision_bits, "Precision cap in bits")->check(CLI::Range(8, 1 << 20));
  app.add_option("--digits", config.digits, "Digits in decimal columns")->check(CLI::Range(0, 1000));
  app.add_option("--jobs", config.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_flag("--constants-table", constants_table, "Print the table of key constants and exit");

  ComputeArgs compute;
  auto* compute_cmd = app.add_subcommand("compute", "Mean-tail or cdf value for one parameter");
  compute_cmd->add_option("--family", compute.family, "binomial, poisson, geometric or pascal")
      ->required()
      ->check(CLI::IsMember({"binomial", "poisson", "geometric", "pascal"}));
  compute_cmd->add_option("--p", compute.p, "Success probability (a/b or decimal)");
  compute_cmd->add_option("--lambda", compute.lambda, "Poisson mean (a/b or decimal)");
  compute_cmd->add_option("--r", compute.r, "Pascal order");
  compute_cmd->add_option("--n", compute.n, "Binomial trials");
  auto* threshold_opt = compute_cmd->add_option("--threshold", compute.threshold, "P(X <= threshold) instead of the mean-tail");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Per-piece infima or mean-tail on a parameter grid");
  scan_cmd->add_option("--family", scan.family)->required()->check(CLI::IsMember({"poisson", "geometric", "pascal"}));
  scan_cmd->add_option("--r", scan.r, "Pascal order");
  scan_cmd->add_option("--pieces", scan.pieces, "Piece range a..b");
  scan_cmd->add_option("--grid", scan.grid, "Parameter range lo..hi");
  scan_cmd->add_option("--count", scan.count, "Grid points");

  std::string inf_family;
  long inf_r = 1;
  long bound = 0;
  auto* inf_cmd = app.add_subcommand("infimum", "Global infimum over pieces with claim comparison");
  inf_cmd->add_option("--family", inf_family)->required()->check(CLI::IsMember({"poisson", "geometric", "pascal"}));
  inf_cmd->add_option("--r", inf_r, "Pascal order");
  auto* bound_opt = inf_cmd->add_option("--scan-bound,--n-max,--k-max", bound, "Last piece scanned");

  std::string suite;
  SuiteOptions suite_options;
  long n_max = 0, k_max = 0, r = 0, samples = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  auto* n_max_opt = verify_cmd->add_option("--n-max", n_max);
  auto* k_max_opt = verify_cmd->add_option("--k-max", k_max);
  auto* r_opt = verify_cmd->add_option("--r", r);
  auto* samples_opt = verify_cmd->add_option("--samples", samples);
  verify_cmd->add_option("--seed", suite_options.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  if (config.precision_bits > config.max_precision_bits) {
    err << "error: --precision exceeds --max-precision\n";
    return kExitUsage;
  }
  config.format = format == "json" ? Format::json : Format::csv;
  compute.has_threshold = threshold_opt->count() > 0;
  if (n_max_opt->count()) suite_options.n_max = n_max;
  if (k_max_opt->count()) suite_options.k_max = k_max;
  if (r_opt->count()) suite_options.r = r;
  if (samples_opt->count()) suite_options.samples = samples;

  std::ofstream file;
  if (!config.out_path.empty()) {
    file.open(config.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << config.out_path << "\n";
      return kExitUsage;
    }
  }
  std::ostream& dest = config.out_path.empty() ? out : file;
  Sink sink(config, dest);

  try {
    if (constants_table) return cmd_constants(sink);
    if (*compute_cmd) return cmd_compute(compute, sink);
    if (*scan_cmd) return cmd_scan(scan, sink);
    if (*inf_cmd) return cmd_infimum(inf_family, inf_r, bound_opt->count() ? std::optional<long>(bound) : std::nullopt, sink);
    if (*verify_cmd) return cmd_verify(suite, suite_options, sink);
    err << app.help();
    return kExitUsage;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace chvatal::cli
