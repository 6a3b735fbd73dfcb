#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chvatal/verification.hpp"
#include "json.hpp"

namespace chvatal::cli {

enum class Format { csv, json };

struct RunConfig {
  int precision_bits = kDefaultPrecisionBits;
  int max_precision_bits = kMaxPrecisionBits;
  Format format = Format::csv;
  std::string out_path;  // empty: standard output
  int digits = 12;
  unsigned jobs = 1;
};

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndecided = 3;

/// A value cell expands to three CSV columns: <name>_exact, <name>_decimal, <name>_radius.
using Cell = std::variant<std::string, long, bool, std::optional<RealValue>>;

struct Column {
  std::string name;
  Cell value;
};
using Row = std::vector<Column>;

inline Cell value_cell(RealValue v) { return std::optional<RealValue>(std::move(v)); }

std::string csv_quote(std::string_view text);

/// Fixed-point with `digits` fractional digits; values too small to show fall
/// back to scientific notation.
std::string decimal_text(const Rational& q, int digits);

/// Writes the header on the first row, then one LF-terminated line per row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int digits) : out_(out), digits_(digits) {}
  void write(const Row& row);

 private:
  std::ostream& out_;
  int digits_;
  bool header_written_ = false;
};

nlohmann::ordered_json value_json(const RealValue& value, int digits);
nlohmann::ordered_json row_json(const Row& row, int digits);
nlohmann::ordered_json report_json(const VerificationReport& report, int digits);

/// Flattened CSV form of a report: check_name, kind, label, value.
std::vector<Row> report_rows(const VerificationReport& report);

/// Suite parameters; unset fields take each suite's default.
struct SuiteOptions {
  std::optional<long> n_max;
  std::optional<long> k_max;
  std::optional<long> r;
  std::optional<long> samples;
  std::uint64_t seed = 20240601;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"chvatal",          "poisson",      "geometric", "pascal-identity",
                                              "pascal-conjecture", "closed-forms", "probes",    "all"};
  return names;
}

/// Runs one named suite; throws DomainError on an unknown name.
std::vector<VerificationReport> run_suite(const std::string& suite, const SuiteOptions& suite_options,
                                          const VerifyOptions& options);

/// 0 if every report passed, 1 if any has a counterexample, otherwise 3.
int suite_exit_code(const std::vector<VerificationReport>& reports);

/// Entry point; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chvatal::cli
