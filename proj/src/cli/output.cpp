#include <ostream>

#include "chvatal/cli.hpp"

namespace chvatal::cli {
namespace {

using nlohmann::ordered_json;

Rational ten_to_minus(int digits) {
  BigInt den = 1;
  for (int i = 0; i < digits; ++i) den *= 10;
  return Rational(BigInt(1), den);
}

struct Rendered {
  std::string exact;
  std::string decimal;
  std::string radius;
};

Rendered render(const RealValue& value, int digits) {
  if (const auto* q = std::get_if<Rational>(&value)) return {csv_quote(q->str()), decimal_text(*q, digits), "0"};
  const auto& ball = std::get<CertifiedReal>(value);
  return {"", decimal_text(ball.midpoint(), digits), ball.radius().scientific_upper(3)};
}

}  // namespace

std::string csv_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string decimal_text(const Rational& q, int digits) {
  if (!q.is_zero() && q.abs() < ten_to_minus(digits)) return q.scientific_upper(digits);
  return q.decimal(digits);
}

void CsvWriter::write(const Row& row) {
  if (!header_written_) {
    std::string header;
    for (const auto& column : row) {
      if (!header.empty()) header += ',';
      if (std::holds_alternative<std::optional<RealValue>>(column.value)) {
        header += column.name + "_exact," + column.name + "_decimal," + column.name + "_radius";
      } else {
        header += column.name;
      }
    }
    out_ << header << '\n';
    header_written_ = true;
  }
  std::string line;
  bool first = true;
  for (const auto& column : row) {
    if (!first) line += ',';
    first = false;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>) {
            line += csv_quote(v);
          } else if constexpr (std::is_same_v<T, long>) {
            line += std::to_string(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            line += v ? "true" : "false";
          } else {
            if (v) {
              const Rendered r = render(*v, digits_);
              line += r.exact + ',' + r.decimal + ',' + r.radius;
            } else {
              line += ",,";
            }
          }
        },
        column.value);
  }
  out_ << line << '\n';
}

ordered_json value_json(const RealValue& value, int digits) {
  ordered_json j;
  if (const auto* q = std::get_if<Rational>(&value)) {
    j["exact"] = q->str();
    j["decimal"] = decimal_text(*q, digits);
  } else {
    const auto& ball = std::get<CertifiedReal>(value);
    j["midpoint_decimal"] = decimal_text(ball.midpoint(), digits);
    j["radius_decimal"] = ball.radius().scientific_upper(3);
    j["precision_bits"] = ball.precision_bits();
  }
  return j;
}

ordered_json row_json(const Row& row, int digits) {
  ordered_json j = ordered_json::object();
  for (const auto& column : row) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::optional<RealValue>>) {
            j[column.name] = v ? value_json(*v, digits) : ordered_json(nullptr);
          } else {
            j[column.name] = v;
          }
        },
        column.value);
  }
  return j;
}

ordered_json report_json(const VerificationReport& report, int digits) {
  ordered_json j;
  j["check_name"] = report.check_name;
  ordered_json parameters = ordered_json::object();
  for (const auto& [key, value] : report.parameters) parameters[key] = value;
  j["parameters"] = parameters;
  j["range_scanned"] = report.range_scanned;
  j["passed"] = report.passed;
  j["undecided"] = report.undecided;
  if (report.counterexample) {
    ordered_json cx;
    cx["input"] = report.counterexample->input;
    cx["relation"] = report.counterexample->relation;
    ordered_json actual = ordered_json::array();
    for (const auto& [label, value] : report.counterexample->actual) {
      actual.push_back({{"label", label}, {"value", value_json(value, digits)}});
    }
    cx["actual"] = actual;
    j["counterexample"] = cx;
  } else {
    j["counterexample"] = nullptr;
  }
  ordered_json critical = ordered_json::array();
  for (const auto& c : report.critical_values) {
    critical.push_back({{"label", c.label}, {"value", value_json(c.value, digits)}});
  }
  j["critical_values"] = critical;
  j["notes"] = report.notes;
  return j;
}

std::vector<Row> report_rows(const VerificationReport& report) {
  std::vector<Row> rows;
  const auto add = [&](const char* kind, std::string label, std::optional<RealValue> value = std::nullopt) {
    rows.push_back({{"check_name", report.check_name},
                    {"kind", std::string(kind)},
                    {"label", std::move(label)},
                    {"value", std::move(value)}});
  };
  add("status", report.passed ? "passed" : (report.undecided ? "undecided" : "failed"));
  for (const auto& [key, value] : report.parameters) add("parameter", key + "=" + value);
  add("range", report.range_scanned);
  if (report.counterexample) {
    add("counterexample", report.counterexample->input + ": " + report.counterexample->relation);
    for (const auto& [label, value] : report.counterexample->actual) add("counterexample-value", label, value);
  }
  for (const auto& c : report.critical_values) add("critical", c.label, c.value);
  for (const auto& note : report.notes) add("note", note);
  return rows;
}

}  // namespace chvatal::cli
