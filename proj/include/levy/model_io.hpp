#pragma once

/// \file model_io.hpp
/// \brief Model files (line-oriented `key = value` text, see docs/format.md),
/// their canonical serialization, and deterministic JSON reports.

#include "levy/bernstein.hpp"
#include "levy/symbol.hpp"
#include "levy/zero_set.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace levy {

inline constexpr const char* kToolVersion = "1.0.0";

/// Syntax or semantic error with its position and the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string field, const std::string& message);
  std::size_t        line() const noexcept { return line_; }
  std::size_t        column() const noexcept { return column_; }
  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_, column_;
  std::string field_, message_;
};

/// One scalar entry: an exact rational or a tagged irrational (`sqrt:q`, `pi:q`).
struct ModelValue {
  std::optional<Rational> exact;
  std::string             tag;       ///< "sqrt" or "pi" for irrational entries
  Rational                argument;  ///< q of the tag
  double                  value = 0;

  static ModelValue rational(Rational q);
  std::string       to_string() const;
  bool operator==(const ModelValue& o) const {
    return exact == o.exact && tag == o.tag && argument == o.argument;
  }
};

struct ModelAtom {
  ModelValue              mass;
  std::vector<ModelValue> location;
  bool operator==(const ModelAtom&) const = default;
};

struct BernsteinSpec {
  std::string                       family;  ///< power, log, resolvent, semigroup, linear, custom
  std::map<std::string, ModelValue> parameters;
  std::vector<std::pair<ModelValue, ModelValue>> atoms;  ///< custom: (mass, location)
  bool operator==(const BernsteinSpec&) const = default;
};

struct GridSpec {
  ModelValue  period;
  std::size_t points = 0;
  bool operator==(const GridSpec&) const = default;
};

struct CheckSpec {
  std::string name;
  double      tolerance;
  bool operator==(const CheckSpec&) const = default;
};

struct ModelFile {
  std::string                  name;
  std::size_t                  dimension = 0;
  std::vector<ModelValue>      drift;       ///< n entries
  std::vector<ModelValue>      covariance;  ///< n*n entries, row-major
  std::vector<ModelAtom>       atoms;
  std::optional<BernsteinSpec> bernstein;
  std::optional<GridSpec>      grid;
  std::vector<CheckSpec>       checks;

  /// No tagged irrational entry in drift, covariance or atoms.
  bool        is_exact() const;
  LevyTriplet triplet() const;
  bool operator==(const ModelFile&) const = default;
};

/// Parses and validates (the triplet must pass validate_triplet).
ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::string& path);
/// Canonical text: fractions in lowest terms, fixed key order.
std::string serialize_model(const ModelFile& model);

BernsteinFunction make_bernstein(const BernsteinSpec& spec);

/// FNV-1a (64-bit) of the canonical serialization, as 16 hex digits.
std::string model_hash(const ModelFile& model);

struct ReportOptions {
  double                     tolerance = 1e-10;  ///< harmonic / fixed-point tolerance
  std::optional<std::size_t> grid_points;
  std::optional<double>      grid_period;
  bool                       force_numeric = false;
};

struct CheckResult {
  std::string name;
  double      value;      ///< residual or discrepancy
  double      tolerance;
  bool        pass;
  std::string detail;
};

struct Report {
  std::string                    model_name;
  std::string                    hash;
  LiouvilleVerdict               verdict;
  std::optional<Corollary2Check> crosscheck;
  std::vector<CheckResult>       checks;
  ReportOptions                  options;

  bool all_pass() const;
};

/// Checks run when the model lists none.
std::vector<std::string> default_checks(const ModelFile& model);

Report build_report(const ModelFile& model, const ReportOptions& options = {});
/// Deterministic JSON (fixed key order, no timestamps), two-space indent.
std::string report_json(const Report& report);

std::string method_name(VerdictMethod m);

}  // namespace levy
