#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hypconv/convexity.hpp"
#include "hypconv/oracle.hpp"

namespace hypconv {

enum class Method { Closed, Numeric, Both };

std::string_view to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

struct OracleSummary {
  std::vector<double> radii;
  std::vector<double> minima;
  Trend trend = Trend::Inconclusive;
  std::optional<OrderOfConvexity> kappa;
  double uncertainty = 0.0;

  friend bool operator==(const OracleSummary&, const OracleSummary&) = default;
};

OracleSummary summarize(const NumericKappa& n);

struct PredicateLine {
  Rule rule = Rule::None;
  Convexity verdict = Convexity::Convex;

  friend bool operator==(const PredicateLine&, const PredicateLine&) = default;
};

/// One result per invocation.
struct OutputRecord {
  Params params;
  Method method = Method::Closed;
  OrderOfConvexity kappa;
  RegimeMatch regime;
  std::optional<OracleSummary> oracle;
  /// Fired convexity predicates (classify only).
  std::vector<PredicateLine> predicates;
  std::vector<std::string> warnings;

  friend bool operator==(const OutputRecord& x, const OutputRecord& y) {
    return x.params.a == y.params.a && x.params.b == y.params.b && x.params.c == y.params.c &&
           x.method == y.method && x.kappa == y.kappa && x.regime == y.regime && x.oracle == y.oracle &&
           x.predicates == y.predicates && x.warnings == y.warnings;
  }
};

nlohmann::json to_json(const OutputRecord& r);
/// Throws InvalidArgument on a malformed record.
OutputRecord record_from_json(const nlohmann::json& j);

/// x with 17 significant digits (trailing zeros dropped), '.' as decimal
/// separator regardless of locale; "nan", "inf", "-inf" for non-finite x.
std::string format_double(double x);

/// a,b,c,kind,kappa,regime,warnings
std::string csv_header();
std::string csv_row(const OutputRecord& r);

/// Multi-line human-readable form.
std::string to_text(const OutputRecord& r);

}  // namespace hypconv
