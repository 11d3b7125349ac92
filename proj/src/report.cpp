#include "hypconv/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hypconv/error.hpp"

namespace hypconv {

using nlohmann::json;

namespace {

json kappa_value(const OrderOfConvexity& k) {
  if (k.has_value() && std::isfinite(k.value)) return k.value;
  return nullptr;
}

OrderOfConvexity kappa_from(const json& kind, const json& value) {
  const auto parsed = kappa_kind_from_string(kind.get<std::string>());
  if (!parsed) throw Error(ErrorCode::InvalidArgument, "unknown kind " + kind.dump());
  OrderOfConvexity k{*parsed};
  if (!value.is_null()) k.value = value.get<double>();
  return k;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Shortest text that reads back to x.
std::string short_double(double x) {
  if (!std::isfinite(x)) return format_double(x);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string kappa_text(const OrderOfConvexity& k) {
  switch (k.kind) {
    case KappaKind::Finite: return short_double(k.value);
    case KappaKind::LowerBoundOnly: return ">= " + short_double(k.value);
    case KappaKind::MinusInfinity: return "-inf";
    case KappaKind::Undefined: return "undefined";
    case KappaKind::Uncovered: return "uncovered";
  }
  return "uncovered";
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Closed: return "closed";
    case Method::Numeric: return "numeric";
    case Method::Both: return "both";
  }
  return "closed";
}

std::optional<Method> method_from_string(std::string_view s) {
  for (Method m : {Method::Closed, Method::Numeric, Method::Both})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

OracleSummary summarize(const NumericKappa& n) {
  OracleSummary s;
  for (const RadiusMinimum& m : n.scan.per_radius_min) {
    s.radii.push_back(m.radius);
    s.minima.push_back(m.min_re_w);
  }
  s.trend = n.scan.trend;
  s.kappa = n.kappa;
  s.uncertainty = n.uncertainty;
  return s;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json to_json(const OutputRecord& r) {
  json j;
  j["a"] = r.params.a;
  j["b"] = r.params.b;
  j["c"] = r.params.c;
  j["method"] = std::string(to_string(r.method));
  j["kind"] = std::string(to_string(r.kappa.kind));
  j["kappa"] = kappa_value(r.kappa);
  j["regime"] = std::string(to_string(r.regime.rule));
  j["swapped"] = r.regime.swapped;
  j["p"] = r.regime.p_value;
  j["preconditions"] = json::array();
  for (const Condition& c : r.regime.preconditions) j["preconditions"].push_back({{"text", c.text}, {"holds", c.holds}});
  if (r.oracle) {
    const OracleSummary& o = *r.oracle;
    json oj{{"radii", o.radii}, {"minima", o.minima}, {"trend", std::string(to_string(o.trend))}};
    if (o.kappa) {
      oj["kind"] = std::string(to_string(o.kappa->kind));
      oj["kappa"] = kappa_value(*o.kappa);
    }
    oj["uncertainty"] = o.uncertainty;
    j["oracle"] = oj;
  } else {
    j["oracle"] = nullptr;
  }
  if (!r.predicates.empty()) {
    j["predicates"] = json::array();
    for (const PredicateLine& p : r.predicates)
      j["predicates"].push_back({{"rule", std::string(to_string(p.rule))}, {"verdict", std::string(to_string(p.verdict))}});
  }
  j["warnings"] = r.warnings;
  return j;
}

OutputRecord record_from_json(const json& j) {
  try {
    OutputRecord r;
    r.params = {j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>()};
    const auto method = method_from_string(j.at("method").get<std::string>());
    if (!method) throw Error(ErrorCode::InvalidArgument, "unknown method");
    r.method = *method;
    r.kappa = kappa_from(j.at("kind"), j.at("kappa"));
    const auto rule = rule_from_string(j.at("regime").get<std::string>());
    if (!rule) throw Error(ErrorCode::InvalidArgument, "unknown regime " + j.at("regime").dump());
    r.regime.rule = *rule;
    r.regime.swapped = j.at("swapped").get<bool>();
    r.regime.p_value = j.at("p").get<double>();
    for (const json& c : j.at("preconditions"))
      r.regime.preconditions.push_back({c.at("text").get<std::string>(), c.at("holds").get<bool>()});
    if (const json& oj = j.at("oracle"); !oj.is_null()) {
      OracleSummary o;
      o.radii = oj.at("radii").get<std::vector<double>>();
      o.minima = oj.at("minima").get<std::vector<double>>();
      const auto trend = trend_from_string(oj.at("trend").get<std::string>());
      if (!trend) throw Error(ErrorCode::InvalidArgument, "unknown trend");
      o.trend = *trend;
      if (oj.contains("kind")) o.kappa = kappa_from(oj.at("kind"), oj.at("kappa"));
      o.uncertainty = oj.at("uncertainty").get<double>();
      r.oracle = o;
    }
    if (j.contains("predicates")) {
      for (const json& p : j.at("predicates")) {
        const auto prule = rule_from_string(p.at("rule").get<std::string>());
        if (!prule) throw Error(ErrorCode::InvalidArgument, "unknown predicate rule");
        const std::string v = p.at("verdict").get<std::string>();
        r.predicates.push_back({*prule, v == "convex" ? Convexity::Convex : Convexity::NotConvex});
      }
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed record: ") + e.what());
  }
}

std::string csv_header() { return "a,b,c,kind,kappa,regime,warnings"; }

std::string csv_row(const OutputRecord& r) {
  std::string warnings;
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    if (i) warnings += "; ";
    warnings += r.warnings[i];
  }
  std::ostringstream os;
  os << format_double(r.params.a) << ',' << format_double(r.params.b) << ',' << format_double(r.params.c) << ','
     << to_string(r.kappa.kind) << ',' << (r.kappa.has_value() ? format_double(r.kappa.value) : "") << ','
     << to_string(r.regime.rule) << ',' << csv_field(warnings);
  return os.str();
}

std::string to_text(const OutputRecord& r) {
  std::ostringstream os;
  os << "a = " << short_double(r.params.a) << ", b = " << short_double(r.params.b)
     << ", c = " << short_double(r.params.c) << "\n";
  os << "kappa: " << kappa_text(r.kappa) << " (" << to_string(r.kappa.kind) << ")\n";
  if (r.method != Method::Numeric) {
    os << "regime: " << to_string(r.regime.rule) << (r.regime.swapped ? " with a and b exchanged" : "") << "\n";
    os << "p = c - 1 - a - b + ab = " << short_double(r.regime.p_value) << "\n";
    for (const Condition& c : r.regime.preconditions) os << "  [" << (c.holds ? "x" : " ") << "] " << c.text << "\n";
  }
  for (const PredicateLine& p : r.predicates) os << "predicate " << to_string(p.rule) << ": " << to_string(p.verdict) << "\n";
  if (r.oracle) {
    const OracleSummary& o = *r.oracle;
    os << "oracle: " << to_string(o.trend);
    if (o.kappa) os << ", kappa " << kappa_text(*o.kappa);
    if (o.kappa && o.kappa->kind == KappaKind::Finite) os << " +- " << short_double(o.uncertainty);
    os << "\n";
    for (std::size_t i = 0; i < o.radii.size(); ++i)
      os << "  r = " << short_double(o.radii[i]) << "  min Re W = " << short_double(o.minima[i]) << "\n";
  }
  for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace hypconv
