#include "hypconv/commands.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hypconv/error.hpp"
#include "hypconv/parallel.hpp"

namespace hypconv {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string describe(const OrderOfConvexity& k) {
  std::string s(to_string(k.kind));
  if (k.has_value()) s += " " + format_double(k.value);
  return s;
}

bool inadmissible(const Params& p, CommandResult& out) {
  const Admissibility adm = check_admissibility(p);
  if (adm.usable()) return false;
  out.record.kappa = OrderOfConvexity::undefined();
  out.record.warnings.push_back("inadmissible parameters: " + join(adm.raised(), ", "));
  out.exit_code = kExitBadParams;
  return true;
}

void apply_closed(const Params& p, double tol, CommandResult& out) {
  const KappaClosedForm k = kappa_closed_form(p, tol);
  out.record.kappa = k.kappa;
  out.record.regime = k.regime;
  for (const std::string& w : k.warnings) out.record.warnings.push_back(w);
  for (const RuleOutcome& o : k.also_fired)
    out.record.warnings.push_back("also fired: " + std::string(to_string(o.match.rule)) +
                                  (o.match.swapped ? " (a<->b)" : "") + " gives " + describe(o.kappa));
  if (!k.consistent) out.exit_code = kExitInconsistent;
}

// Compares the closed form with the oracle; returns the exit code it implies.
int compare(const OrderOfConvexity& closed, const NumericKappa& n, std::vector<std::string>& warnings) {
  if (!n.kappa) {
    warnings.push_back("oracle inconclusive");
    return kExitOk;
  }
  const OrderOfConvexity& num = *n.kappa;
  if (num.kind == KappaKind::Undefined) {
    std::ostringstream os;
    os << "oracle: (zF)' vanishes near z = " << format_double(n.zeros.location.real()) << " + "
       << format_double(n.zeros.location.imag()) << "i";
    warnings.push_back(os.str());
    return kExitDerivativeZero;
  }
  if (closed.kind == KappaKind::Uncovered) return kExitOk;
  if (closed.kind == KappaKind::Finite && num.kind == KappaKind::Finite) {
    const double d = std::abs(closed.value - num.value);
    warnings.push_back("discrepancy |closed - numeric| = " + format_double(d));
    return d <= kOracleTolerance ? kExitOk : kExitInconsistent;
  }
  if (closed.kind == KappaKind::LowerBoundOnly && num.kind == KappaKind::Finite) {
    warnings.push_back("numeric - bound = " + format_double(num.value - closed.value));
    return num.value >= closed.value - kBoundSlack ? kExitOk : kExitInconsistent;
  }
  if ((closed.kind == KappaKind::MinusInfinity) == (num.kind == KappaKind::MinusInfinity)) return kExitOk;
  warnings.push_back("closed form gives " + describe(closed) + ", oracle gives " + describe(num));
  return kExitInconsistent;
}

}  // namespace

CommandResult run_kappa(const Params& p, Method method, double tol, const ScanConfig& cfg) {
  CommandResult out;
  out.record.params = p;
  out.record.method = method;
  if (inadmissible(p, out)) return out;

  try {
    if (method != Method::Numeric) apply_closed(p, tol, out);
    if (method == Method::Closed) {
      if (out.record.kappa.kind == KappaKind::Uncovered && out.exit_code == kExitOk) out.exit_code = kExitUncovered;
      return out;
    }
    const NumericKappa n = estimate_kappa(p, cfg);
    out.record.oracle = summarize(n);
    if (method == Method::Numeric) {
      out.record.kappa = n.kappa ? *n.kappa : OrderOfConvexity::uncovered();
      if (!n.kappa) out.record.warnings.push_back("oracle inconclusive");
      if (n.zeros.found) {
        std::ostringstream os;
        os << "(zF)' vanishes near z = " << format_double(n.zeros.location.real()) << " + "
           << format_double(n.zeros.location.imag()) << "i";
        out.record.warnings.push_back(os.str());
        out.exit_code = kExitDerivativeZero;
      }
      return out;
    }
    const int code = compare(out.record.kappa, n, out.record.warnings);
    if (out.exit_code == kExitOk) out.exit_code = code;
  } catch (const Error& e) {
    out.record.warnings.push_back(e.what());
    out.exit_code = e.code() == ErrorCode::DerivativeZero ? kExitDerivativeZero : kExitInconsistent;
  }
  return out;
}

CommandResult run_classify(const Params& p, double tol) {
  CommandResult out;
  out.record.params = p;
  out.record.method = Method::Closed;
  if (inadmissible(p, out)) return out;
  apply_closed(p, tol, out);

  bool convex = false;
  bool not_convex = false;
  for (const PredicateVerdict& v : convexity_predicates(p)) {
    if (!v.fired) continue;
    out.record.predicates.push_back({v.match.rule, v.verdict});
    (v.verdict == Convexity::Convex ? convex : not_convex) = true;
  }
  const OrderOfConvexity& k = out.record.kappa;
  std::vector<std::string> conflicts;
  if (convex && not_convex) conflicts.push_back("predicates report both convex and not convex");
  if (convex && k.has_value() && k.value < -1e-10)
    conflicts.push_back("convex by predicate but kappa is " + describe(k));
  if (not_convex && k.has_value() && k.value > 1e-10)
    conflicts.push_back("not convex by predicate but kappa is " + describe(k));
  for (const std::string& c : conflicts) out.record.warnings.push_back("inconsistent: " + c);
  if (!conflicts.empty()) out.exit_code = kExitInconsistent;
  if (out.exit_code == kExitOk && k.kind == KappaKind::Uncovered && out.record.predicates.empty())
    out.exit_code = kExitUncovered;
  return out;
}

std::vector<double> parse_axis(const std::string& spec) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument, "cannot read '" + std::string(s) + "' in range '" + spec + "'");
    return v;
  };
  const std::size_t first = spec.find(':');
  if (first == std::string::npos) return {number(spec)};
  const std::size_t second = spec.find(':', first + 1);
  if (second == std::string::npos) throw Error(ErrorCode::InvalidArgument, "range '" + spec + "' is not lo:hi:n");
  const std::string_view sv(spec);
  const double lo = number(sv.substr(0, first));
  const double hi = number(sv.substr(first + 1, second - first - 1));
  const double count = number(sv.substr(second + 1));
  if (count < 1.0 || count != std::floor(count) || count > 1e6)
    throw Error(ErrorCode::InvalidArgument, "range '" + spec + "' needs a positive integer count");
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  return out;
}

std::vector<OutputRecord> run_scan(const std::vector<double>& as, const std::vector<double>& bs,
                                   const std::vector<double>& cs, Method method, double tol, const ScanConfig& cfg,
                                   unsigned threads) {
  std::vector<Params> points;
  for (double a : as)
    for (double b : bs)
      for (double c : cs) points.push_back({a, b, c});
  ScanConfig inner = cfg;
  inner.threads = 1;
  std::vector<OutputRecord> out(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    try {
      out[i] = run_kappa(points[i], method, tol, inner).record;
    } catch (const std::exception& e) {
      out[i].params = points[i];
      out[i].method = method;
      out[i].warnings.push_back(std::string("error: ") + e.what());
    }
  });
  return out;
}

}  // namespace hypconv
