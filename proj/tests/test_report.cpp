#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

#include "hypconv/commands.hpp"
#include "hypconv/error.hpp"

using namespace hypconv;

namespace {

const ScanConfig kStandard = ScanConfig::standard();

void round_trip(const OutputRecord& r) {
  const std::string text = to_json(r).dump();
  const OutputRecord back = record_from_json(nlohmann::json::parse(text));
  CHECK(back == r);
  CHECK(to_json(back).dump() == text);
}

bool has_warning_starting(const OutputRecord& r, const std::string& prefix) {
  for (const std::string& w : r.warnings)
    if (w.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("method names") {
  for (Method m : {Method::Closed, Method::Numeric, Method::Both}) CHECK(method_from_string(to_string(m)) == m);
  CHECK_FALSE(method_from_string("fast").has_value());
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.25) == "-0.25");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(2.0 / 3.0) == "0.66666666666666663");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(std::stod(format_double(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("kappa command exit codes") {
  const CommandResult ok = run_kappa({1, 1, 3}, Method::Both, 1e-10, kStandard);
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.record.regime.rule == Rule::ThmA1Case1);
  REQUIRE(ok.record.oracle.has_value());
  CHECK(has_warning_starting(ok.record, "discrepancy |closed - numeric| = "));

  const CommandResult nec = run_kappa({0.5, 0.5, 1}, Method::Closed, 1e-10, kStandard);
  CHECK(nec.exit_code == kExitOk);
  CHECK(nec.record.kappa.kind == KappaKind::MinusInfinity);
  CHECK(nec.record.regime.rule == Rule::ThmNec1);

  const CommandResult unc = run_kappa({0.9, 0.95, 0.97}, Method::Closed, 1e-10, kStandard);
  CHECK(unc.exit_code == kExitUncovered);
  CHECK(unc.record.kappa.kind == KappaKind::Uncovered);

  const CommandResult bad = run_kappa({1, 1, -2}, Method::Closed, 1e-10, kStandard);
  CHECK(bad.exit_code == kExitBadParams);
  REQUIRE(bad.record.warnings.size() == 1);
  CHECK(bad.record.warnings[0].find("c_pole") != std::string::npos);

  const CommandResult zero = run_kappa({-2, 1, 1}, Method::Numeric, 1e-10, kStandard);
  CHECK(zero.exit_code == kExitDerivativeZero);
  CHECK(zero.record.kappa.kind == KappaKind::Undefined);

  // a coarse scan that settles on the wrong value
  const CommandResult off = run_kappa({1, 1, 3}, Method::Both, 1e-10, ScanConfig::from_radii({0.3, 0.5, 0.7, 0.8}));
  CHECK(off.exit_code == kExitInconsistent);

  // and one that cannot decide
  const CommandResult undecided = run_kappa({1, 1, 3}, Method::Both, 1e-10, ScanConfig::from_radii({0.9, 0.99}));
  CHECK(undecided.exit_code == kExitOk);
  CHECK(has_warning_starting(undecided.record, "oracle inconclusive"));
  REQUIRE(undecided.record.oracle.has_value());
  CHECK(undecided.record.oracle->trend == Trend::Inconclusive);
}

TEST_CASE("lower bounds surface as warnings next to the exact value") {
  const CommandResult r = run_kappa({0.5, 0.5, 2}, Method::Closed, 1e-10, kStandard);
  CHECK(r.record.kappa.kind == KappaKind::Finite);
  CHECK(has_warning_starting(r.record, "also fired: Cor-case1-branch2 gives LowerBoundOnly 0.8611111111111111"));
}

TEST_CASE("classify command") {
  const CommandResult convex = run_classify({0.5, 0.5, 1.75}, 1e-10);
  CHECK(convex.exit_code == kExitOk);
  REQUIRE_FALSE(convex.record.predicates.empty());
  CHECK(convex.record.predicates[0].rule == Rule::CorConvex1);
  CHECK(convex.record.predicates[0].verdict == Convexity::Convex);

  const CommandResult not_convex = run_classify({0.5, 1.5, 1.9}, 1e-10);
  CHECK(not_convex.exit_code == kExitOk);
  bool found = false;
  for (const PredicateLine& p : not_convex.record.predicates)
    found = found || (p.rule == Rule::CorConvex2a && p.verdict == Convexity::NotConvex);
  CHECK(found);

  const CommandResult log = run_classify({1, 1, 2}, 1e-10);
  CHECK(log.exit_code == kExitOk);
  CHECK(log.record.regime.rule == Rule::ThmA1Case1);
  CHECK(log.record.kappa.value == 0.5);
  for (const PredicateLine& p : log.record.predicates) CHECK(p.rule != Rule::ZeroBalancedCor);

  CHECK(run_classify({0.9, 0.95, 0.97}, 1e-10).exit_code == kExitUncovered);
  CHECK(run_classify({0.5, 0.5, 0}, 1e-10).exit_code == kExitBadParams);
}

TEST_CASE("JSON round trip") {
  round_trip(run_kappa({1, 1, 3}, Method::Both, 1e-10, kStandard).record);
  round_trip(run_kappa({0.5, 0.5, 1}, Method::Numeric, 1e-10, kStandard).record);
  round_trip(run_kappa({0.9, 0.95, 0.97}, Method::Closed, 1e-10, kStandard).record);
  round_trip(run_kappa({1, 1, -2}, Method::Closed, 1e-10, kStandard).record);
  round_trip(run_kappa({1, 1, 3}, Method::Both, 1e-10, ScanConfig::from_radii({0.9, 0.99})).record);
  round_trip(run_classify({0.5, 1.5, 1.9}, 1e-10).record);
  round_trip(run_kappa({0.1, 0.7, 1.3}, Method::Both, 1e-10, kStandard).record);
}

TEST_CASE("JSON layout") {
  const nlohmann::json j = to_json(run_kappa({0.5, 0.5, 1}, Method::Closed, 1e-10, kStandard).record);
  for (const char* key : {"a", "b", "c", "kind", "kappa", "regime", "preconditions", "oracle", "warnings"})
    CHECK(j.contains(key));
  CHECK(j["kind"] == "MinusInfinity");
  CHECK(j["kappa"].is_null());
  CHECK(j["oracle"].is_null());
  CHECK(j["preconditions"][0].contains("text"));
  CHECK(j["preconditions"][0].contains("holds"));
}

TEST_CASE("malformed JSON records") {
  using nlohmann::json;
  const json good = to_json(run_kappa({1, 1, 2}, Method::Closed, 1e-10, kStandard).record);
  for (const char* key : {"a", "kind", "regime", "warnings"}) {
    json j = good;
    j.erase(key);
    CHECK_THROWS_AS(record_from_json(j), Error);
  }
  json j = good;
  j["kind"] = "Huge";
  CHECK_THROWS_AS(record_from_json(j), Error);
  j = good;
  j["a"] = "one";
  CHECK_THROWS_AS(record_from_json(j), Error);
}

TEST_CASE("CSV rows") {
  CHECK(csv_header() == "a,b,c,kind,kappa,regime,warnings");
  CHECK(csv_row(run_kappa({1, 1, 1.5}, Method::Closed, 1e-10, kStandard).record) ==
        "1,1,1.5,Finite,-0.25,Thm-a1-case2,");
  CHECK(csv_row(run_kappa({0.5, 0.5, 1}, Method::Closed, 1e-10, kStandard).record) ==
        "0.5,0.5,1,MinusInfinity,,Thm-nec-1,");
  OutputRecord r;
  r.params = {0.1, 2, 3};
  r.warnings = {"x, y", "say \"hi\""};
  CHECK(csv_row(r) == "0.10000000000000001,2,3,Uncovered,,none,\"x, y; say \"\"hi\"\"\"");
}

TEST_CASE("text output") {
  const std::string t = to_text(run_kappa({1, 1, 1.5}, Method::Closed, 1e-10, kStandard).record);
  CHECK(t.find("kappa: -0.25 (Finite)") != std::string::npos);
  CHECK(t.find("regime: Thm-a1-case2") != std::string::npos);
  CHECK(t.find("[x] a = 1") != std::string::npos);
}

TEST_CASE("parse_axis") {
  CHECK(parse_axis("0.5") == std::vector<double>{0.5});
  CHECK(parse_axis("1:3:5") == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
  CHECK(parse_axis("2:1:1") == std::vector<double>{2.0});
  CHECK(parse_axis("-1:1:3") == std::vector<double>{-1.0, 0.0, 1.0});
  for (const char* bad : {"", "x", "1:2", "1:2:0", "1:2:2.5", "1:2:-3", "1:nan:3", "1::3", "0.5 "})
    CHECK_THROWS_AS(parse_axis(bad), Error);
}

TEST_CASE("scan order and determinism") {
  const auto as = parse_axis("0.5"), bs = parse_axis("0.5"), cs = parse_axis("1:3:5");
  const auto one = run_scan(as, bs, cs, Method::Closed, 1e-10, kStandard, 1);
  const auto many = run_scan(as, bs, cs, Method::Closed, 1e-10, kStandard, 4);
  REQUIRE(one.size() == 5);
  REQUIRE(many.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(one[i] == many[i]);
    CHECK(csv_row(one[i]) == csv_row(many[i]));
    CHECK(one[i].params.c == cs[i]);
  }
  // c < 1.75 is the minus infinity window; beyond it exact values with the bounds alongside
  CHECK(one[0].kappa.kind == KappaKind::MinusInfinity);
  CHECK(one[1].kappa.kind == KappaKind::MinusInfinity);
  CHECK(has_warning_starting(one[2], "also fired: Cor-case1-branch2 gives LowerBoundOnly 0.8611111111111111"));
  CHECK(has_warning_starting(one[4], "also fired: Cor-case1-branch1 gives LowerBoundOnly 0.89130434782608"));
  for (std::size_t i = 2; i < 5; ++i) CHECK(one[i].kappa.kind == KappaKind::Finite);

  // lexicographic in (a, b, c)
  const auto grid = run_scan({0.2, 0.4}, {1.0, 2.0}, {3.0, 4.0}, Method::Closed, 1e-10, kStandard, 3);
  REQUIRE(grid.size() == 8);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Params& x = grid[i - 1].params;
    const Params& y = grid[i].params;
    CHECK(std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c));
  }
}

TEST_CASE("scan of one point matches the kappa command") {
  const Params p{0.75, 1.5, 2};
  const auto rows = run_scan({p.a}, {p.b}, {p.c}, Method::Both, 1e-10, kStandard, 2);
  REQUIRE(rows.size() == 1);
  CHECK(csv_row(rows[0]) == csv_row(run_kappa(p, Method::Both, 1e-10, kStandard).record));
}

TEST_CASE("scan rows keep going past bad points") {
  const auto rows = run_scan({1.0}, {1.0}, {-1.0, 2.0}, Method::Closed, 1e-10, kStandard, 2);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].warnings.empty());
  CHECK(rows[1].kappa.kind == KappaKind::Finite);
}
