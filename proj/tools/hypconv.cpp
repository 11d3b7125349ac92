// hypconv: order of convexity of z 2F1(a,b;c;z), closed forms and a numerical
// infimum oracle.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "hypconv/commands.hpp"
#include "hypconv/error.hpp"

using namespace hypconv;

namespace {

struct Common {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool json = false;
};

void add_params(CLI::App* cmd, Common& o) {
  cmd->add_option("--a", o.a, "parameter a")->required();
  cmd->add_option("--b", o.b, "parameter b")->required();
  cmd->add_option("--c", o.c, "parameter c")->required();
}

ScanConfig scan_config(const std::vector<double>& radii, int samples) {
  ScanConfig cfg = radii.empty() ? ScanConfig::standard() : ScanConfig::from_radii(radii);
  cfg.theta_samples = samples;
  return cfg;
}

// Output goes to --out when given, standard output otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int emit(const CommandResult& r, bool json, bool csv) {
  if (json) {
    std::cout << to_json(r.record).dump(2) << "\n";
  } else if (csv) {
    std::cout << csv_header() << "\n" << csv_row(r.record) << "\n";
  } else {
    std::cout << to_text(r.record);
  }
  if (r.exit_code == kExitBadParams) {
    for (const std::string& w : r.record.warnings) std::cerr << "hypconv: " << w << "\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order of convexity of z 2F1(a,b;c;z) for real parameters"};
  app.require_subcommand(1);

  Common common;
  std::string method_name = "closed";
  double tol = 1e-10;
  bool csv = false;
  std::vector<double> radii;
  int samples = 4096;

  auto* kappa = app.add_subcommand("kappa", "closed-form and/or numerical kappa");
  add_params(kappa, common);
  kappa->add_option("--method", method_name, "closed, numeric or both")
      ->check(CLI::IsMember({"closed", "numeric", "both"}));
  kappa->add_option("--tol", tol, "closed-form cross-check tolerance")->check(CLI::PositiveNumber);
  kappa->add_option("--radii", radii, "oracle radii in (0,1), increasing")->delimiter(',');
  kappa->add_option("--samples", samples, "angles per circle")->check(CLI::Range(3, 1 << 22));
  kappa->add_flag("--json", common.json, "print the JSON record");
  kappa->add_flag("--csv", csv, "print a CSV header and row");

  auto* classify = app.add_subcommand("classify", "convexity predicates and kappa");
  add_params(classify, common);
  classify->add_flag("--json", common.json, "print the JSON record");

  std::string a_range, b_range, c_range, out_path;
  unsigned threads = 0;
  auto* scan = app.add_subcommand("scan", "kappa over a parameter grid, as CSV");
  scan->add_option("--a", a_range, "lo:hi:n or a value")->required();
  scan->add_option("--b", b_range, "lo:hi:n or a value")->required();
  scan->add_option("--c", c_range, "lo:hi:n or a value")->required();
  scan->add_option("--method", method_name, "closed, numeric or both")
      ->check(CLI::IsMember({"closed", "numeric", "both"}));
  scan->add_option("--tol", tol, "closed-form cross-check tolerance")->check(CLI::PositiveNumber);
  scan->add_option("--radii", radii, "oracle radii in (0,1), increasing")->delimiter(',');
  scan->add_option("--samples", samples, "angles per circle")->check(CLI::Range(3, 1 << 22));
  scan->add_option("--threads", threads, "worker threads (0: all cores)");
  scan->add_option("--out", out_path, "CSV file (default: standard output)");

  double r = 0.999;
  double theta = 0.0;
  auto* profile = app.add_subcommand("profile", "Re W on the circle |z| = r, as CSV");
  add_params(profile, common);
  profile->add_option("--r", r, "radius in (0,1)");
  profile->add_option("--samples", samples, "uniform angles before refinement")->check(CLI::Range(3, 1 << 22));
  profile->add_option("--out", out_path, "CSV file (default: standard output)");

  auto* eval = app.add_subcommand("eval", "2F1(a,b;c;z) at z = r e^{i theta}");
  add_params(eval, common);
  eval->add_option("--r", r, "modulus in [0,1]");
  eval->add_option("--theta", theta, "argument");
  eval->add_flag("--json", common.json, "print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitBadParams;
  }

  const Params p{common.a, common.b, common.c};
  const Method method = *method_from_string(method_name);
  try {
    if (*kappa) return emit(run_kappa(p, method, tol, scan_config(radii, samples)), common.json, csv);
    if (*classify) return emit(run_classify(p, tol), common.json, false);

    if (*scan) {
      const auto records = run_scan(parse_axis(a_range), parse_axis(b_range), parse_axis(c_range), method, tol,
                                    scan_config(radii, samples), threads);
      Sink sink(out_path);
      sink.stream() << csv_header() << "\n";
      for (const OutputRecord& rec : records) sink.stream() << csv_row(rec) << "\n";
      return kExitOk;
    }

    if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c) || !check_admissibility(p).usable()) {
      std::cerr << "hypconv: inadmissible parameters: ";
      const auto flags = check_admissibility(p).raised();
      for (std::size_t i = 0; i < flags.size(); ++i) std::cerr << (i ? ", " : "") << flags[i];
      std::cerr << "\n";
      return kExitBadParams;
    }

    if (*profile) {
      if (!(r > 0.0 && r < 1.0)) {
        std::cerr << "hypconv: --r must lie in (0, 1)\n";
        return kExitBadParams;
      }
      const auto points = boundary_profile(p, r, samples);
      Sink sink(out_path);
      sink.stream() << "theta,re_w\n";
      for (const ProfilePoint& pt : points) sink.stream() << format_double(pt.theta) << ',' << format_double(pt.re_w) << "\n";
      return kExitOk;
    }

    if (*eval) {
      if (!(r >= 0.0 && r <= 1.0)) {
        std::cerr << "hypconv: --r must lie in [0, 1]\n";
        return kExitBadParams;
      }
      const EvalResult res = eval_auto(p, DiskPoint::on_circle(1.0 - r, theta));
      if (common.json) {
        nlohmann::json j{{"a", p.a},
                         {"b", p.b},
                         {"c", p.c},
                         {"re", res.value.real()},
                         {"im", res.value.imag()},
                         {"error_bound", res.error_bound},
                         {"terms", res.terms_used}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "value: " << format_double(res.value.real()) << (res.value.imag() < 0 ? " - " : " + ")
                  << format_double(std::abs(res.value.imag())) << "i\n"
                  << "error_bound: " << format_double(res.error_bound) << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "hypconv: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::DerivativeZero: return kExitDerivativeZero;
      case ErrorCode::InvalidArgument:
      case ErrorCode::Pole:
      case ErrorCode::CPole:
      case ErrorCode::PreconditionViolated: return kExitBadParams;
      default: return kExitInconsistent;
    }
  }
  return kExitOk;
}
