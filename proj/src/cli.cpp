#include "eisen/cli.hpp"

#include "eisen/amplifier.hpp"
#include "eisen/cache.hpp"
#include "eisen/config.hpp"
#include "eisen/errors.hpp"
#include "eisen/harness.hpp"
#include "eisen/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace eisen {

namespace {

using Json = nlohmann::ordered_json;

// Parse failures that CLI11 cannot see (bad domain strings, empty ranges).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Output path that cannot be written.
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config_path;
  std::string cache_dir;
  std::optional<double> tol;

  // eval
  double x = 0, y = 1, t = 0, sigma = 0.5;
  // scan
  double T_min = 0, T_max = 0;
  std::optional<double> T_step, T_factor;
  std::string domain = "0,0.5,1,2";
  std::string grid = "33x65";
  std::string out_path;
  // amplifier
  double N = 0, r = 0;
  // verify
  std::string subject;
  std::optional<double> vx, vy, vN;
  std::string report_path;
  // budget
  double T = 0;
};

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

std::vector<double> split_numbers(const std::string& s, char sep) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse '" + s + "'");
    }
    if (used != item.size()) throw UsageError("cannot parse '" + s + "'");
    v.push_back(d);
  }
  return v;
}

std::vector<double> T_range(const Flags& f) {
  if (!(f.T_min >= 1.0) || !(f.T_max >= f.T_min)) throw UsageError("empty or invalid T range");
  if (f.T_step.has_value() == f.T_factor.has_value()) throw UsageError("give exactly one of --T-step, --T-factor");
  if ((f.T_step && !(*f.T_step > 0)) || (f.T_factor && !(*f.T_factor > 1)))
    throw UsageError("--T-step must be positive and --T-factor above 1");
  std::vector<double> Ts;
  for (int k = 0;; ++k) {
    double T = f.T_step ? f.T_min + k * *f.T_step : f.T_min * std::pow(*f.T_factor, k);
    if (T > f.T_max * (1 + 1e-12)) break;
    Ts.push_back(T);
    if (Ts.size() > 10000) throw UsageError("T range has more than 10000 points");
  }
  return Ts;
}

class Session {
 public:
  explicit Session(const Flags& f) {
    cfg_ = config_from_environment();
    if (!f.config_path.empty()) cfg_ = load_config_file(f.config_path, cfg_);
    if (!f.cache_dir.empty()) cfg_.cache_dir = f.cache_dir;
    if (f.tol) cfg_.default_tol = *f.tol;
    cfg_.validate();
    opt_.tol = cfg_.default_tol;
    if (!cfg_.cache_dir.empty()) {
      cache_ = std::make_unique<BesselCache>(cache_file_in(cfg_.cache_dir));
      opt_.bessel = cache_->provider(nullptr, "k_bessel", cfg_.precision_digits);
    }
  }

  const Config& config() const { return cfg_; }
  const FourierOptions& options() const { return opt_; }

 private:
  Config cfg_;
  FourierOptions opt_;
  std::unique_ptr<BesselCache> cache_;
};

Json cmd_eval(const Flags& f, const Session& s) {
  const UpperHalfPoint z(f.x, f.y);
  const Reduction red = reduce_to_fundamental_domain(z);
  const UpperHalfPoint& w = red.point;
  EisensteinValue v = (f.sigma == 0.5 && f.t >= 1.0) ? e_critical(w, f.t, s.options())
                                                     : eisenstein_fourier(w, SpectralPoint(f.sigma, f.t), s.options());
  return {{"x", f.x},
          {"y", f.y},
          {"sigma", f.sigma},
          {"t", f.t},
          {"reduced", w.x() != z.x() || w.y() != z.y()},
          {"reduced_x", w.x()},
          {"reduced_y", w.y()},
          {"value_re", v.value.real()},
          {"value_im", v.value.imag()},
          {"abs_err", v.abs_err},
          {"n_terms", v.n_terms_used}};
}

Json cmd_scan(const Flags& f, const Session& s) {
  GridSpec g;
  std::vector<double> d = split_numbers(f.domain, ',');
  if (d.size() != 4) throw UsageError("--domain takes x0,x1,y0,y1");
  g.x0 = d[0];
  g.x1 = d[1];
  g.y0 = d[2];
  g.y1 = d[3];
  std::vector<double> n = split_numbers(f.grid, 'x');
  if (n.size() != 2 || n[0] != std::floor(n[0]) || n[1] != std::floor(n[1])) throw UsageError("--grid takes NXxNY");
  g.nx = static_cast<int>(n[0]);
  g.ny = static_cast<int>(n[1]);
  g.T_list = T_range(f);
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  std::ofstream csv(f.out_path);
  if (!csv) throw OutputError("cannot write " + f.out_path);
  SupnormScan scan = supnorm_scan(g, s.options());
  csv << "T,M_T,argmax_x,argmax_y,ratio_T38\n";
  for (const SupnormRow& r : scan.rows)
    csv << format_double(r.T) << ',' << format_double(r.M) << ',' << format_double(r.argmax_x) << ','
        << format_double(r.argmax_y) << ',' << format_double(r.ratio_T38) << '\n';
  csv.close();
  if (!csv) throw OutputError("write failed for " + f.out_path);

  Json rows = Json::array();
  for (const SupnormRow& r : scan.rows)
    rows.push_back({{"T", r.T}, {"M_T", r.M}, {"argmax_x", r.argmax_x}, {"argmax_y", r.argmax_y},
                    {"ratio_T38", r.ratio_T38}});
  Json out = {{"out", f.out_path}, {"rows", rows}};
  if (std::isfinite(scan.fitted_exponent)) out["fitted_exponent"] = scan.fitted_exponent;
  return out;
}

Json cmd_amplifier(const Flags& f, const Session& s) {
  if (2 * f.N > double(s.config().sieve_limit)) throw ResourceError("2N exceeds the configured sieve_limit");
  if (!(f.N >= 10)) throw DomainError("amplifier length must be at least 10");
  const SpfTable table(static_cast<std::uint64_t>(std::ceil(2 * f.N)));
  AmplifierReport r = amplifier_report(f.N, f.t, f.r, table);
  return {{"N", r.N},
          {"t", r.t},
          {"r", r.r},
          {"eta", r.eta},
          {"direct", r.direct.real()},
          {"predicted_main", r.predicted_main.real()},
          {"predicted_with_corrections", r.predicted_with_corrections.real()},
          {"ratio_corrected", r.direct.real() / r.predicted_with_corrections.real()},
          {"variant_ratio_numerator", r.variant_ratio_numerator},
          {"variant_ratio_denominator", r.variant_ratio_denominator},
          {"selected", std::string(to_string(r.selected))},
          {"selected_tracks", r.selected_tracks}};
}

Json cmd_budget(const Flags& f) {
  Budget b = budget(f.T, f.y);
  return {{"T", f.T}, {"y", f.y}, {"regime", to_string(b.regime)}, {"N", b.N}, {"predicted", b.predicted}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eisenstein series evaluation and verification"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Flags f;
  app.add_option("--config", f.config_path, "key=value configuration file");
  app.add_option("--cache-dir", f.cache_dir, "Bessel cache directory");
  app.add_option("--tol", f.tol, "relative tolerance per Bessel term");

  CLI::App* eval = app.add_subcommand("eval", "E(z, s) at one point");
  eval->add_option("--x", f.x)->required();
  eval->add_option("--y", f.y)->required();
  eval->add_option("--t", f.t)->required();
  eval->add_option("--sigma", f.sigma);

  CLI::App* scan = app.add_subcommand("scan", "sup-norm scan over a rectangle");
  scan->add_option("--T-min", f.T_min)->required();
  scan->add_option("--T-max", f.T_max)->required();
  scan->add_option("--T-step", f.T_step, "additive step");
  scan->add_option("--T-factor", f.T_factor, "geometric step");
  scan->add_option("--domain", f.domain, "x0,x1,y0,y1");
  scan->add_option("--grid", f.grid, "NXxNY");
  scan->add_option("--out", f.out_path)->required();

  CLI::App* amp = app.add_subcommand("amplifier", "direct amplifier sum against its predictions");
  amp->add_option("--N", f.N)->required();
  amp->add_option("--t", f.t)->required();
  amp->add_option("--r", f.r)->required();

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("subject", f.subject)->required()->check(CLI::IsMember(verify_subjects()));
  verify->add_option("--x", f.vx);
  verify->add_option("--y", f.vy);
  verify->add_option("--N", f.vN);
  verify->add_option("--out", f.report_path, "report file (default verify_<subject>.json)");

  CLI::App* bud = app.add_subcommand("budget", "amplifier length and predicted bound");
  bud->add_option("--T", f.T)->required();
  bud->add_option("--y", f.y)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    out << error_json("parse", e.what()).dump() << '\n';
    return exit_parse;
  }

  try {
    if (bud->parsed()) {
      out << cmd_budget(f).dump() << '\n';
      return exit_ok;
    }
    std::unique_ptr<Session> owned;
    try {
      owned = std::make_unique<Session>(f);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    } catch (const ResourceError& e) {
      throw OutputError(e.what());
    }
    const Session& session = *owned;
    if (eval->parsed()) {
      out << cmd_eval(f, session).dump() << '\n';
    } else if (scan->parsed()) {
      out << cmd_scan(f, session).dump() << '\n';
    } else if (amp->parsed()) {
      out << cmd_amplifier(f, session).dump() << '\n';
    } else if (verify->parsed()) {
      VerifyOptions vo{f.vx, f.vy, f.vN};
      Json report = run_verify(f.subject, vo, session.config(), session.options());
      const std::string path = f.report_path.empty() ? "verify_" + f.subject + ".json" : f.report_path;
      std::ofstream file(path);
      if (!file) throw OutputError("cannot write " + path);
      file << report.dump(2) << '\n';
      if (!file) throw OutputError("write failed for " + path);
      out << report.dump() << '\n';
      return report["passed"].get<bool>() ? exit_ok : exit_assertion;
    }
    return exit_ok;
  } catch (const UsageError& e) {
    out << error_json("parse", e.what()).dump() << '\n';
    return exit_parse;
  } catch (const OutputError& e) {
    out << error_json("output", e.what()).dump() << '\n';
    return exit_output;
  } catch (const Error& e) {
    out << error_json(to_string(e.kind()), e.what()).dump() << '\n';
    return exit_evaluation;
  } catch (const std::exception& e) {
    err << "eisen: " << e.what() << '\n';
    out << error_json("internal", e.what()).dump() << '\n';
    return exit_evaluation;
  }
}

}  // namespace eisen
