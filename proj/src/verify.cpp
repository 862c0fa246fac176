#include "eisen/verify.hpp"

#include "eisen/amplifier.hpp"
#include "eisen/errors.hpp"
#include "eisen/harness.hpp"

#include <algorithm>
#include <cmath>

namespace eisen {

namespace {

using Json = nlohmann::ordered_json;

class Assertions {
 public:
  void check(const std::string& name, bool ok, Json detail = {}) {
    Json a;
    a["name"] = name;
    a["passed"] = ok;
    if (!detail.is_null()) a["detail"] = std::move(detail);
    list_.push_back(std::move(a));
    all_ = all_ && ok;
  }
  bool all() const { return all_; }
  Json list() const { return list_; }

 private:
  Json list_ = Json::array();
  bool all_ = true;
};

Json grid_json(const GridSpec& g) {
  return {{"x_range", {g.x0, g.x1}}, {"y_range", {g.y0, g.y1}}, {"nx", g.nx}, {"ny", g.ny}, {"T_list", g.T_list}};
}

Json bound_json(const BoundReport& r) {
  const BoundSample& a = r.argmax;
  return {{"name", r.name},
          {"fitted_C", r.fitted_C},
          {"argmax", {{"x", a.x}, {"y", a.y}, {"sigma", a.sigma}, {"t", a.t}, {"ratio", a.ratio}}},
          {"samples", r.samples.size()},
          {"quad_rel_err", r.quad_rel_err}};
}

double drift(double coarse, double fine) { return std::abs(fine / coarse - 1.0); }

Json verify_lemma1(Assertions& as, const FourierOptions& opt) {
  GridSpec g;
  g.T_list = {10, 20, 40, 80, 160};
  Lemma1Report coarse = lemma1_check(g, opt);
  Lemma1Report fine = lemma1_check(g.refined(), opt);
  const double de = drift(coarse.e.fitted_C, fine.e.fitted_C), df = drift(coarse.f.fitted_C, fine.f.fitted_C);
  as.check("E constant finite", std::isfinite(coarse.e.fitted_C) && std::isfinite(fine.e.fitted_C));
  as.check("F constant finite", std::isfinite(coarse.f.fitted_C) && std::isfinite(fine.f.fitted_C));
  as.check("E constant drift under refinement < 25%", de < 0.25, de);
  as.check("F constant drift under refinement < 25%", df < 0.25, df);
  return {{"grid", grid_json(g)},
          {"refined_grid", grid_json(g.refined())},
          {"E", bound_json(coarse.e)},
          {"E_refined", bound_json(fine.e)},
          {"F", bound_json(coarse.f)},
          {"F_refined", bound_json(fine.f)}};
}

Json verify_lemma2(Assertions& as, const FourierOptions& opt) {
  Lemma2Spec spec;
  Lemma2Report rep = lemma2_check(spec, opt);
  for (const BoundReport* r : {&rep.decay, &rep.strip, &rep.bessel})
    as.check(r->name + " constant finite", std::isfinite(r->fitted_C) && r->fitted_C > 0, r->fitted_C);
  as.check("|F| < 1e-20 for y >= 3t, t >= 10", rep.beyond_ok, rep.beyond.argmax.observed);
  // at sigma = 2, t = 0 the ratio should fall with y at every x
  bool falling = true;
  for (double x : spec.xs) {
    double prev = INFINITY;
    for (const BoundSample& s : rep.decay.samples) {
      if (s.sigma != 2.0 || s.t != 0.0 || s.x != x) continue;
      falling = falling && s.ratio < prev;
      prev = s.ratio;
    }
  }
  as.check("sigma = 2, t = 0: |F| y^{sigma-1} decreasing in y", falling);
  return {{"decay", bound_json(rep.decay)},
          {"strip", bound_json(rep.strip)},
          {"beyond", bound_json(rep.beyond)},
          {"kbessel", bound_json(rep.bessel)}};
}

// The fitted constant at T is the largest ratio over T + {0, 1/2, 1, 3/2}.
Json verify_pointwise(Assertions& as, const VerifyOptions& vo, const FourierOptions& opt) {
  const UpperHalfPoint z(vo.x.value_or(0.2), vo.y.value_or(1.1));
  Json rows = Json::array();
  double first = 0, running = 0, worst_quad = 0;
  for (double T : {20.0, 40.0, 80.0, 160.0}) {
    double ce = 0, cf = 0;
    for (int j = 0; j < 4; ++j) {
      PointwiseReport p = pointwise_integral_check(z, T + 0.5 * j, 128, opt);
      ce = std::max(ce, p.e.fitted_C);
      cf = std::max(cf, p.f.fitted_C);
      worst_quad = std::max(worst_quad, p.e.quad_rel_err);
    }
    if (first == 0) first = ce;
    running = std::max(running, ce);
    rows.push_back({{"T", T}, {"C_E", ce}, {"C_F", cf}, {"running_C_E", running}});
  }
  as.check("fitted C does not grow by more than 30%", running <= 1.3 * first, running / first);
  as.check("quadrature self-consistency < 1%", worst_quad < 0.01, worst_quad);
  return {{"z", {z.x(), z.y()}}, {"rows", rows}};
}

Json verify_is_a12(Assertions& as, const VerifyOptions& vo, const FourierOptions& opt) {
  const UpperHalfPoint z(vo.x.value_or(0.3), vo.y.value_or(1.2));
  const double N = vo.N.value_or(20);
  std::vector<double> Ts{20, 40, 80}, Cs;
  Json rows = Json::array();
  double worst_quad = 0;
  for (double T : Ts) {
    BoundReport r = is_a12_check(z, T, N, opt);
    Cs.push_back(r.fitted_C);
    worst_quad = std::max(worst_quad, r.quad_rel_err);
    rows.push_back({{"T", T}, {"C", r.fitted_C}, {"lhs", r.argmax.observed}, {"rhs", r.argmax.bound}});
  }
  const double slope = loglog_slope(Ts, Cs);
  as.check("fitted C grows slower than T^0.2", slope < 0.2, slope);
  as.check("quadrature self-consistency < 1%", worst_quad < 0.01, worst_quad);
  return {{"z", {z.x(), z.y()}}, {"N", N}, {"rows", rows}, {"slope", slope}};
}

Json verify_balogh(Assertions& as, const Config& cfg, const FourierOptions& opt) {
  const EnvelopeConstants k{cfg.envelope_C, cfg.envelope_c};
  EnvelopeGrid g;
  BoundReport coarse = envelope_check(g, k, opt.bessel, opt.tol);
  BoundReport fine = envelope_check(g.refined(), k, opt.bessel, opt.tol);
  int seen[3] = {0, 0, 0};
  for (const BoundSample& s : fine.samples) ++seen[static_cast<int>(s.x)];
  const double d = drift(coarse.fitted_C, fine.fitted_C);
  as.check("envelope constant finite", std::isfinite(coarse.fitted_C) && std::isfinite(fine.fitted_C));
  as.check("drift under refinement < 20%", d < 0.2, d);
  as.check("all three regimes sampled", seen[0] > 0 && seen[1] > 0 && seen[2] > 0,
           {{"oscillatory", seen[0]}, {"transition", seen[1]}, {"decay", seen[2]}});
  return {{"t_range", {g.t0, g.t1}},
          {"u_over_t", {g.u_lo, g.u_hi}},
          {"constants", {{"C", k.C}, {"c", k.c}}},
          {"coarse", bound_json(coarse)},
          {"refined", bound_json(fine)}};
}

Json verify_amplifier(Assertions& as, const VerifyOptions& vo, const Config& cfg) {
  const double N = vo.N.value_or(1e4);
  if (2 * N > double(cfg.sieve_limit)) throw ResourceError("2N exceeds the configured sieve_limit");
  const SpfTable table(static_cast<std::uint64_t>(std::ceil(2 * N)));
  Json rows = Json::array();
  std::vector<AmplifierVariant> picks;
  double worst = 0;
  for (double t : {30.0, 60.0, 120.0}) {
    AmplifierReport r = amplifier_report(N, t, t, table);
    double ratio = r.direct.real() / r.predicted_with_corrections.real();
    worst = std::max(worst, std::abs(ratio - 1));
    picks.push_back(r.selected);
    rows.push_back({{"t", t},
                    {"direct", r.direct.real()},
                    {"predicted_with_corrections", r.predicted_with_corrections.real()},
                    {"ratio_corrected", ratio},
                    {"variant_ratio_numerator", r.variant_ratio_numerator},
                    {"variant_ratio_denominator", r.variant_ratio_denominator},
                    {"selected", std::string(to_string(r.selected))},
                    {"selected_tracks", r.selected_tracks}});
  }
  const bool consistent = std::all_of(picks.begin(), picks.end(), [&](auto v) { return v == picks.front(); });
  as.check("one main-term variant selected at every t", consistent, std::string(to_string(picks.front())));
  as.check("corrected prediction within 25%", worst < 0.25, worst);
  return {{"N", N}, {"rows", rows}};
}

}  // namespace

const std::vector<std::string>& verify_subjects() {
  static const std::vector<std::string> s{"lemma1", "lemma2", "pointwise", "amplifier", "balogh", "is-a12"};
  return s;
}

Json run_verify(const std::string& subject, const VerifyOptions& vo, const Config& cfg, const FourierOptions& opt) {
  Assertions as;
  Json body;
  if (subject == "lemma1")
    body = verify_lemma1(as, opt);
  else if (subject == "lemma2")
    body = verify_lemma2(as, opt);
  else if (subject == "pointwise")
    body = verify_pointwise(as, vo, opt);
  else if (subject == "is-a12")
    body = verify_is_a12(as, vo, opt);
  else if (subject == "balogh")
    body = verify_balogh(as, cfg, opt);
  else if (subject == "amplifier")
    body = verify_amplifier(as, vo, cfg);
  else
    throw DomainError("unknown verify subject '" + subject + "'");
  Json out;
  out["subject"] = subject;
  out["passed"] = as.all();
  out["assertions"] = as.list();
  out["results"] = std::move(body);
  return out;
}

}  // namespace eisen
