// Command-line front end: construct sample curves, check metric properties,
// evaluate the universal length bound, certify the construction inequalities,
// and export width profiles. Exit codes: 0 = pass, 1 = a check or certificate
// reported a violation, 2 = usage or data error.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eelkit/checkers.hpp"
#include "eelkit/constructions.hpp"
#include "eelkit/core.hpp"
#include "eelkit/curve.hpp"
#include "eelkit/polyline_io.hpp"
#include "eelkit/rectifiability.hpp"
#include "eelkit/report_json.hpp"
#include "eelkit/sphere_net.hpp"

namespace {

using nlohmann::ordered_json;

double parse_number(const std::string& s, const char* what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e || !std::isfinite(v))
    throw eelkit::DomainError(std::string("cannot parse ") + what + ": '" + s + "'");
  return v;
}

// Accepts a plain literal or the exact token 1/sqrt5.
double parse_lambda(const std::string& s) {
  if (s == "1/sqrt5") return 1.0 / std::sqrt(5.0);
  return parse_number(s, "lambda");
}

std::size_t parse_count(const std::string& s, const char* what) {
  const double v = parse_number(s, what);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9e15)
    throw eelkit::DomainError(std::string(what) + " must be a nonnegative integer: '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_vector(const std::string& s, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    out.push_back(parse_number(s.substr(pos, comma - pos), what));
    pos = comma + 1;
  }
  return out;
}

std::string underscored(std::string s) {
  for (char& ch : s)
    if (ch == '-') ch = '_';
  return s;
}

eelkit::Property property_from(const std::string& token) {
  const std::string t = underscored(token);
  for (eelkit::Property p :
       {eelkit::Property::lambda_curve, eelkit::Property::lambda_cone,
        eelkit::Property::self_contracted, eelkit::Property::self_expanded,
        eelkit::Property::noncollinear, eelkit::Property::conical_split,
        eelkit::Property::lyapunov})
    if (t == eelkit::property_name(p)) return p;
  throw eelkit::DomainError("unknown property: " + token);
}

bool property_needs_lambda(eelkit::Property p) {
  return p != eelkit::Property::self_contracted && p != eelkit::Property::self_expanded;
}

eelkit::CertLemma lemma_from(const std::string& token) {
  const std::string t = underscored(token);
  for (eelkit::CertLemma l :
       {eelkit::CertLemma::helix_self_expanded, eelkit::CertLemma::z_axis,
        eelkit::CertLemma::small_cylinder, eelkit::CertLemma::radial_segment,
        eelkit::CertLemma::big_cylinder})
    if (t == eelkit::cert_lemma_name(l)) return l;
  throw eelkit::DomainError("unknown lemma: " + token);
}

void write_meta(const std::string& path, const ordered_json& meta) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw eelkit::DomainError("cannot open for writing: " + path);
  os << meta.dump(2) << "\n";
  if (!os) throw eelkit::DomainError("write failed: " + path);
}

struct ConstructOpts {
  std::string kind;
  std::string out;
  double step = 1e-2;
  std::string mu = "auto";
  double r = std::numeric_limits<double>::quiet_NaN();
  double a = std::numeric_limits<double>::quiet_NaN();
  long long n = -1;
  std::size_t stages = 3;
  std::size_t cap = 256;
  double t_lo = 0.0;
  double t_hi = 6.0 * M_PI;
  std::string q = "2,0.3,0.3,1";
  std::string x0 = "1,-2";
  double gd_step = 0.2;
  std::size_t iters = 40;
};

int run_construct(const ConstructOpts& o) {
  const std::string k = underscored(o.kind);
  const double mu = (o.mu == "auto") ? eelkit::derive_mu() : parse_number(o.mu, "mu");
  eelkit::SampledCurve c;
  ordered_json meta;
  meta["kind"] = k;
  if (k == "helix") {
    const double r = std::isnan(o.r) ? 1.0 : o.r;
    c = eelkit::helix(r, mu, o.t_lo, o.t_hi, o.step);
    meta["r"] = r;
    meta["mu"] = mu;
    meta["t_lo"] = o.t_lo;
    meta["t_hi"] = o.t_hi;
    meta["step"] = o.step;
  } else if (k == "cylinder_eel") {
    const double r = std::isnan(o.r) ? 0.1 : o.r;
    const double a = std::isnan(o.a) ? 0.2 : o.a;
    const long long n = o.n < 0 ? 35 : o.n;
    const eelkit::EelParams p = eelkit::eel_params(mu);
    c = eelkit::cylinder_eel(r, a, n, p, o.step, o.cap);
    meta["r"] = r;
    meta["a"] = a;
    meta["n"] = n;
    meta["mu"] = p.mu;
    meta["N"] = p.N;
    meta["M"] = p.M;
    meta["lambda"] = p.lambda;
    meta["cap"] = o.cap;
    meta["step"] = o.step;
  } else if (k == "infinite_eel") {
    const eelkit::EelParams p = eelkit::eel_params(mu);
    eelkit::EelDiagnostics diag;
    c = eelkit::infinite_eel(o.stages, p, o.step, o.cap, &diag);
    meta["stages"] = o.stages;
    meta["mu"] = p.mu;
    meta["N"] = p.N;
    meta["M"] = p.M;
    meta["lambda"] = p.lambda;
    meta["cap"] = o.cap;
    meta["step"] = o.step;
    meta["max_norm"] = diag.max_norm;
    ordered_json arr = ordered_json::array();
    for (const auto& sd : diag.stages) {
      ordered_json s;
      s["a"] = sd.a;
      s["r"] = sd.r;
      s["loops"] = sd.loops;
      if (!std::isnan(sd.gap)) {
        s["gap"] = sd.gap;
        s["required_gap"] = sd.required_gap;
        s["gap_slack"] = sd.gap_slack;
        s["segment_cos_z"] = sd.segment_cos_z;
      }
      arr.push_back(std::move(s));
    }
    meta["stage_diagnostics"] = std::move(arr);
  } else if (k == "example3d") {
    c = eelkit::example_curve_3d(o.step);
    meta["step"] = o.step;
  } else if (k == "gradient_descent") {
    const std::vector<double> q = parse_vector(o.q, "q");
    const eelkit::Vec x0 = parse_vector(o.x0, "x0");
    c = eelkit::gradient_descent_trajectory(q, x0, o.gd_step, o.iters);
    meta["q"] = q;
    meta["x0"] = x0;
    meta["step_size"] = o.gd_step;
    meta["iters"] = o.iters;
  } else {
    throw eelkit::DomainError("unknown construction: " + o.kind);
  }
  meta["samples"] = c.count();
  meta["length"] = eelkit::polyline_length(c);
  const std::string base = o.out.empty() ? k : o.out;
  eelkit::write_polyline_csv(base + ".csv", c);
  meta["csv"] = base + ".csv";
  write_meta(base + ".meta.json", meta);
  std::cout << meta.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-curve and eel toolkit: construct, check, bound, certify, export"};
  app.require_subcommand(1);

  ConstructOpts co;
  auto* con = app.add_subcommand("construct", "sample a built-in curve to CSV plus a meta JSON");
  con->add_option("kind", co.kind,
                  "helix | cylinder-eel | infinite-eel | example3d | gradient-descent")
      ->required();
  con->add_option("--out", co.out, "output basename (default: the kind name)");
  con->add_option("--step", co.step, "sampling step");
  con->add_option("--mu", co.mu, "pitch constant, or 'auto' for the derived value");
  con->add_option("--r", co.r, "radius (helix: 1, cylinder-eel: 0.1)");
  con->add_option("--a", co.a, "cylinder floor height (default 0.2)");
  con->add_option("--n", co.n, "cylinder-eel piece count, odd (default 35)");
  con->add_option("--stages", co.stages, "infinite-eel stage count");
  con->add_option("--cap", co.cap, "per-piece sample cap, 0 = uncapped");
  con->add_option("--t-lo", co.t_lo, "helix parameter start");
  con->add_option("--t-hi", co.t_hi, "helix parameter end");
  con->add_option("--q", co.q, "gradient-descent quadratic, row-major comma list");
  con->add_option("--x0", co.x0, "gradient-descent start point, comma list");
  con->add_option("--gd-step", co.gd_step, "gradient-descent step size");
  con->add_option("--iters", co.iters, "gradient-descent iteration count");

  std::string chk_prop, chk_in, chk_lambda;
  double chk_tol = eelkit::kDefaultTol;
  int chk_threads = 0;
  std::size_t chk_start = 0, chk_window = 1;
  auto* chk = app.add_subcommand("check", "check a property of a CSV polyline");
  chk->add_option("property", chk_prop,
                  "lambda-curve | lambda-cone | self-contracted | self-expanded | noncollinear | "
                  "conical-split | lyapunov")
      ->required();
  chk->add_option("--in", chk_in, "input CSV")->required();
  chk->add_option("--lambda", chk_lambda, "lambda value, or 1/sqrt5");
  chk->add_option("--tol", chk_tol, "margin tolerance");
  chk->add_option("--threads", chk_threads, "worker threads (0 = hardware; EELKIT_THREADS wins)");
  chk->add_option("--start", chk_start, "lyapunov anchor sample index");
  chk->add_option("--secant-window", chk_window, "lambda-cone forward-secant smoothing window");

  std::string bnd_in, bnd_lambda;
  std::size_t bnd_d = 0;
  double bnd_diam = 0.0, bnd_tol = eelkit::kDefaultTol;
  int bnd_threads = 0;
  auto* bnd = app.add_subcommand("bound", "universal length bound, valid for lambda < 1/d");
  bnd->add_option("--in", bnd_in, "input CSV (omit when using --diam)");
  bnd->add_option("--lambda", bnd_lambda, "lambda value, or 1/sqrt5")->required();
  bnd->add_option("--d", bnd_d, "ambient dimension")->required();
  bnd->add_option("--diam", bnd_diam, "evaluate the bound for this diameter, no curve needed");
  bnd->add_option("--tol", bnd_tol, "margin tolerance for the hypothesis check");
  bnd->add_option("--threads", bnd_threads, "worker threads");

  std::string cert_lemma = "all", cert_mu = "auto", cert_grid = "1e4";
  int cert_threads = 0;
  auto* cert = app.add_subcommand("certify", "grid-certify the construction inequalities");
  cert->add_option("lemma", cert_lemma,
                   "helix-self-expanded | z-axis | small-cylinder | radial-segment | "
                   "big-cylinder | all");
  cert->add_option("--mu", cert_mu, "'auto' for the derived constants, or a numeric mu");
  cert->add_option("--grid", cert_grid, "grid nodes per axis (accepts forms like 1e4)");
  cert->add_option("--threads", cert_threads, "worker threads");

  std::string exp_kind, exp_in, exp_out, exp_lambda;
  std::size_t exp_d = 0;
  int exp_threads = 0;
  auto* exp = app.add_subcommand("export", "derived data exports");
  exp->add_option("kind", exp_kind, "width-profile")->required();
  exp->add_option("--in", exp_in, "input CSV")->required();
  exp->add_option("--out", exp_out, "output CSV")->required();
  exp->add_option("--lambda", exp_lambda, "lambda value, or 1/sqrt5")->required();
  exp->add_option("--d", exp_d, "expected curve dimension (checked when given)");
  exp->add_option("--threads", exp_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0; anything else is a usage error
  }

  try {
    if (*con) return run_construct(co);

    if (*chk) {
      const eelkit::Property p = property_from(chk_prop);
      double lam = 0.0;
      if (property_needs_lambda(p)) {
        if (chk_lambda.empty())
          throw eelkit::DomainError(std::string("property ") + eelkit::property_name(p) +
                                    " requires --lambda");
        lam = parse_lambda(chk_lambda);
      }
      const eelkit::SampledCurve c = eelkit::read_polyline_csv(chk_in);
      eelkit::CheckReport rep;
      if (p == eelkit::Property::lambda_cone && chk_window != 1)
        rep = eelkit::check_lambda_cone(c, lam, chk_tol, chk_threads, chk_window);
      else
        rep = eelkit::run_check(c, p, lam, chk_tol, chk_threads, chk_start);
      std::cout << eelkit::to_json(rep).dump() << "\n";
      return rep.passed ? 0 : 1;
    }

    if (*bnd) {
      const double lam = parse_lambda(bnd_lambda);
      if (bnd->count("--diam") != 0) {
        const eelkit::RepulsionConstants rc = eelkit::repulsion_constants(lam, bnd_d);
        ordered_json j;
        j["lambda"] = lam;
        j["d"] = bnd_d;
        j["diameter"] = bnd_diam;
        j["eta"] = rc.eta;
        j["net_directions"] = eelkit::build_sphere_net(bnd_d, rc.eta).size();
        j["bound"] = eelkit::length_bound(lam, bnd_d, bnd_diam);
        std::cout << j.dump() << "\n";
        return 0;
      }
      if (bnd_in.empty()) throw eelkit::DomainError("bound: need --in or --diam");
      eelkit::repulsion_constants(lam, bnd_d);  // rejects lambda >= 1/d up front
      const eelkit::SampledCurve c = eelkit::read_polyline_csv(bnd_in);
      if (bnd_d != c.dim) throw eelkit::DomainError("bound: --d must equal the curve dimension");
      const eelkit::CheckReport hyp = eelkit::check_lambda_curve(c, lam, bnd_tol, bnd_threads);
      if (!hyp.passed) {
        std::cout << eelkit::to_json(hyp).dump() << "\n";
        return 1;
      }
      const eelkit::LengthBoundReport rep =
          eelkit::verify_length_bound(c, lam, bnd_d, bnd_tol, bnd_threads);
      ordered_json j;
      j["lambda"] = lam;
      j["d"] = bnd_d;
      j["length"] = rep.length;
      j["diameter"] = rep.diameter;
      j["bound"] = rep.bound;
      j["slack"] = rep.slack;
      j["passed"] = rep.passed;
      std::cout << j.dump() << "\n";
      return rep.passed ? 0 : 1;
    }

    if (*cert) {
      eelkit::EelParams p;
      if (cert_mu == "auto") {
        p = eelkit::eel_params();
      } else {
        // Derived N and M for the requested mu, deliberately without the
        // validity check: a bad mu should surface as a positive violation in
        // the certificate, not as a refusal to run.
        const double mu = parse_number(cert_mu, "mu");
        p.mu = mu;
        p.N = eelkit::derive_N(mu);
        p.M = eelkit::derive_M(mu);
        p.lambda = 1.0 / std::sqrt(5.0);
        p.alpha = std::acos(p.lambda);
      }
      const std::size_t grid = parse_count(cert_grid, "grid");
      std::vector<eelkit::CertLemma> lemmas;
      if (underscored(cert_lemma) == "all")
        lemmas = {eelkit::CertLemma::helix_self_expanded, eelkit::CertLemma::z_axis,
                  eelkit::CertLemma::small_cylinder, eelkit::CertLemma::radial_segment,
                  eelkit::CertLemma::big_cylinder};
      else
        lemmas = {lemma_from(cert_lemma)};
      bool violated = false;
      for (eelkit::CertLemma l : lemmas) {
        const eelkit::CertificationRecord rec = eelkit::certify_lemma(l, p, grid, cert_threads);
        if (rec.max_violation > 0.0) violated = true;
        std::cout << eelkit::to_json(rec).dump() << "\n";
      }
      return violated ? 1 : 0;
    }

    if (*exp) {
      if (underscored(exp_kind) != "width_profile")
        throw eelkit::DomainError("unknown export kind: " + exp_kind);
      const double lam = parse_lambda(exp_lambda);
      const eelkit::SampledCurve c = eelkit::read_polyline_csv(exp_in);
      if (exp->count("--d") != 0 && exp_d != c.dim)
        throw eelkit::DomainError("export: --d must equal the curve dimension");
      const eelkit::RepulsionConstants rc = eelkit::repulsion_constants(lam, c.dim);
      const eelkit::SphereNet net = eelkit::build_sphere_net(c.dim, rc.eta);
      const eelkit::WidthProfile wp = eelkit::width_profile(c, net, exp_threads);
      eelkit::write_width_profile_csv(exp_out, c, wp);
      ordered_json j;
      j["out"] = exp_out;
      j["eta"] = rc.eta;
      j["net_directions"] = net.size();
      j["final_total_width"] = wp.total.back();
      std::cout << j.dump() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
