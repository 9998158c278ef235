// decolab command-line driver: solvers, cascades, model builds, rendering and
// verification wired into reproducible runs. Every command writes
// manifest.json into --out-dir; `decolab rerun manifest.json` replays it.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <mpfr.h>

#include "decolab/bottcher.hpp"
#include "decolab/cloud.hpp"
#include "decolab/dynamics.hpp"
#include "decolab/image.hpp"
#include "decolab/model.hpp"
#include "decolab/render.hpp"
#include "decolab/solvers.hpp"
#include "decolab/verify.hpp"

namespace fs = std::filesystem;
using namespace decolab;

namespace {

int run_args(std::vector<std::string> args);  // forward (rerun recurses)

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Manifest {
  std::string command, out_dir;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> artifacts;

  void add(const std::string& k, const std::string& v) {
    params.emplace_back(k, v);
  }
  void add(const std::string& k, long v) { add(k, std::to_string(v)); }
  void add(const std::string& k, double v) { add(k, fmt(v)); }

  void write() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) j["params"][k] = v;
    j["versions"] = {{"decolab", "1.0.0"}, {"mpfr", mpfr_get_version()}};
    j["artifacts"] = artifacts;
    std::ofstream out(out_dir + "/manifest.json");
    if (!out) throw error("cannot write manifest.json");
    out << j.dump(2) << '\n';
  }
};

void prepare_out(const std::string& out_dir) {
  fs::create_directories(out_dir);
}

void write_result(Manifest& man, const std::vector<std::string>& lines) {
  std::string path = man.out_dir + "/result.txt";
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  for (const auto& l : lines) out << l << '\n';
  man.artifacts.push_back("result.txt");
}

HPComplex cpx(const std::string& s) { return parse_complex(s); }

struct FrameOpts {
  std::string center = "0", mode = "mandelbrot", color = "escape";
  double width = 4.0, escape_radius = 1e6;
  std::string px = "512x512";
  unsigned max_iter = 1000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--center", center, "frame center (RE+IMi or RE,IM)");
    cmd->add_option("--width", width, "frame width in plane units");
    cmd->add_option("--px", px, "pixel dimensions WxH");
    cmd->add_option("--max-iter", max_iter, "iteration budget");
    cmd->add_option("--mode", mode, "mandelbrot | julia:C");
    cmd->add_option("--color", color, "escape | distance | binary");
    cmd->add_option("--escape-radius", escape_radius, "bailout radius");
  }

  FrameSpec build() const {
    FrameSpec f;
    f.center = cpx(center);
    f.width = width;
    if (std::sscanf(px.c_str(), "%dx%d", &f.px_w, &f.px_h) != 2)
      throw error("bad --px, expected WxH");
    f.max_iter = max_iter;
    f.escape_radius = escape_radius;
    if (mode == "mandelbrot") {
      f.mode = RenderMode::Mandelbrot;
    } else if (mode.rfind("julia:", 0) == 0) {
      f.mode = RenderMode::Julia;
      f.julia_c = cpx(mode.substr(6));
    } else {
      throw error("bad --mode, expected mandelbrot or julia:C");
    }
    if (color == "escape")
      f.coloring = Coloring::Escape;
    else if (color == "distance")
      f.coloring = Coloring::Distance;
    else if (color == "binary")
      f.coloring = Coloring::Binary;
    else
      throw error("bad --color");
    return f;
  }

  void record(Manifest& man) const {
    man.add("center", center);
    man.add("width", width);
    man.add("px", px);
    man.add("max-iter", long(max_iter));
    man.add("mode", mode);
    man.add("color", color);
    man.add("escape-radius", escape_radius);
  }
};

void save_image(const Image& img, const std::string& out_dir,
                const std::string& name, Manifest& man) {
  std::string path = out_dir + "/" + name;
  if (name.size() > 4 && name.substr(name.size() - 4) == ".ppm")
    write_ppm(img, path);
  else
    write_png(img, path);
  man.artifacts.push_back(name);
}

int run_args(std::vector<std::string> args) {
  CLI::App app{"decolab: decorated Mandelbrot models, special parameters, "
               "deep zooms and similarity checks"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  long precision_bits = 0;
  app.add_option("--out-dir", out_dir, "artifact directory")
      ->capture_default_str();
  app.add_option("--precision-bits", precision_bits,
                 "override working precision (bits)");
  app.set_config("--config,--schedule")
      ->description("key=value file, options under a [subcommand] section");

  // ---- solve-center ----------------------------------------------------
  auto* sc = app.add_subcommand("solve-center",
                                "superattracting center of given period");
  long sc_period = 0;
  std::string sc_seed;
  double sc_tol = 1e-12;
  sc->add_option("--period", sc_period, "cycle period q")->required();
  sc->add_option("--seed", sc_seed, "initial guess")->required();
  sc->add_option("--tol", sc_tol, "residual tolerance");

  // ---- solve-misiurewicz -------------------------------------------------
  auto* sm = app.add_subcommand("solve-misiurewicz",
                                "strictly preperiodic parameter (l,k)");
  long sm_l = 0, sm_k = 0;
  std::string sm_seed;
  double sm_tol = 1e-12;
  sm->add_option("--l", sm_l, "preperiod")->required();
  sm->add_option("--k", sm_k, "period")->required();
  sm->add_option("--seed", sm_seed, "initial guess")->required();
  sm->add_option("--tol", sm_tol, "residual tolerance");

  // ---- solve-parabolic ---------------------------------------------------
  auto* sp = app.add_subcommand("solve-parabolic",
                                "parabolic parameter with lambda=e^{2pi i nu'/nu}");
  long sp_p = 0, sp_nup = 0, sp_nu = 1;
  std::string sp_seed_c, sp_seed_z;
  double sp_tol = 1e-10;
  sp->add_option("--period", sp_p, "cycle period")->required();
  sp->add_option("--nu-prime", sp_nup, "numerator nu'")->required();
  sp->add_option("--nu", sp_nu, "denominator nu")->required();
  sp->add_option("--seed-c", sp_seed_c, "parameter guess")->required();
  sp->add_option("--seed-z", sp_seed_z, "cycle point guess")->required();
  sp->add_option("--tol", sp_tol, "residual tolerance");

  // ---- tune ---------------------------------------------------------------
  auto* tu = app.add_subcommand("tune",
                                "Misiurewicz image in the copy centered at s0");
  std::string tu_s0, tu_ref;
  long tu_p = 0, tu_l = 0, tu_k = 0;
  double tu_tol = 1e-12;
  tu->add_option("--s0", tu_s0, "copy center")->required();
  tu->add_option("--p", tu_p, "copy period")->required();
  tu->add_option("--l", tu_l, "preperiod of the type")->required();
  tu->add_option("--k", tu_k, "period of the type")->required();
  tu->add_option("--tol", tu_tol, "residual tolerance");
  tu->add_option("--ref-seed", tu_ref, "reference point override");

  // ---- cascade --------------------------------------------------------------
  auto* ca = app.add_subcommand("cascade",
                                "center cascade converging to a target");
  std::string ca_c1, ca_sbase, ca_mu;
  long ca_qbase = 0, ca_dq = 1, ca_count = 8;
  double ca_tol = 1e-12;
  ca->add_option("--c1", ca_c1, "cascade target")->required();
  ca->add_option("--s-base", ca_sbase, "first center")->required();
  ca->add_option("--q-base", ca_qbase, "period of the first center")->required();
  ca->add_option("--dq", ca_dq, "period increment");
  ca->add_option("--count", ca_count, "number of rungs");
  ca->add_option("--mu", ca_mu, "expected ratio^-1 (Misiurewicz multiplier)");
  ca->add_option("--tol", ca_tol, "residual tolerance");

  // ---- build-model ---------------------------------------------------------
  auto* bm = app.add_subcommand("build-model", "decorated model point cloud");
  std::string bm_cprime, bm_kind = "M", bm_julia_c = "0";
  double bm_R = 0, bm_rho = 0, bm_rhop = 0;
  long bm_mmax = 6, bm_samples = 4096, bm_rng = 1;
  bm->add_option("--c-prime", bm_cprime, "decoration parameter c'")->required();
  bm->add_option("--R", bm_R, "annulus modulus R (Douady radii)");
  bm->add_option("--rho", bm_rho, "outer radius rho");
  bm->add_option("--rho-prime", bm_rhop, "inner radius rho'");
  bm->add_option("--m-max", bm_mmax, "deepest decoration level");
  bm->add_option("--samples", bm_samples, "points per level");
  bm->add_option("--rng-seed", bm_rng, "sampling seed");
  bm->add_option("--kind", bm_kind, "M | K (dynamical, uses --julia-c)");
  bm->add_option("--julia-c", bm_julia_c, "parameter for kind K");

  // ---- render ----------------------------------------------------------------
  auto* re = app.add_subcommand("render", "single frame");
  FrameOpts re_f;
  re_f.attach(re);
  std::string re_out = "frame.png", re_overlay, re_deep = "auto", re_dump;
  re->add_option("--out", re_out, "image file (.png or .ppm)");
  re->add_option("--overlay", re_overlay, "cloud CSV to mark in red");
  re->add_option("--deep", re_deep, "auto | on | off (perturbation choice)");
  re->add_option("--dump", re_dump, "raw u32 iteration dump file");

  // ---- zoom ------------------------------------------------------------------
  auto* zo = app.add_subcommand("zoom", "geometric zoom sequence");
  FrameOpts zo_f;
  zo_f.attach(zo);
  double zo_wstart = 4.0, zo_wend = 1e-3;
  long zo_frames = 2;
  bool zo_dump = false;
  zo->add_option("--width-start", zo_wstart, "first frame width");
  zo->add_option("--width-end", zo_wend, "last frame width");
  zo->add_option("--frames", zo_frames, "frame count");
  zo->add_flag("--dump", zo_dump, "also write iteration dumps");

  // ---- verify-similarity ------------------------------------------------------
  auto* vs = app.add_subcommand(
      "verify-similarity", "align a decorated model onto an extracted boundary");
  std::string vs_cprime, vs_center;
  double vs_R = 0, vs_width = 0, vs_thresh = 0.05, vs_de = 0.75;
  long vs_mmax = 6, vs_samples = 4096, vs_rng = 1, vs_iters = 32;
  std::string vs_px = "512x512";
  long vs_maxit = 20000;
  vs->add_option("--c-prime", vs_cprime, "model decoration parameter")->required();
  vs->add_option("--R", vs_R, "model annulus modulus");
  vs->add_option("--center", vs_center, "window center")->required();
  vs->add_option("--window-width", vs_width, "window width")->required();
  vs->add_option("--px", vs_px, "render resolution WxH");
  vs->add_option("--max-iter", vs_maxit, "render iteration budget");
  vs->add_option("--m-max", vs_mmax, "model depth");
  vs->add_option("--samples", vs_samples, "model points per level");
  vs->add_option("--rng-seed", vs_rng, "model sampling seed");
  vs->add_option("--iterations", vs_iters, "alignment refinement rounds");
  vs->add_option("--threshold", vs_thresh, "residual pass bound");
  vs->add_option("--de-threshold", vs_de, "boundary DE cut in pixels");

  // ---- semihyp ------------------------------------------------------------------
  auto* sh = app.add_subcommand("semihyp",
                                "finite-orbit semihyperbolicity heuristic");
  std::string sh_c;
  long sh_n = 10000, sh_transient = 100;
  double sh_delta = 0;
  sh->add_option("--c", sh_c, "parameter")->required();
  sh->add_option("--n-iter", sh_n, "orbit length");
  sh->add_option("--delta", sh_delta, "recurrence radius (<=0: auto)");
  sh->add_option("--transient", sh_transient, "skipped prefix");

  // ---- winding ---------------------------------------------------------------------
  auto* wi = app.add_subcommand("winding",
                                "winding number of c -> P_c^q(0) on a circle");
  std::string wi_center;
  long wi_q = 0, wi_samples = 1024, wi_l = -1, wi_k = 0;
  double wi_radius = 0;
  wi->add_option("--q", wi_q, "iterate count")->required();
  wi->add_option("--center", wi_center, "circle center")->required();
  wi->add_option("--radius", wi_radius, "circle radius")->required();
  wi->add_option("--samples", wi_samples, "initial contour samples");
  wi->add_option("--l", wi_l, "use Misiurewicz map P^l+k - P^l instead");
  wi->add_option("--k", wi_k, "period for the Misiurewicz map");

  // ---- rerun -------------------------------------------------------------------------
  auto* rr = app.add_subcommand("rerun", "replay a manifest.json");
  std::string rr_manifest, rr_outdir;
  rr->add_option("manifest", rr_manifest, "manifest.json path")->required();
  rr->add_option("--out-dir", rr_outdir, "redirect artifacts");

  // let --out-dir / --precision-bits trail the subcommand too
  for (auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (precision_bits > 0) {
    set_default_precision(static_cast<mpfr_prec_t>(precision_bits));
    setenv("DECOLAB_PRECISION_BITS", std::to_string(precision_bits).c_str(), 1);
  }

  Manifest man;
  man.out_dir = out_dir;

  if (rr->parsed()) {
    std::ifstream in(rr_manifest);
    if (!in) throw error("cannot read " + rr_manifest);
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<std::string> rargs{"decolab"};
    if (!rr_outdir.empty()) {
      rargs.push_back("--out-dir");
      rargs.push_back(rr_outdir);
    }
    rargs.push_back(j.at("command").get<std::string>());
    // single-token form so flag params and negative values replay cleanly
    for (auto& [k, v] : j.at("params").items())
      rargs.push_back("--" + k + "=" + v.get<std::string>());
    return run_args(rargs);
  }

  prepare_out(out_dir);

  if (sc->parsed()) {
    man.command = "solve-center";
    man.add("period", sc_period);
    man.add("seed", sc_seed);
    man.add("tol", sc_tol);
    HPComplex s = solve_superattracting_center(
        static_cast<std::size_t>(sc_period), cpx(sc_seed), sc_tol);
    std::printf("center = %s\n", s.str().c_str());
    write_result(man, {"center = " + s.str()});
  } else if (sm->parsed()) {
    man.command = "solve-misiurewicz";
    man.add("l", sm_l);
    man.add("k", sm_k);
    man.add("seed", sm_seed);
    man.add("tol", sm_tol);
    MisiurewiczType t{static_cast<std::size_t>(sm_l),
                      static_cast<std::size_t>(sm_k)};
    HPComplex c = solve_misiurewicz(t, cpx(sm_seed), sm_tol);
    HPComplex mu = multiplier_at_misiurewicz(c, t);
    std::printf("c = %s\nmultiplier = %s\n", c.str().c_str(), mu.str().c_str());
    write_result(man, {"c = " + c.str(), "multiplier = " + mu.str()});
  } else if (sp->parsed()) {
    man.command = "solve-parabolic";
    man.add("period", sp_p);
    man.add("nu-prime", sp_nup);
    man.add("nu", sp_nu);
    man.add("seed-c", sp_seed_c);
    man.add("seed-z", sp_seed_z);
    man.add("tol", sp_tol);
    ParabolicRoot r = solve_parabolic_root(
        static_cast<std::size_t>(sp_p), static_cast<unsigned>(sp_nup),
        static_cast<unsigned>(sp_nu), cpx(sp_seed_c), cpx(sp_seed_z), sp_tol);
    std::printf("c = %s\nz = %s\nlambda = %s\n", r.c.str().c_str(),
                r.z.str().c_str(), r.lambda.str().c_str());
    write_result(man, {"c = " + r.c.str(), "z = " + r.z.str(),
                       "lambda = " + r.lambda.str(),
                       "residual = " + fmt(r.residual.to_double())});
  } else if (tu->parsed()) {
    man.command = "tune";
    man.add("s0", tu_s0);
    man.add("p", tu_p);
    man.add("l", tu_l);
    man.add("k", tu_k);
    man.add("tol", tu_tol);
    if (!tu_ref.empty()) man.add("ref-seed", tu_ref);
    std::optional<HPComplex> ref;
    if (!tu_ref.empty()) ref = cpx(tu_ref);
    TuneResult r = tune_misiurewicz(
        cpx(tu_s0), static_cast<std::size_t>(tu_p),
        MisiurewiczType{static_cast<std::size_t>(tu_l),
                        static_cast<std::size_t>(tu_k)},
        tu_tol, ref);
    std::printf("c = %s\n", r.c.str().c_str());
    write_result(man,
                 {"c = " + r.c.str(),
                  "type = (" + std::to_string(r.tuned_type.l) + "," +
                      std::to_string(r.tuned_type.k) + ")",
                  "minimal_type = (" + std::to_string(r.minimal_type.l) + "," +
                      std::to_string(r.minimal_type.k) + ")",
                  "copy_center_2p = " + r.copy_center_2p.str(),
                  "scale = " + r.scale.str()});
  } else if (ca->parsed()) {
    man.command = "cascade";
    man.add("c1", ca_c1);
    man.add("s-base", ca_sbase);
    man.add("q-base", ca_qbase);
    man.add("dq", ca_dq);
    man.add("count", ca_count);
    if (!ca_mu.empty()) man.add("mu", ca_mu);
    man.add("tol", ca_tol);
    std::optional<HPComplex> mu;
    if (!ca_mu.empty()) mu = cpx(ca_mu);
    CascadeRecord r = cascade(cpx(ca_c1), cpx(ca_sbase),
                              static_cast<std::size_t>(ca_qbase),
                              static_cast<std::size_t>(ca_dq),
                              static_cast<std::size_t>(ca_count), mu, ca_tol);
    std::string csv = man.out_dir + "/cascade.csv";
    std::ofstream out(csv);
    out << "# q,s_re,s_im,dist,ratio_re,ratio_im\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
      const auto& st = r.steps[i];
      char line[160];
      std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    st.q, st.s.real().to_double(), st.s.imag().to_double(),
                    st.dist, i > 0 ? r.ratios[i - 1].real() : 0.0,
                    i > 0 ? r.ratios[i - 1].imag() : 0.0);
      out << line;
    }
    out.close();
    man.artifacts.push_back("cascade.csv");
    std::printf("rungs = %zu, law = %s, exponent = %.6g, residual = %.3g\n",
                r.steps.size(), cascade_law_name(r.fitted_law),
                r.fitted_exponent, r.fit_residual);
    write_result(man, {"rungs = " + std::to_string(r.steps.size()),
                       std::string("law = ") + cascade_law_name(r.fitted_law),
                       "exponent = " + fmt(r.fitted_exponent),
                       "constant = " + fmt(r.fitted_constant.real()) + "," +
                           fmt(r.fitted_constant.imag()),
                       "residual = " + fmt(r.fit_residual),
                       "aborted = " + std::string(r.aborted ? "yes" : "no")});
  } else if (bm->parsed()) {
    man.command = "build-model";
    man.add("c-prime", bm_cprime);
    if (bm_R > 0) man.add("R", bm_R);
    if (bm_rho > 0) man.add("rho", bm_rho);
    if (bm_rhop > 0) man.add("rho-prime", bm_rhop);
    man.add("m-max", bm_mmax);
    man.add("samples", bm_samples);
    man.add("rng-seed", bm_rng);
    man.add("kind", bm_kind);
    if (bm_kind == "K") man.add("julia-c", bm_julia_c);
    ModelSpec spec;
    spec.c_prime = cpx(bm_cprime);
    spec.R = bm_R;
    spec.rho = bm_rho;
    spec.rho_prime = bm_rhop;
    spec.m_max = static_cast<int>(bm_mmax);
    spec.samples_per_level = static_cast<std::size_t>(bm_samples);
    spec.rng_seed = static_cast<std::uint64_t>(bm_rng);
    PointCloud cloud = bm_kind == "K" ? build_model_K(cpx(bm_julia_c), spec)
                                      : build_model_M(spec);
    write_cloud_csv(cloud, man.out_dir + "/model.csv");
    write_cloud_bin(cloud, man.out_dir + "/model.bin");
    man.artifacts.push_back("model.csv");
    man.artifacts.push_back("model.bin");
    std::printf("model points = %zu\n", cloud.size());
    write_result(man, {"points = " + std::to_string(cloud.size())});
  } else if (re->parsed()) {
    man.command = "render";
    re_f.record(man);
    man.add("out", re_out);
    if (!re_overlay.empty()) man.add("overlay", re_overlay);
    man.add("deep", re_deep);
    if (!re_dump.empty()) man.add("dump", re_dump);
    FrameSpec f = re_f.build();
    Image img;
    if (re_deep == "on")
      img = render_deep(f);
    else if (re_deep == "off")
      img = render_direct(f);
    else if (re_deep == "auto")
      img = render(f);
    else
      throw error("bad --deep");
    std::size_t outside = 0;
    if (!re_overlay.empty()) {
      PointCloud cloud = read_cloud_csv(re_overlay);
      outside = overlay(img, cloud, f);
      std::printf("overlay: %zu points outside frame\n", outside);
    }
    save_image(img, man.out_dir, re_out, man);
    if (!re_dump.empty()) {
      write_iter_dump(img, man.out_dir + "/" + re_dump);
      man.artifacts.push_back(re_dump);
    }
    std::size_t interior = 0;
    for (auto v : img.iters) interior += v == kInterior;
    std::printf("interior pixels = %zu / %zu\n", interior, img.iters.size());
  } else if (zo->parsed()) {
    man.command = "zoom";
    zo_f.record(man);
    man.add("width-start", zo_wstart);
    man.add("width-end", zo_wend);
    man.add("frames", zo_frames);
    if (zo_dump) man.add("dump", std::string("1"));
    ZoomSchedule sched;
    sched.center = cpx(zo_f.center);
    sched.width_start = zo_wstart;
    sched.width_end = zo_wend;
    sched.frames = static_cast<int>(zo_frames);
    FrameSpec base = zo_f.build();
    auto widths = schedule_widths(sched);
    for (std::size_t i = 0; i < widths.size(); ++i) {
      FrameSpec f = base;
      f.width = widths[i];
      Image img = render(f);
      char name[32];
      std::snprintf(name, sizeof name, "%03zu.png", i + 1);
      save_image(img, man.out_dir, name, man);
      if (zo_dump) {
        std::snprintf(name, sizeof name, "%03zu.iter", i + 1);
        write_iter_dump(img, man.out_dir + "/" + name);
        man.artifacts.push_back(name);
      }
      std::printf("frame %03zu width %.6g done\n", i + 1, widths[i]);
    }
  } else if (vs->parsed()) {
    man.command = "verify-similarity";
    man.add("c-prime", vs_cprime);
    if (vs_R > 0) man.add("R", vs_R);
    man.add("center", vs_center);
    man.add("window-width", vs_width);
    man.add("px", vs_px);
    man.add("max-iter", vs_maxit);
    man.add("m-max", vs_mmax);
    man.add("samples", vs_samples);
    man.add("rng-seed", vs_rng);
    man.add("iterations", vs_iters);
    man.add("threshold", vs_thresh);
    man.add("de-threshold", vs_de);

    ModelSpec spec;
    spec.c_prime = cpx(vs_cprime);
    spec.R = vs_R;
    spec.m_max = static_cast<int>(vs_mmax);
    spec.samples_per_level = static_cast<std::size_t>(vs_samples);
    spec.rng_seed = static_cast<std::uint64_t>(vs_rng);
    PointCloud model = build_model_M(spec);
    ModelSpec rspec = spec;
    rspec.resolve();
    double g0 = std::log(rspec.R) / double(1 << (spec.m_max + 2));
    PointCloud body = sample_M_equipotential(g0, spec.samples_per_level);
    for (const auto& p : body.points) model.append(p, -1);

    FrameSpec f;
    f.center = cpx(vs_center);
    f.width = vs_width;
    if (std::sscanf(vs_px.c_str(), "%dx%d", &f.px_w, &f.px_h) != 2)
      throw error("bad --px, expected WxH");
    f.max_iter = static_cast<std::uint32_t>(vs_maxit);
    PointCloud target = extract_boundary(f, vs_de);

    AlignResult a = align_similarity(model, target, static_cast<int>(vs_iters));
    write_cloud_csv(model, man.out_dir + "/model.csv");
    write_cloud_csv(target, man.out_dir + "/target.csv");
    man.artifacts.push_back("model.csv");
    man.artifacts.push_back("target.csv");

    // The model halo extends past any finite window (its outer ring must
    // overflow the corners to cover them), so the residual is taken over the
    // common field of view: mapped model points clipped to the frame.
    double half_w = f.width * 0.5;
    double half_h = f.width * double(f.px_h) / double(f.px_w) * 0.5;
    std::complex<double> fc = f.center.to_std();
    PointCloud clipped;
    PointCloud ring1;
    for (std::size_t i = 0; i < model.size(); ++i) {
      std::complex<double> q = a.map(model.points[i]);
      if (std::abs(q.real() - fc.real()) <= half_w &&
          std::abs(q.imag() - fc.imag()) <= half_h)
        clipped.append(q);
      if (!model.levels.empty() && model.levels[i] == 1) ring1.append(q);
    }
    // Theorem direction: every model feature must have a real counterpart;
    // the connected real set also carries filaments the dust model does not
    // predict, so the symmetric distance is reported but not gated on.
    double residual_directed =
        clipped.size()
            ? hausdorff_directed(clipped, target) / target.diameter()
            : std::numeric_limits<double>::infinity();
    double residual_symmetric =
        clipped.size() ? hausdorff(clipped, target) / target.diameter()
                       : std::numeric_limits<double>::infinity();
    double decor_diam = ring1.size() ? ring1.diameter() : 0.0;

    VerificationReport rep;
    rep.test_name = "similarity";
    rep.metrics["residual"] = residual_directed;
    rep.metrics["residual_symmetric"] = residual_symmetric;
    rep.metrics["residual_unclipped"] = a.residual;
    rep.metrics["clipped_model_points"] = double(clipped.size());
    rep.metrics["decoration_diameter"] = decor_diam;
    rep.metrics["window_over_decoration"] =
        decor_diam > 0 ? f.width / decor_diam : 0.0;
    rep.metrics["rms"] = a.rms;
    rep.metrics["model_points"] = double(model.size());
    rep.metrics["target_points"] = double(target.size());
    rep.metrics["map_a_re"] = a.map.a.real();
    rep.metrics["map_a_im"] = a.map.a.imag();
    rep.metrics["map_b_re"] = a.map.b.real();
    rep.metrics["map_b_im"] = a.map.b.imag();
    rep.thresholds["max:residual"] = vs_thresh;
    rep.notes = "directed model-to-target residual over the common window; "
                "threshold is an engineering choice, the similarity statement "
                "itself is qualitative";
    rep.artifacts = {"model.csv", "target.csv"};
    rep.evaluate();
    rep.write_json(man.out_dir + "/report.json");
    man.artifacts.push_back("report.json");
    std::printf("residual = %.6g (threshold %.3g) -> %s\n", residual_directed,
                vs_thresh, rep.passed ? "pass" : "fail");
    if (!rep.passed) {
      man.write();
      return 1;
    }
  } else if (sh->parsed()) {
    man.command = "semihyp";
    man.add("c", sh_c);
    man.add("n-iter", sh_n);
    man.add("delta", sh_delta);
    man.add("transient", sh_transient);
    VerificationReport rep =
        semihyperbolic_test(cpx(sh_c), sh_n, sh_delta, sh_transient);
    rep.write_json(man.out_dir + "/report.json");
    man.artifacts.push_back("report.json");
    std::printf("classification = %s (min distance %.6g)\n",
                rep.classification.c_str(),
                rep.metrics.at("critical_min_distance"));
  } else if (wi->parsed()) {
    man.command = "winding";
    man.add("q", wi_q);
    man.add("center", wi_center);
    man.add("radius", wi_radius);
    man.add("samples", wi_samples);
    if (wi_l >= 0) {
      man.add("l", wi_l);
      man.add("k", wi_k);
    }
    ParamMap map =
        wi_l >= 0 ? ParamMap::misiurewicz(
                        MisiurewiczType{static_cast<std::size_t>(wi_l),
                                        static_cast<std::size_t>(wi_k)})
                  : ParamMap::center(static_cast<std::size_t>(wi_q));
    long w = winding_number(map, cpx(wi_center), wi_radius,
                            static_cast<std::size_t>(wi_samples));
    std::printf("winding = %ld\n", w);
    write_result(man, {"winding = " + std::to_string(w)});
  }

  man.write();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    return run_args(std::move(args));
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
