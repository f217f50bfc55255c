#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontlab/artifacts.hpp"
#include "frontlab/classifier.hpp"
#include "frontlab/geometry.hpp"
#include "frontlab/linfield.hpp"
#include "frontlab/measure.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/rng.hpp"
#include "frontlab/widthlab.hpp"

namespace fs = std::filesystem;
using namespace frontlab;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string command;
  std::string measure_path;
  std::vector<double> eps = {0.1};
  std::vector<std::string> box;  // "lo:hi" per axis
  double dx = 0.05;
  double t0 = -12.0;
  double t_end = 10.0;
  std::vector<double> snapshots;
  std::string reaction = "logistic";
  std::uint64_t seed = 1;
  std::string out = "frontlab-out";
  double cfl = 0.4;
  std::string h_table;
  double delta = 0.25;
  double horizon = 20.0;
  int samples = 21;
  int count = 50;
  int dim = 2;
  int trials = 10000;
  std::vector<double> lambdas = {1.0, 0.5};
  std::string run_dir;
  bool dump_v = false;

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    j["measure"] = measure_path;
    j["eps"] = eps;
    j["box"] = box;
    j["dx"] = dx;
    j["t0"] = t0;
    j["t_end"] = t_end;
    j["snapshots"] = snapshots;
    j["reaction"] = reaction;
    j["seed"] = seed;
    j["out"] = out;
    j["cfl"] = cfl;
    j["h_table"] = h_table;
    j["delta"] = delta;
    j["horizon"] = horizon;
    j["samples"] = samples;
    j["count"] = count;
    j["dim"] = dim;
    j["trials"] = trials;
    j["lambdas"] = lambdas;
    j["run"] = run_dir;
    j["dump_v"] = dump_v;
    return j;
  }

  void apply_config_file(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    auto get = [&](const char* k, auto& field) {
      if (j.contains(k)) field = j.at(k).get<std::decay_t<decltype(field)>>();
    };
    get("measure", measure_path);
    get("eps", eps);
    get("box", box);
    get("dx", dx);
    get("t0", t0);
    get("t_end", t_end);
    get("snapshots", snapshots);
    get("reaction", reaction);
    get("seed", seed);
    get("out", out);
    get("cfl", cfl);
    get("h_table", h_table);
    get("delta", delta);
    get("horizon", horizon);
    get("samples", samples);
    get("count", count);
    get("dim", dim);
    get("trials", trials);
    get("lambdas", lambdas);
    get("run", run_dir);
    get("dump_v", dump_v);
  }
};

void parse_box(const std::vector<std::string>& box, std::vector<double>& lo,
               std::vector<double>& hi) {
  lo.clear();
  hi.clear();
  for (const auto& s : box) {
    auto p = s.find(':');
    if (p == std::string::npos)
      throw std::invalid_argument("box axis must look like lo:hi, got " + s);
    lo.push_back(std::stod(s.substr(0, p)));
    hi.push_back(std::stod(s.substr(p + 1)));
  }
}

ReactionFn pick_reaction(const std::string& name) {
  if (name == "logistic") return ReactionFn::logistic();
  throw std::invalid_argument("unknown reaction: " + name);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  }
};

int cmd_classify(const RunConfig& cfg, Manifest& man) {
  AtomicMeasure mu = load_measure(cfg.measure_path);
  Classification c = classify(mu);
  write_text_file(cfg.out + "/verdict.json", classification_to_json(c) + "\n");
  man.add_file(cfg.out, "verdict.json");
  if (!cfg.h_table.empty() && c.verdict != Verdict::HalfSpaceEdge) {
    HTable h = HTable::load(cfg.h_table);
    for (double e : cfg.eps) {
      WidthCertificate cert = certified_width_bound(mu, e, h);
      std::ostringstream name;
      name << "certificate_eps" << e << ".json";
      write_text_file(cfg.out + "/" + name.str(), certificate_to_json(cert) + "\n");
      man.add_file(cfg.out, name.str());
    }
  }
  std::cout << classification_to_json(c) << "\n";
  man.add_check("classified", true, verdict_name(c.verdict));
  return 0;
}

int cmd_simulate(const RunConfig& cfg, Manifest& man) {
  AtomicMeasure mu = load_measure(cfg.measure_path);
  std::vector<double> lo, hi;
  parse_box(cfg.box, lo, hi);
  if (cfg.snapshots.empty()) throw std::invalid_argument("simulate: need --snapshots");
  Field f0 = init_from_linearization(mu, cfg.t0, lo, hi, cfg.dx);
  IntegrateOptions io;
  io.cfl = cfg.cfl;
  ReactionFn reaction = pick_reaction(cfg.reaction);
  auto bad = reaction.check();
  if (!bad.empty()) throw std::invalid_argument("reaction rejected: " + bad.front());
  Trajectory traj = integrate(std::move(f0), reaction, sandwich_boundary(mu), cfg.snapshots, io);

  save_measure(mu, cfg.out + "/measure.json");
  man.add_file(cfg.out, "measure.json");
  ordered_json meta;
  meta["snapshots"] = ordered_json::array();
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    char base[32];
    snprintf(base, sizeof base, "snap_%03zu", i);
    save_snapshot(traj.snapshots[i], cfg.out + "/" + base);
    man.add_file(cfg.out, std::string(base) + ".bin");
    man.add_file(cfg.out, std::string(base) + ".json");
    meta["snapshots"].push_back(base);
    if (cfg.dump_v) {
      std::vector<double> blo(lo), bhi(hi);
      std::string csv = grid_eval_csv(mu, traj.snapshots[i].t, blo, bhi, cfg.dx);
      write_text_file(cfg.out + "/" + base + "_v.csv", csv);
      man.add_file(cfg.out, std::string(base) + "_v.csv");
    }
  }
  meta["max_excursion"] = traj.max_excursion;
  meta["steps"] = traj.steps;
  write_text_file(cfg.out + "/run_meta.json", meta.dump(2) + "\n");
  man.add_file(cfg.out, "run_meta.json");
  man.add_check("range_preserved", traj.max_excursion <= 1e-9,
                "max pre-clamp excursion " + std::to_string(traj.max_excursion));
  std::cout << "simulated " << traj.snapshots.size() << " snapshots, " << traj.steps
            << " steps\n";
  return 0;
}

Trajectory load_trajectory(const std::string& dir) {
  nlohmann::json meta = nlohmann::json::parse(read_text_file(dir + "/run_meta.json"));
  Trajectory traj;
  for (const auto& base : meta.at("snapshots"))
    traj.snapshots.push_back(load_snapshot(dir + "/" + base.get<std::string>()));
  return traj;
}

int cmd_width_report(const RunConfig& cfg, Manifest& man) {
  if (cfg.run_dir.empty()) throw std::invalid_argument("width-report: need --run <simulate dir>");
  AtomicMeasure mu = load_measure(cfg.run_dir + "/measure.json");
  Trajectory traj = load_trajectory(cfg.run_dir);
  Classification cls = classify(mu);
  bool all_ok = true;
  ordered_json summary;
  summary["verdict"] = verdict_name(cls.verdict);
  summary["eps"] = ordered_json::array();
  std::optional<HTable> h;
  if (!cfg.h_table.empty()) h = HTable::load(cfg.h_table);
  for (double e : cfg.eps) {
    WidthProfile prof = width_profile(traj, mu, e, cls);
    std::ostringstream name;
    name << "width_eps" << e << ".csv";
    write_text_file(cfg.out + "/" + name.str(), width_profile_csv(prof));
    man.add_file(cfg.out, name.str());
    ordered_json je;
    je["eps"] = e;
    je["max_L"] = prof.max_L;
    je["any_L_sentinel"] = prof.any_L_sentinel;
    je["max_graph_L"] = prof.max_graph_L;
    if (h && (cls.verdict == Verdict::H1_FrontAndBounded ||
              cls.verdict == Verdict::H3_BoundedNotFront)) {
      WidthCertificate cert = certified_width_bound(mu, e, *h);
      je["certified_L"] = cert.L_eps;
      bool ok = !prof.any_L_sentinel && prof.max_L <= cert.L_eps;
      std::ostringstream detail;
      detail << "max_L " << prof.max_L << (prof.any_L_sentinel ? " (sentinel hit)" : "")
             << " vs certified " << cert.L_eps;
      man.add_check("width_within_certificate_eps" + std::to_string(e), ok, detail.str());
      all_ok = all_ok && ok;
      if (cls.verdict == Verdict::H1_FrontAndBounded && cert.intermediates.count("L_graph")) {
        double bound = cert.intermediates.at("L_graph") + traj.snapshots[0].dx;
        bool gok = prof.max_graph_L <= bound;
        std::ostringstream gd;
        gd << "max_graph_L " << prof.max_graph_L << " vs certified " << bound;
        man.add_check("graph_within_certificate_eps" + std::to_string(e), gok, gd.str());
        all_ok = all_ok && gok;
        je["certified_graph_L"] = bound;
      }
    }
    summary["eps"].push_back(je);
  }
  write_text_file(cfg.out + "/width_summary.json", summary.dump(2) + "\n");
  man.add_file(cfg.out, "width_summary.json");
  std::cout << summary.dump(2) << "\n";
  return all_ok ? 0 : 3;
}

int cmd_certify_geometry(const RunConfig& cfg, Manifest& man) {
  Rng rng(cfg.seed);
  ordered_json report = ordered_json::array();
  bool all_ok = true;
  int made = 0;
  while (made < cfg.count) {
    std::size_t d = static_cast<std::size_t>(cfg.dim);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < 2 * d + 1; ++i) pts.push_back(rng.in_ball(d));
    if (!geom::origin_interior(pts)) continue;
    ++made;
    auto cert = geom::wiggle_radius(pts);
    auto reduced = geom::caratheodory_reduce(pts, zeros(d));
    bool mc_ok = true;
    Rng mc = rng.split(static_cast<std::uint64_t>(made));
    for (int t = 0; t < cfg.trials; ++t) {
      std::vector<Vec> moved;
      for (const auto& p : pts) moved.push_back(p + mc.in_ball(d, cert.epsilon));
      if (!geom::hull_contains(moved, zeros(d))) {
        mc_ok = false;
        break;
      }
    }
    ordered_json inst;
    inst["epsilon"] = cert.epsilon;
    inst["interior_radius"] = cert.interior_radius;
    inst["caratheodory_size"] = reduced.size();
    inst["caratheodory_ok"] = reduced.size() <= 2 * d;
    inst["mc_ok"] = mc_ok;
    report.push_back(inst);
    all_ok = all_ok && mc_ok && reduced.size() <= 2 * d;
  }
  write_text_file(cfg.out + "/geometry_certificates.json", report.dump(2) + "\n");
  man.add_file(cfg.out, "geometry_certificates.json");
  man.add_check("wiggle_certificates_validated", all_ok,
                std::to_string(cfg.count) + " instances x " + std::to_string(cfg.trials) +
                    " perturbations");
  std::cout << "certified " << cfg.count << " instances: " << (all_ok ? "ok" : "FAILED") << "\n";
  return all_ok ? 0 : 3;
}

int cmd_calibrate_h(const RunConfig& cfg, Manifest& man) {
  ReactionFn reaction = pick_reaction(cfg.reaction);
  auto bad = reaction.check();
  if (!bad.empty()) throw std::invalid_argument("reaction rejected: " + bad.front());
  HCalibrationOptions opts;
  opts.dx = cfg.dx;
  opts.cfl = cfg.cfl;
  HTable h = estimate_h(reaction, cfg.lambdas, opts);
  h.save(cfg.out + "/h_table.json");
  man.add_file(cfg.out, "h_table.json");
  man.add_check("h_table_valid", true,
                "id " + h.id + ", t0 disagreement " + h.meta.at("t0_disagreement"));
  std::cout << "h table " << h.id << " with " << h.v.size() << " knots\n";
  return 0;
}

int cmd_h2_diagnose(const RunConfig& cfg, Manifest& man) {
  AtomicMeasure mu = load_measure(cfg.measure_path);
  HTable h = cfg.h_table.empty()
                 ? HTable::from_function([](double v) { return v / (1.0 + v); }, 1e-8, 1e8, 2000,
                                         "rational-fallback")
                 : HTable::load(cfg.h_table);
  DivergenceDiagnostic diag =
      h2_divergence_diagnostic(mu, cfg.eps.at(0), cfg.delta, cfg.horizon, cfg.samples, h);
  write_text_file(cfg.out + "/diagnostic.csv", diagnostic_to_csv(diag));
  write_text_file(cfg.out + "/diagnostic.json", diagnostic_to_json(diag) + "\n");
  man.add_file(cfg.out, "diagnostic.csv");
  man.add_file(cfg.out, "diagnostic.json");
  man.add_check("outer_component_decays", diag.outer_decay_ok, "");
  man.add_check("core_component_grows", diag.core_growth_ok, "");
  man.add_check("level_stays_beyond_ray", diag.ray_below_level_ok, "");
  bool ok = diag.outer_decay_ok && diag.core_growth_ok && diag.ray_below_level_ok;
  std::cout << diagnostic_to_json(diag) << "\n";
  return ok ? 0 : 3;
}

int cmd_report(const RunConfig& cfg) {
  Manifest m = Manifest::load(cfg.run_dir.empty() ? cfg.out : cfg.run_dir);
  std::cout << "command: " << m.command << "  (version " << m.code_version << ")\n";
  std::cout << "files:\n";
  for (const auto& [name, hash] : m.files) std::cout << "  " << name << "  " << hash << "\n";
  bool ok = true;
  for (const auto& c : m.checks) {
    std::cout << (c.pass ? "  PASS  " : "  FAIL  ") << c.name;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
    ok = ok && c.pass;
  }
  std::cout << (ok ? "ALL CHECKS PASS" : "CHECKS FAILED") << "\n";
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frontlab: reaction-diffusion front laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--measure", cfg.measure_path, "measure spec JSON");
    sub->add_option("--eps", cfg.eps, "width levels in (0, 1/2)");
    sub->add_option("--box", cfg.box, "per-axis lo:hi");
    sub->add_option("--dx", cfg.dx, "grid spacing");
    sub->add_option("--t0", cfg.t0, "initialization time (< 0)");
    sub->add_option("--t-end", cfg.t_end, "final time");
    sub->add_option("--snapshots", cfg.snapshots, "snapshot times");
    sub->add_option("--reaction", cfg.reaction, "reaction name");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--cfl", cfg.cfl, "CFL fraction");
    sub->add_option("--h-table", cfg.h_table, "calibrated h table JSON");
    sub->add_option("--delta", cfg.delta, "radial split for diagnostics");
    sub->add_option("--horizon", cfg.horizon, "diagnostic horizon");
    sub->add_option("--samples", cfg.samples, "diagnostic sample count");
    sub->add_option("--count", cfg.count, "instance count");
    sub->add_option("--dim", cfg.dim, "dimension for generated instances");
    sub->add_option("--trials", cfg.trials, "Monte-Carlo trials per instance");
    sub->add_option("--lambdas", cfg.lambdas, "decay rates for calibration");
    sub->add_option("--run", cfg.run_dir, "existing run directory");
    sub->add_flag("--dump-v", cfg.dump_v, "dump linearized-field CSV per snapshot");
    sub->add_option("--config", config_path, "JSON config overriding all flags");
  };

  for (const char* name : {"classify", "simulate", "width-report", "certify-geometry",
                           "calibrate-h", "h2-diagnose", "report"})
    add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!config_path.empty()) cfg.apply_config_file(config_path);

    if (cfg.command == "report") return cmd_report(cfg);

    fs::create_directories(cfg.out);
    Timer timer;
    Manifest man;
    man.command = cfg.command;
    man.config_json = cfg.to_json().dump();
    int rc = 1;
    if (cfg.command == "classify") rc = cmd_classify(cfg, man);
    else if (cfg.command == "simulate") rc = cmd_simulate(cfg, man);
    else if (cfg.command == "width-report") rc = cmd_width_report(cfg, man);
    else if (cfg.command == "certify-geometry") rc = cmd_certify_geometry(cfg, man);
    else if (cfg.command == "calibrate-h") rc = cmd_calibrate_h(cfg, man);
    else if (cfg.command == "h2-diagnose") rc = cmd_h2_diagnose(cfg, man);
    man.wall_clock_ms = timer.ms();
    man.save(cfg.out);
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
