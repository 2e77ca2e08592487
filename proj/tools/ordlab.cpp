// ordlab: batch experiments over the library with reproducible seeds and
// plot-ready CSV/JSON outputs. Every run that writes files drops a manifest
// next to them; identical manifests (timestamp aside) mean identical outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ordlab/csv.hpp"
#include "ordlab/cylinder.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/fbm.hpp"
#include "ordlab/frostman.hpp"
#include "ordlab/gauge.hpp"
#include "ordlab/grid_path.hpp"
#include "ordlab/local_scale.hpp"
#include "ordlab/logsum.hpp"
#include "ordlab/manifest.hpp"
#include "ordlab/path_analysis.hpp"
#include "ordlab/rng.hpp"
#include "ordlab/small_ball.hpp"
#include "ordlab/spectrum.hpp"

namespace fs = std::filesystem;
using namespace ordlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;
constexpr int kExitResolution = 3;

std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::uint64_t env_seed_fallback() {
  if (const char* env = std::getenv("ORDLAB_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

// Manifest sits inside `out` when it is a directory, as a sibling otherwise.
void emit_manifest(const std::string& out, const std::string& command_line,
                   const std::string& config_blob, std::uint64_t seed) {
  const RunManifest m = make_manifest(command_line, config_blob, seed);
  const fs::path p(out);
  if (fs::is_directory(p))
    write_manifest((p / "manifest.json").string(), m);
  else
    write_manifest(out + ".manifest.json", m);
}

GridPath load_center(const std::string& center_file, std::size_t zero_n) {
  if (!center_file.empty()) return read_path_auto(center_file);
  if (zero_n == 0)
    throw DomainError("provide --center FILE or --zero N for the center path");
  return GridPath::zeros(zero_n);
}

std::string flag_cell(bool flag) { return flag ? "1" : "0"; }

// --- simulate ---------------------------------------------------------

struct SimulateArgs {
  std::size_t n = 1024;
  double hurst = 0.5;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string method = "auto";
  std::string out;
};

int run_simulate(const SimulateArgs& args, const std::string& cmdline) {
  FbmSpec spec;
  spec.hurst = args.hurst;
  spec.n = args.n;
  spec.seed = args.seed_set ? args.seed : env_seed_fallback();
  if (args.method == "cholesky")
    spec.method = FbmMethod::cholesky;
  else if (args.method == "circulant")
    spec.method = FbmMethod::circulant;
  else if (args.method == "auto")
    spec.method = args.n <= 4096 ? FbmMethod::cholesky : FbmMethod::circulant;
  else
    throw DomainError("simulate: unknown method '" + args.method + "'");

  const GridPath path = simulate_fbm(spec);
  if (args.out.size() >= 4 &&
      args.out.compare(args.out.size() - 4, 4, ".bin") == 0)
    write_path_binary(path, args.out);
  else
    write_path_csv(path, args.out);

  std::ostringstream blob;
  blob << "simulate n=" << spec.n << " hurst=" << format_double(spec.hurst)
       << " method=" << args.method << " seed=" << spec.seed;
  emit_manifest(args.out, cmdline, blob.str(), spec.seed);
  std::cout << "wrote " << args.out << " (n=" << spec.n << ")\n";
  return kExitOk;
}

// --- analyze ----------------------------------------------------------

struct AnalyzeArgs {
  std::string path_file;
  std::vector<std::size_t> m_list;
  std::size_t tail_window = 0;
  double holder_beta = 0.0;
  std::string holder_mode = "exact";
  std::size_t chord_m = 0;
  std::string out;
};

int run_analyze(const AnalyzeArgs& args, const std::string& cmdline) {
  const GridPath path = read_path_auto(args.path_file);
  std::vector<std::size_t> m_list = args.m_list;
  if (m_list.empty()) m_list = dyadic_divisors(path.n);

  const OreyEstimate orey = orey_exponents(path, m_list, args.tail_window);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw IoError("cannot open for writing: " + args.out);
    out = &file;
  }
  *out << "m,Q_m,ratio\n";
  for (const auto& [m, ratio] : orey.ratios)
    *out << m << ',' << format_double(quadratic_variation(path, m)) << ','
         << format_double(ratio) << '\n';

  std::cout << "q_minus=" << format_double(orey.q_minus)
            << " q_plus=" << format_double(orey.q_plus) << "\n";
  if (args.holder_beta > 0.0) {
    const HolderMode mode = args.holder_mode == "bound"
                                ? HolderMode::adjacent_upper_bound
                                : HolderMode::exact;
    std::cout << "holder_seminorm(beta=" << format_double(args.holder_beta)
              << (mode == HolderMode::exact ? ",exact)=" : ",upper-bound)=")
              << format_double(holder_seminorm(path, args.holder_beta, mode))
              << "\n";
  }
  if (args.chord_m > 0) {
    const ChordDeviation dev = chord_deviation(path, args.chord_m);
    std::cout << "chord_deviation(m=" << args.chord_m
              << ")=" << format_double(dev.value)
              << (dev.no_interior ? " (no interior points)" : "") << "\n";
  }

  if (!args.out.empty()) {
    std::ostringstream blob;
    blob << "analyze " << args.path_file << " n=" << path.n;
    emit_manifest(args.out, cmdline, blob.str(), 0);
  }
  return kExitOk;
}

// --- cylinder ---------------------------------------------------------

struct CylinderArgs {
  std::string center_file;
  std::size_t zero_n = 0;
  std::size_t n = 0;  // optional subsample depth
  double eps = 0.5;
  std::string method = "exact";
  std::size_t nodes = 256;  // 0 = auto refinement
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t shards = 64;
  int threads = 0;
  std::string out;
};

int run_cylinder(const CylinderArgs& args, const std::string& cmdline) {
  GridPath center = load_center(args.center_file, args.zero_n);
  if (args.n != 0) center = center.subsample(args.n);
  const CylinderSpec spec{center, args.eps};
  const std::uint64_t seed = args.seed_set ? args.seed : env_seed_fallback();

  LogProb result;
  std::size_t nodes_used = args.nodes;
  if (args.method == "exact") {
    result = args.nodes == 0 ? cylinder_log_measure_exact_auto(spec)
                             : cylinder_log_measure_exact(spec, args.nodes);
    nodes_used = result.nodes_used;
  } else if (args.method == "mc") {
    result = cylinder_log_measure_mc(
        spec, {args.samples, seed, args.shards, args.threads});
    nodes_used = 0;
  } else {
    throw DomainError("cylinder: unknown method '" + args.method + "'");
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw IoError("cannot open for writing: " + args.out);
    out = &file;
  }
  *out << "n,epsilon,log_p,stderr_log,method,nodes,zero_hits\n";
  *out << center.n << ',' << format_double(args.eps) << ','
       << (result.zero_hits ? "" : format_double(result.log_p)) << ','
       << (result.stderr_log ? format_double(*result.stderr_log) : "") << ','
       << args.method << ',' << nodes_used << ',' << flag_cell(result.zero_hits)
       << '\n';

  if (!args.out.empty()) {
    std::ostringstream blob;
    blob << "cylinder n=" << center.n << " eps=" << format_double(args.eps)
         << " method=" << args.method << " nodes=" << nodes_used
         << " samples=" << args.samples << " seed=" << seed;
    emit_manifest(args.out, cmdline, blob.str(), seed);
  }
  if (result.resolution_warning) {
    std::cerr << "warning: quadrature nodes may under-resolve the kernel\n";
    return kExitResolution;
  }
  return kExitOk;
}

// --- smallball --------------------------------------------------------

struct SmallballArgs {
  std::string mode = "ball";  // ball | sandwich | ratios
  std::string center_file;
  std::size_t zero_n = 0;
  double eps = 0.5;
  std::size_t n = 4;
  std::size_t refine = 8;
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double beta = 0.5;
  std::vector<std::size_t> n_list;
  std::size_t nodes = 256;
  std::size_t shards = 64;
  int threads = 0;
  std::string out_dir;
};

int run_smallball(const SmallballArgs& args, const std::string& cmdline) {
  const GridPath center = load_center(args.center_file, args.zero_n);
  const std::uint64_t seed = args.seed_set ? args.seed : env_seed_fallback();

  fs::create_directories(args.out_dir);
  std::ostringstream blob;
  blob << "smallball mode=" << args.mode << " eps=" << format_double(args.eps)
       << " seed=" << seed;

  if (args.mode == "ball") {
    const LogProb r =
        ball_log_measure_mc(center, args.eps, args.samples, args.refine, seed,
                            args.shards, args.threads);
    const std::string path = (fs::path(args.out_dir) / "ball.csv").string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "epsilon,log_p,stderr_log,zero_hits\n";
    out << format_double(args.eps) << ','
        << (r.zero_hits ? "" : format_double(r.log_p)) << ','
        << (r.stderr_log ? format_double(*r.stderr_log) : "") << ','
        << flag_cell(r.zero_hits) << '\n';
    std::cout << "log_ball=" << (r.zero_hits ? "-inf" : format_double(r.log_p))
              << "\n";
  } else if (args.mode == "sandwich") {
    const SandwichResult r =
        ball_sandwich(center, args.eps, args.n, args.nodes);
    const std::string path =
        (fs::path(args.out_dir) / "sandwich.csv").string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "n,epsilon,delta_n,valid,lower_log,upper_log\n";
    out << r.n << ',' << format_double(r.epsilon) << ','
        << format_double(r.delta_n) << ',' << flag_cell(r.valid) << ','
        << (r.valid ? format_double(r.lower_log) : "") << ','
        << (r.valid ? format_double(r.upper_log) : "") << '\n';
    std::cout << (r.valid ? "sandwich valid\n" : "sandwich invalid\n");
  } else if (args.mode == "ratios") {
    std::vector<std::size_t> n_list = args.n_list;
    if (n_list.empty()) n_list = dyadic_divisors(center.n);
    const auto pts =
        local_order_cylinder_estimate(center, args.beta, n_list, args.nodes);
    const std::string path = (fs::path(args.out_dir) / "ratios.csv").string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "n,beta,epsilon,log_cyl,ratio\n";
    for (const auto& pt : pts)
      out << pt.n << ',' << format_double(args.beta) << ','
          << format_double(pt.epsilon) << ',' << format_double(pt.log_cyl)
          << ',' << format_double(pt.ratio) << '\n';
    std::cout << "wrote " << pts.size() << " ratios\n";
  } else {
    throw DomainError("smallball: unknown mode '" + args.mode + "'");
  }

  emit_manifest(args.out_dir, cmdline, blob.str(), seed);
  return kExitOk;
}

// --- frostman ---------------------------------------------------------

struct FrostmanArgs {
  std::string instance_file;
  std::string out;
};

int run_frostman(const FrostmanArgs& args, const std::string& cmdline) {
  const FrostmanInstance inst = load_frostman_instance(args.instance_file);
  const FrostmanSolution sol = max_frostman_mass(inst.tree, inst.gauge);
  const FrostmanReport rep = frostman_verify(sol, inst.tree, inst.gauge);

  const std::string text = frostman_solution_json(sol, rep, inst.tree.arity);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out);
    if (!out) throw IoError("cannot open for writing: " + args.out);
    out << text;
    std::ostringstream blob;
    blob << "frostman " << args.instance_file << " depth=" << inst.tree.depth;
    emit_manifest(args.out, cmdline, blob.str(), 0);
  }
  if (!rep.feasible || !rep.optimal) {
    std::cerr << "frostman: solution failed verification\n";
    return kExitResolution;
  }
  return kExitOk;
}

// --- spectrum ---------------------------------------------------------

struct SpectrumArgs {
  std::string config_file;
  std::string out_dir;
  std::vector<double> xi_grid = {0.5, 1.0, 1.9, 2.0, 4.0, 6.0, 10.0};
  int threads = -1;  // -1: respect config
};

int run_spectrum(const SpectrumArgs& args, const std::string& cmdline) {
  ExperimentConfig cfg = ExperimentConfig::from_json_file(args.config_file);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.threads >= 0) cfg.threads = args.threads;
  if (cfg.out_dir.empty())
    throw DomainError("spectrum: provide out_dir in the config or --out");

  const ExperimentResult result = fbm_local_order_experiment(cfg);
  const auto table = spectrum_table(args.xi_grid, result.summaries);

  fs::create_directories(cfg.out_dir);
  const std::string path = (fs::path(cfg.out_dir) / "spectrum.csv").string();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "xi,f_theory,f_estimate,empty_level_set,components\n";
  for (const auto& pt : table) {
    const bool empty_set = pt.f_theory == kLogZero;
    out << format_double(pt.xi) << ','
        << (empty_set ? "" : format_double(pt.f_theory)) << ','
        << (pt.f_estimate ? format_double(*pt.f_estimate) : "") << ','
        << flag_cell(empty_set) << ',' << pt.components << '\n';
  }

  // JSON twin of the table: the empty-level sentinel is the string "-inf",
  // never a float NaN/Infinity.
  nlohmann::json jtable = nlohmann::json::array();
  for (const auto& pt : table) {
    nlohmann::json row;
    row["xi"] = pt.xi;
    if (pt.f_theory == kLogZero)
      row["f_theory"] = "-inf";
    else
      row["f_theory"] = pt.f_theory;
    if (pt.f_estimate)
      row["f_estimate"] = *pt.f_estimate;
    else
      row["f_estimate"] = nullptr;
    row["components"] = pt.components;
    jtable.push_back(std::move(row));
  }
  const std::string jpath = (fs::path(cfg.out_dir) / "spectrum.json").string();
  std::ofstream jout(jpath);
  if (!jout) throw IoError("cannot open for writing: " + jpath);
  jout << jtable.dump(2) << "\n";

  std::ifstream cfg_in(args.config_file);
  std::ostringstream cfg_blob;
  cfg_blob << cfg_in.rdbuf();
  const std::uint64_t seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();
  emit_manifest(cfg.out_dir, cmdline, cfg_blob.str(), seed);

  for (const auto& s : result.summaries)
    std::cout << "H=" << format_double(s.hurst)
              << " theory=" << format_double(s.theory)
              << " median_ratio=" << format_double(s.median_tail_ratio)
              << " runs=" << s.runs << " excluded=" << s.excluded << "\n";
  return kExitOk;
}

// --- selftest ---------------------------------------------------------

struct SelftestArgs {
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

// Deterministic invariant battery. Output bytes depend only on the seed;
// the thread cap never changes results because shard counts are fixed.
int run_selftest(const SelftestArgs& args) {
  const std::uint64_t seed = args.seed_set ? args.seed : env_seed_fallback();
  const int threads = args.threads;
  std::ostream& out = std::cout;
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& v) {
    out << (ok ? "ok " : "FAIL ") << name << " " << v << "\n";
    all_ok = all_ok && ok;
  };

  {  // counter-based generator block values
    const Philox4x32 gen(seed);
    const auto b = gen.block(0, 0);
    std::ostringstream v;
    v << std::hex << b[0] << ':' << b[1] << ':' << b[2] << ':' << b[3];
    report("philox_block", true, v.str());
  }
  {  // gauge identities
    const auto g = GaugeSpec::parametric(1, 1, 2.0);
    const double lv = gauge_log_eval(g, 0.5);
    report("gauge_dim_alpha2", std::abs(lv - std::log(0.25)) < 1e-15,
           format_double(lv));
    const auto ord = GaugeSpec::parametric(2, 1, 1.0);
    const double lo = gauge_log_eval(ord, 1.0);
    report("gauge_ord_at_1", lo == -1.0, format_double(lo));
  }
  {  // local scales of samples generated from an exact gauge law
    const auto g = GaugeSpec::parametric(2, 1, 1.5);
    std::vector<LocalScaleSample> samples;
    for (double eps = 0.25; eps > 1e-4; eps *= 0.5)
      samples.push_back({eps, gauge_log_eval(g, eps)});
    const auto est = local_scale_estimate(samples, 2, 1);
    report("local_scale_recovery",
           std::abs(est.lower - 1.5) < 1e-12 && std::abs(est.upper - 1.5) < 1e-12,
           format_double(est.lower));
  }
  {  // decay conditions of the scaling family
    std::vector<double> grid;
    for (double eps = 0.5; eps > 1e-6; eps *= 0.5) grid.push_back(eps);
    const auto rep = scaling_condition_check(2, 1, 2.0, 1.0, 1.2, grid);
    report("scaling_conditions", rep.pass(), "p=2 q=1 a=2 b=1 l=1.2");
  }
  {  // exact quadrature vs the Gaussian CDF at depth 1
    const CylinderSpec spec{GridPath::zeros(1), 1.0};
    const double got = cylinder_log_measure_exact(spec, 128).log_p;
    const double want = std::log(std::erf(1.0 / std::sqrt(2.0)));
    report("cylinder_depth1_gauss", std::abs(got - want) < 1e-9,
           format_double(got));
  }
  {  // exact vs Monte Carlo, fixed shards
    const CylinderSpec spec{GridPath::zeros(4), 0.5};
    const LogProb ex = cylinder_log_measure_exact(spec, 256);
    const LogProb mc =
        cylinder_log_measure_mc(spec, {200000, seed, 64, threads});
    const double diff = std::abs(ex.log_p - mc.log_p);
    report("cylinder_exact_vs_mc", diff < 4.0 * *mc.stderr_log,
           format_double(ex.log_p) + " " + format_double(mc.log_p));
  }
  {  // universal bound at radius n^{-1/2}
    bool ok = true;
    for (std::size_t n : {2ul, 8ul, 32ul}) {
      const CylinderSpec spec{GridPath::zeros(n),
                              1.0 / std::sqrt(static_cast<double>(n))};
      ok = ok &&
           cylinder_log_measure_exact(spec, 256).log_p <= univ_upper_bound(n);
    }
    report("univ_bound", ok, "n=2,8,32");
  }
  {  // bridge tail series value
    const BridgeTail t = bridge_sup_tail(0.5, 1.0, 16);
    report("bridge_tail", std::abs(t.value - 0.963947) < 1e-5,
           format_double(t.value));
  }
  {  // frostman duality on seeded random trees
    bool ok = true;
    RandomStream rng(seed, 0x7full << 56);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
      DyadicTree tree;
      tree.depth = 6;
      tree.arity = 2;
      for (std::uint64_t leaf = 0; leaf < 64; ++leaf)
        if (rng.uniform01() < 0.3) tree.marked.push_back(leaf);
      if (tree.marked.empty()) tree.marked.push_back(0);
      const auto gauge = GaugeSpec::parametric(1, 1, 0.7);
      const auto cover = min_cover_weight(tree, gauge);
      const auto flow = max_frostman_mass(tree, gauge);
      ok = ok && std::abs(cover.weight - flow.total_mass) <=
                     1e-12 * std::max(1.0, cover.weight);
    }
    report("frostman_duality", ok, "10 trees");
  }
  {  // covering-number identity at alpha=1, eps=1/2
    const double logn = holder_ball_log_covering(1.0, 0.5);
    report("holder_covering_9", std::abs(logn - std::log(9.0)) < 1e-12,
           format_double(logn));
  }
  {  // spectrum identity
    const std::vector<double> grid = {2.0, 6.0, 1.0};
    const auto table = spectrum_table(grid);
    const bool ok = table[0].f_theory == 2.0 && table[1].f_theory == 4.0 &&
                    table[2].f_theory == kLogZero;
    report("spectrum_identity", ok, "xi=2,6,1");
  }
  {  // orey ratios of the identity path
    GridPath line;
    line.n = 256;
    line.values.resize(257);
    for (std::size_t j = 0; j <= 256; ++j)
      line.values[j] = static_cast<double>(j) / 256.0;
    const auto m_list = dyadic_divisors(256);
    const OreyEstimate est = orey_exponents(line, m_list);
    report("orey_identity_path",
           std::abs(est.q_minus - 1.0) < 1e-12 &&
               std::abs(est.q_plus - 1.0) < 1e-12,
           format_double(est.q_minus));
  }

  out << (all_ok ? "selftest: PASS\n" : "selftest: FAIL\n");
  return all_ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordlab: Wiener-measure geometry at desk scale"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  const std::string cmdline = join_argv(argc, argv);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "generate an fBm grid path");
  simulate->add_option("--n", sim.n, "number of grid subintervals");
  simulate->add_option("--hurst", sim.hurst, "Hurst parameter in (0,1)");
  auto* sim_seed = simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--method", sim.method, "auto|cholesky|circulant");
  simulate->add_option("--out", sim.out, "output path (.csv or .bin)")
      ->required();

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Q_m / Orey table of a path");
  analyze->add_option("--path", ana.path_file, "path file")->required();
  analyze->add_option("--m-list", ana.m_list, "meshes (default: dyadic)");
  analyze->add_option("--tail-window", ana.tail_window,
                      "tail window (default: half)");
  analyze->add_option("--holder", ana.holder_beta, "also report the seminorm");
  analyze->add_option("--holder-mode", ana.holder_mode, "exact|bound");
  analyze->add_option("--chord", ana.chord_m, "also report chord deviation");
  analyze->add_option("--out", ana.out, "output CSV (default: stdout)");

  CylinderArgs cyl;
  auto* cylinder = app.add_subcommand("cylinder", "cylinder measure");
  cylinder->add_option("--center", cyl.center_file, "center path file");
  cylinder->add_option("--zero", cyl.zero_n, "use the zero center at depth N");
  cylinder->add_option("--n", cyl.n, "subsample the center to depth n");
  cylinder->add_option("--eps", cyl.eps, "radius")->required();
  cylinder->add_option("--method", cyl.method, "exact|mc");
  cylinder->add_option("--nodes", cyl.nodes, "quadrature nodes (0 = auto)");
  cylinder->add_option("--samples", cyl.samples, "MC samples");
  auto* cyl_seed = cylinder->add_option("--seed", cyl.seed, "RNG seed");
  cylinder->add_option("--shards", cyl.shards, "MC shard count");
  cylinder->add_option("--threads", cyl.threads, "worker cap");
  cylinder->add_option("--out", cyl.out, "output CSV (default: stdout)");

  SmallballArgs sb;
  auto* smallball = app.add_subcommand("smallball", "sup-norm ball tools");
  smallball->add_option("--mode", sb.mode, "ball|sandwich|ratios");
  smallball->add_option("--center", sb.center_file, "center path file");
  smallball->add_option("--zero", sb.zero_n, "zero center at depth N");
  smallball->add_option("--eps", sb.eps, "radius");
  smallball->add_option("--n", sb.n, "sandwich cylinder depth");
  smallball->add_option("--refine", sb.refine, "ball MC grid refinement");
  smallball->add_option("--samples", sb.samples, "MC samples");
  auto* sb_seed = smallball->add_option("--seed", sb.seed, "RNG seed");
  smallball->add_option("--beta", sb.beta, "radius exponent for ratios");
  smallball->add_option("--n-list", sb.n_list, "cylinder depths for ratios");
  smallball->add_option("--nodes", sb.nodes, "quadrature nodes");
  smallball->add_option("--shards", sb.shards, "MC shard count");
  smallball->add_option("--threads", sb.threads, "worker cap");
  smallball->add_option("--out", sb.out_dir, "output directory")->required();

  FrostmanArgs fro;
  auto* frostman = app.add_subcommand("frostman", "solve + verify an instance");
  frostman->add_option("--instance", fro.instance_file, "instance JSON")
      ->required();
  frostman->add_option("--out", fro.out, "solution JSON (default: stdout)");

  SpectrumArgs spe;
  auto* spectrum = app.add_subcommand("spectrum", "full experiment harness");
  spectrum->add_option("--config", spe.config_file, "experiment config JSON")
      ->required();
  spectrum->add_option("--out", spe.out_dir, "output directory");
  spectrum->add_option("--xi-grid", spe.xi_grid, "spectrum xi grid");
  spectrum->add_option("--threads", spe.threads, "worker cap");

  SelftestArgs st;
  auto* selftest = app.add_subcommand("selftest", "run the invariant suites");
  auto* st_seed = selftest->add_option("--seed", st.seed, "RNG seed");
  selftest->add_option("--threads", st.threads, "worker cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage / error text
    return e.get_exit_code() == 0 ? kExitOk : kExitDomain;
  }

  sim.seed_set = sim_seed->count() > 0;
  cyl.seed_set = cyl_seed->count() > 0;
  sb.seed_set = sb_seed->count() > 0;
  st.seed_set = st_seed->count() > 0;

  try {
    if (simulate->parsed()) return run_simulate(sim, cmdline);
    if (analyze->parsed()) return run_analyze(ana, cmdline);
    if (cylinder->parsed()) return run_cylinder(cyl, cmdline);
    if (smallball->parsed()) return run_smallball(sb, cmdline);
    if (frostman->parsed()) return run_frostman(fro, cmdline);
    if (spectrum->parsed()) return run_spectrum(spe, cmdline);
    if (selftest->parsed()) return run_selftest(st);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << "\n";
    return kExitResolution;
  }
  return kExitDomain;
}
