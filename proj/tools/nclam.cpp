#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nclam/errors.hpp"
#include "nclam/iterate.hpp"
#include "nclam/json_io.hpp"
#include "nclam/lamination.hpp"
#include "nclam/noncrossing.hpp"
#include "nclam/offspring.hpp"
#include "nclam/render.hpp"
#include "nclam/rng.hpp"
#include "nclam/samplers.hpp"
#include "nclam/stats.hpp"
#include "nclam/verify.hpp"

namespace {

constexpr const char* kVersion = "nclam 0.1.0";

using nclam::Index;

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed not given; generated seed = " << s << "\n";
  return s;
}

int default_workers() {
  if (const char* env = std::getenv("NCLAM_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

// Replica i always consumes the stream derived from (seed, "replica", i);
// the worker count changes scheduling only.
void parallel_replicas(int workers, int reps, std::uint64_t seed,
                       const std::function<void(int, nclam::Rng&)>& body) {
  workers = std::max(1, workers);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= reps) return;
        nclam::Rng rng = nclam::Rng::from_seed(seed).derive("replica", static_cast<std::uint64_t>(i));
        body(i, rng);
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw nclam::DomainError("cannot open output file '" + path + "'");
  return file;
}

std::string read_in(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nclam::DomainError("cannot open input file '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

std::vector<double> parse_alphas(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

struct LawSpec {
  // "stable:<alpha>" or "critical:<weights>"
  bool stable = false;
  double alpha = 0.0;
  std::string weights;
};

LawSpec parse_law(const std::string& spec) {
  LawSpec law;
  if (spec.rfind("stable:", 0) == 0) {
    law.stable = true;
    law.alpha = std::stod(spec.substr(7));
    return law;
  }
  if (spec.rfind("critical:", 0) == 0) {
    law.weights = spec.substr(9);
    return law;
  }
  throw nclam::DomainError("law must be stable:<alpha> or critical:<weights-spec>, got '" + spec + "'");
}

int cmd_sample_tree(const std::string& law_spec, Index n, int reps, std::optional<std::uint64_t> seed_opt,
                    const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const LawSpec law = parse_law(law_spec);
  std::cerr << "sample-tree law=" << law_spec << " n=" << n << " reps=" << reps << " seed=" << seed << "\n";

  std::vector<nclam::PlaneTree> trees(static_cast<std::size_t>(reps));
  if (law.stable) {
    const nclam::StableOffspring mu(law.alpha);
    parallel_replicas(default_workers(), reps, seed,
                      [&](int i, nclam::Rng& rng) { trees[static_cast<std::size_t>(i)] = sample_bgw_conditioned(mu, n, rng); });
  } else {
    const nclam::WeightSeq w = nclam::WeightSeq::parse(law.weights);
    const nclam::OffspringPair pair = nclam::build_pair(w, nclam::solve_critical_b(w));
    const nclam::ConditionedSampler sampler(pair.mu);
    parallel_replicas(default_workers(), reps, seed,
                      [&](int i, nclam::Rng& rng) { trees[static_cast<std::size_t>(i)] = sampler.sample_tree(n, rng); });
  }
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  for (const auto& t : trees) out << nclam::to_json(t).dump() << "\n";
  return 0;
}

int cmd_sample_nc(const std::string& weights, Index n, int reps, std::optional<std::uint64_t> seed_opt,
                  const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  std::cerr << "sample-nc weights=" << weights << " n=" << n << " reps=" << reps << " seed=" << seed << "\n";
  const nclam::SimplyGeneratedSampler sampler(nclam::WeightSeq::parse(weights), n);
  std::vector<nclam::NoncrossingTree> out_trees(static_cast<std::size_t>(reps));
  parallel_replicas(default_workers(), reps, seed,
                    [&](int i, nclam::Rng& rng) { out_trees[static_cast<std::size_t>(i)] = sampler.sample(rng); });
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  for (const auto& t : out_trees) out << nclam::to_json(t).dump() << "\n";
  return 0;
}

int cmd_stats_longest_chord(const std::string& weights, Index n, int reps, std::optional<std::uint64_t> seed_opt,
                            int workers, const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const nclam::SimplyGeneratedSampler sampler(nclam::WeightSeq::parse(weights), n);
  std::vector<double> lambda(static_cast<std::size_t>(reps));
  parallel_replicas(workers, reps, seed, [&](int i, nclam::Rng& rng) {
    lambda[static_cast<std::size_t>(i)] = nclam::longest_chord(nclam::nc_to_lamination(sampler.sample(rng)));
  });
  const double ks = nclam::ks_distance(lambda, [](double x) { return nclam::brownian_longest_chord_cdf(x); });

  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "# " << kVersion << " stats longest-chord weights=" << weights << " n=" << n << " reps=" << reps
      << " seed=" << seed << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", ks);
  out << "# ks_vs_brownian_law=" << buf << "\n";
  out << "replica,lambda\n";
  for (int i = 0; i < reps; ++i) {
    std::snprintf(buf, sizeof buf, "%.12f", lambda[static_cast<std::size_t>(i)]);
    out << i << "," << buf << "\n";
  }
  return 0;
}

int cmd_stats_degrees(const std::string& weights, Index n, int reps, std::optional<std::uint64_t> seed_opt,
                      int workers, const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const nclam::SimplyGeneratedSampler sampler(nclam::WeightSeq::parse(weights), n);
  std::vector<nclam::PlaneTree> shapes(static_cast<std::size_t>(reps));
  parallel_replicas(workers, reps, seed,
                    [&](int i, nclam::Rng& rng) { shapes[static_cast<std::size_t>(i)] = sampler.sample_shape(rng); });
  const auto hist = nclam::degree_histogram(shapes);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "# " << kVersion << " stats degrees weights=" << weights << " n=" << n << " reps=" << reps
      << " seed=" << seed << "\n";
  out << "k,frequency,mu\n";
  char buf[64];
  for (const auto& [k, freq] : hist) {
    const double mu = sampler.pair().mu.at(k);
    std::snprintf(buf, sizeof buf, "%.12f", freq);
    out << k << "," << buf << ",";
    std::snprintf(buf, sizeof buf, "%.12f", mu);
    out << buf << "\n";
  }
  return 0;
}

int cmd_stats_count(Index n_max, const std::string& degrees_csv, const std::string& out_path) {
  std::optional<std::vector<int>> degrees;
  if (!degrees_csv.empty()) {
    std::vector<int> ds;
    std::stringstream ss(degrees_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) ds.push_back(std::stoi(item));
    }
    degrees = std::move(ds);
  }
  const nclam::CountTable table = nclam::count_table(n_max, degrees);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "# " << kVersion << " stats count n_max=" << n_max << " degrees="
      << (degrees_csv.empty() ? "all" : degrees_csv) << "\n";
  out << "n,count\n";
  for (const auto& [n, c] : table.counts) out << n << "," << c.str() << "\n";
  return 0;
}

int cmd_stats_dimension(double alpha, Index n, int reps, std::optional<std::uint64_t> seed_opt, int workers,
                        int j_min, int j_max, const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const nclam::StableOffspring law(alpha);
  std::vector<double> plain(static_cast<std::size_t>(reps)), tri(static_cast<std::size_t>(reps));
  parallel_replicas(workers, reps, seed, [&](int i, nclam::Rng& rng) {
    const nclam::PlaneTree tree = sample_bgw_conditioned(law, n, rng, 200'000'000'000ULL);
    const nclam::LukasiewiczPath path = encode(tree);
    plain[static_cast<std::size_t>(i)] = nclam::box_dimension(nclam::lamination_from_tree(path), j_min, j_max).slope;
    tri[static_cast<std::size_t>(i)] =
        nclam::box_dimension(nclam::triangulate(path, nclam::uniform_decoration(tree, rng)), j_min, j_max).slope;
  });
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "# " << kVersion << " stats dimension alpha=" << alpha << " n=" << n << " reps=" << reps
      << " seed=" << seed << " levels=" << j_min << ".." << j_max << "\n";
  out << "# reference: plain 2-1/alpha, triangulated 1+1/alpha\n";
  out << "replica,plain_slope,triangulated_slope\n";
  char buf[64];
  for (int i = 0; i < reps; ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", plain[static_cast<std::size_t>(i)]);
    out << i << "," << buf << ",";
    std::snprintf(buf, sizeof buf, "%.6f", tri[static_cast<std::size_t>(i)]);
    out << buf << "\n";
  }
  return 0;
}

int cmd_iterate(const std::string& alphas_csv, Index n, std::optional<std::uint64_t> seed_opt,
                const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const nclam::AlphaVector alphas{parse_alphas(alphas_csv)};
  std::cerr << "iterate alphas=" << alphas_csv << " n=" << n << " seed=" << seed
            << " dim_formula(conjectured, Eq-28-style reference)=" << nclam::dim_formula(alphas) << "\n";
  nclam::Rng rng = nclam::Rng::from_seed(seed);
  const nclam::Lamination lam = nclam::sample_iterated(alphas, n, rng);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << nclam::to_json(lam).dump() << "\n";
  return 0;
}

int cmd_render(const std::string& in_path, const std::string& out_path, const std::string& style_path) {
  const std::string text = read_in(in_path);
  const auto j = nlohmann::json::parse(text);
  nclam::RenderStyle style = nclam::RenderStyle::defaults();
  if (!style_path.empty()) {
    const auto js = nlohmann::json::parse(read_in(style_path));
    style.canvas_px = js.value("canvas_px", style.canvas_px);
    style.margin_px = js.value("margin_px", style.margin_px);
    style.circle_outline = js.value("circle_outline", style.circle_outline);
  }
  std::string svg;
  if (j.contains("chords")) {
    svg = nclam::render(nclam::lamination_from_json(j), style);
  } else if (j.contains("edges")) {
    svg = nclam::render(nclam::nc_from_json(j), style);
  } else {
    throw nclam::DomainError("input JSON has neither \"chords\" nor \"edges\"");
  }
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << svg;
  return 0;
}

int cmd_verify(const std::string& suite, std::optional<std::uint64_t> seed_opt, int workers,
               const std::string& self_path) {
  nclam::VerifyOptions options;
  if (seed_opt) options.seed = *seed_opt;
  options.workers = workers;
  options.cli_path = self_path;
  const auto results = nclam::run_suite(suite, options);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s %-24s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) + " - simply generated noncrossing trees and stable laminations"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  Index n = 100;
  int reps = 1;
  int workers = default_workers();
  std::string weights = "uniform", law = "stable:1.5", out_path, in_path, style_path;
  std::string alphas_csv = "1.3";
  std::string degrees_csv;
  Index n_max = 14;
  double alpha = 1.3;
  int j_min = 4, j_max = 10;
  std::string suite = "all";

  auto* sample_tree = app.add_subcommand("sample-tree", "sample conditioned trees as JSON lines");
  sample_tree->add_option("--law", law, "stable:<alpha> or critical:<weights-spec>");
  sample_tree->add_option("--n", n)->required();
  sample_tree->add_option("--reps", reps);
  sample_tree->add_option("--seed", seed);
  sample_tree->add_option("--out", out_path);

  const auto add_nc_opts = [&](CLI::App* cmd) {
    cmd->add_option("--weights", weights, "uniform | set:1,3 | geometric:q | zipf:a | JSON");
    cmd->add_option("--n", n)->required();
    cmd->add_option("--reps", reps);
    cmd->add_option("--seed", seed);
    cmd->add_option("--out", out_path);
  };
  add_nc_opts(app.add_subcommand("sample-nc", "sample simply generated noncrossing trees"));
  add_nc_opts(app.add_subcommand("sample", "alias of sample-nc"));

  auto* stats = app.add_subcommand("stats", "statistics subcommands");
  stats->require_subcommand(1);
  auto* lc = stats->add_subcommand("longest-chord", "longest-chord samples and KS summary");
  lc->add_option("--weights", weights);
  lc->add_option("--n", n)->required();
  lc->add_option("--reps", reps);
  lc->add_option("--seed", seed);
  lc->add_option("--workers", workers);
  lc->add_option("--out", out_path);
  auto* dg = stats->add_subcommand("degrees", "non-root degree histogram of sampled shapes");
  dg->add_option("--weights", weights);
  dg->add_option("--n", n)->required();
  dg->add_option("--reps", reps);
  dg->add_option("--seed", seed);
  dg->add_option("--workers", workers);
  dg->add_option("--out", out_path);
  auto* ct = stats->add_subcommand("count", "exact noncrossing tree counts");
  ct->add_option("--n-max", n_max);
  ct->add_option("--degrees", degrees_csv, "restrict degrees, e.g. 1,3");
  ct->add_option("--out", out_path);
  auto* dim = stats->add_subcommand("dimension", "box-counting slopes of stable laminations");
  dim->add_option("--alpha", alpha);
  dim->add_option("--n", n)->required();
  dim->add_option("--reps", reps);
  dim->add_option("--seed", seed);
  dim->add_option("--workers", workers);
  dim->add_option("--j-min", j_min);
  dim->add_option("--j-max", j_max);
  dim->add_option("--out", out_path);

  auto* it = app.add_subcommand("iterate", "sample an iterated stable lamination");
  it->add_option("--alphas", alphas_csv)->required();
  it->add_option("--n", n)->required();
  it->add_option("--seed", seed);
  it->add_option("--out", out_path);

  auto* rd = app.add_subcommand("render", "render a lamination or noncrossing tree to SVG");
  rd->add_option("--in", in_path, "input JSON ('-' for stdin)");
  rd->add_option("--out", out_path);
  rd->add_option("--style", style_path);

  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("suite", suite)->required();
  vf->add_option("--seed", seed);
  vf->add_option("--workers", workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sample_tree->parsed()) return cmd_sample_tree(law, n, reps, seed, out_path);
    if (app.get_subcommand("sample-nc")->parsed()) return cmd_sample_nc(weights, n, reps, seed, out_path);
    if (app.get_subcommand("sample")->parsed()) return cmd_sample_nc(weights, n, reps, seed, out_path);
    if (stats->parsed()) {
      if (lc->parsed()) return cmd_stats_longest_chord(weights, n, reps, seed, workers, out_path);
      if (dg->parsed()) return cmd_stats_degrees(weights, n, reps, seed, workers, out_path);
      if (ct->parsed()) return cmd_stats_count(n_max, degrees_csv, out_path);
      if (dim->parsed()) return cmd_stats_dimension(alpha, n, reps, seed, workers, j_min, j_max, out_path);
    }
    if (it->parsed()) return cmd_iterate(alphas_csv, n, seed, out_path);
    if (rd->parsed()) return cmd_render(in_path, out_path, style_path);
    if (vf->parsed()) return cmd_verify(suite, seed, workers, argv[0]);
  } catch (const nclam::Infeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nclam::NoCriticalPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nclam::Timeout& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const nclam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
