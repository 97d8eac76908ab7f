// shallowsep command line: run, gen, cluster, verify, bench.
//
// Exit codes: 0 ok, 1 verification failed, 2 parameter regime violated,
// 3 unparsable input, 4 any other error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "shallowsep/serialize.hpp"
#include "shallowsep/shallowsep.hpp"

using namespace shallowsep;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kRegime = 2, kParse = 3, kOther = 4 };

struct Common {
  int algo = 1;
  ProblemParams p;
  std::vector<std::string> budgets;
  bool check_invariants = false;

  Budgets load_budgets() const {
    Budgets b;
    b.load_env();
    for (const auto& kv : budgets) b.set(kv);
    return b;
  }
};

void add_params(CLI::App* cmd, Common& c) {
  cmd->add_option("--algo", c.algo, "Algorithm 1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
  cmd->add_option("--h", c.p.h, "Clique size h")->required();
  cmd->add_option("--ell", c.p.ell, "Depth parameter l")->required();
  cmd->add_option("--epsilon", c.p.epsilon, "Accuracy parameter in (0, 1]");
  cmd->add_option("--seed", c.p.seed, "Random seed");
  cmd->add_option("--budgets", c.budgets, "Budget overrides KEY=VAL");
  cmd->add_flag("--check-invariants", c.check_invariants, "Assert internal invariants every iteration");
}

SeparatorOutcome run_algo(const WeightedGraph& g, const Common& c, bool timing, const Clustering* pre = nullptr) {
  RunOptions opt;
  opt.check_invariants = c.check_invariants;
  opt.timing = timing;
  const Budgets b = c.load_budgets();
  switch (c.algo) {
    case 1: return run_algorithm1(g, c.p, b, opt);
    case 2: return run_algorithm2(g, c.p, b, opt, pre);
    default: return run_algorithm3(g, c.p, b, opt);
  }
}

WeightedGraph read_graph(const std::string& path) {
  if (path == "-") return load_graph(std::cin);
  return load_graph_file(path);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

Json report(const VerifyResult& v) {
  return Json{{"ok", v.ok}, {"kind", v.kind}, {"detail", v.detail}, {"weight", v.weight}};
}

std::vector<std::uint64_t> parse_args(const std::vector<std::string>& toks, std::size_t from) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(0, "generator argument '" + t + "' is not a non-negative integer");
    out.push_back(std::stoull(t));
  }
  return out;
}

const char* kBenchHeader = "family,args,n,m,ell,h,algo,outcome,sep_size,n_over_ell,h2_ell_log_n,wall_ms,oracle_deletions\n";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced separators or shallow clique minors"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Common run_c;
  std::string run_in, run_out, run_clustering;
  bool run_verify = false;
  auto* run = app.add_subcommand("run", "Run one algorithm on a graph file");
  add_params(run, run_c);
  run->add_option("--input", run_in, "Graph file ('-' for stdin)")->required();
  run->add_option("--output", run_out, "Outcome JSON (default stdout)");
  run->add_option("--clustering", run_clustering, "Precomputed nested clustering (algo 2)");
  run->add_flag("--verify", run_verify, "Verify the outcome; failure sets exit code 1");

  std::vector<std::string> gen_args;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("family_args", gen_args, "FAMILY ARGS... (grid W H | path n | cycle n | complete k | gnm n m seed | "
                                           "expander n d seed | planted n m h seed | blowup h len)")
      ->required();
  gen->add_option("--output", gen_out, "Graph file (default stdout)");

  Common cl_c;
  std::string cl_in, cl_out;
  double cl_r = 0;
  bool cl_nested = false;
  auto* clus = app.add_subcommand("cluster", "Build and dump an r-clustering");
  add_params(clus, cl_c);
  clus->add_option("--input", cl_in, "Graph file")->required();
  clus->add_option("--r", cl_r, "Cluster size bound (default ell)");
  clus->add_flag("--nested", cl_nested, "Build the nested clustering");
  clus->add_option("--output", cl_out, "Clustering JSON (default stdout)");

  std::string ver_in, ver_outcome;
  int ver_h = 0;
  long long ver_radius = -1;
  auto* ver = app.add_subcommand("verify", "Check an outcome against its graph");
  ver->add_option("--input", ver_in, "Graph file")->required();
  ver->add_option("--outcome", ver_outcome, "Outcome JSON")->required();
  ver->add_option("--h", ver_h, "Clique size h")->required();
  ver->add_option("--radius-bound", ver_radius, "Tree radius bound (default: the outcome's own)");

  Common bench_c;
  std::vector<std::string> bench_instances;
  std::vector<int> bench_ells, bench_algos;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Sweep instances, l values and algorithms; CSV report");
  bench->add_option("--instance", bench_instances, "Generator spec, e.g. \"grid 32 32\" (repeatable)");
  bench->add_option("--ell", bench_ells, "l values (repeatable)")->required();
  bench->add_option("--algo", bench_algos, "Algorithms (repeatable, default 1)");
  bench->add_option("--h", bench_c.p.h, "Clique size h");
  bench->add_option("--epsilon", bench_c.p.epsilon, "Accuracy parameter");
  bench->add_option("--seed", bench_c.p.seed, "Random seed");
  bench->add_option("--budgets", bench_c.budgets, "Budget overrides KEY=VAL");
  bench->add_option("--output", bench_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*run) {
      const WeightedGraph g = read_graph(run_in);
      std::optional<Clustering> pre;
      if (!run_clustering.empty()) pre = clustering_from_json(load_json(run_clustering));
      SeparatorOutcome out = run_algo(g, run_c, false, pre ? &*pre : nullptr);
      int code = kOk;
      Json j = outcome_to_json(out);
      if (run_verify) {
        const VerifyResult v = verify_outcome(g, out, run_c.p.h);
        j["verify"] = report(v);
        if (!v) code = kVerifyFailed;
      }
      write_text(run_out, j.dump(1) + "\n");
      return code;
    }
    if (*gen) {
      const WeightedGraph g = gen::generate(gen_args.front(), parse_args(gen_args, 1));
      std::ostringstream os;
      write_graph(os, g);
      write_text(gen_out, os.str());
      return kOk;
    }
    if (*clus) {
      const WeightedGraph g = read_graph(cl_in);
      cl_c.p.validate();
      const double r = cl_r > 0 ? cl_r : cl_c.p.ell;
      const Budgets b = cl_c.load_budgets();
      ClusteringResult res = cl_nested ? build_nested(g, cl_c.p, r, b) : build_r_clustering(g, cl_c.p, r, b);
      if (res.minor) {
        std::cerr << "clustering found a K_h minor; writing the certificate instead\n";
        write_text(cl_out, outcome_to_json(*res.minor).dump(1) + "\n");
        return kOk;
      }
      write_text(cl_out, clustering_to_json(*res.clustering).dump(1) + "\n");
      return kOk;
    }
    if (*ver) {
      const WeightedGraph g = read_graph(ver_in);
      SeparatorOutcome out = outcome_from_json(load_json(ver_outcome));
      if (ver_radius >= 0) out.radius_bound = static_cast<Dist>(ver_radius);
      const VerifyResult v = verify_outcome(g, out, ver_h);
      std::cout << report(v).dump() << "\n";
      return v ? kOk : kVerifyFailed;
    }
    if (*bench) {
      if (bench_algos.empty()) bench_algos = {1};
      std::ostringstream csv;
      csv << kBenchHeader;
      for (const auto& spec : bench_instances) {
        std::istringstream is(spec);
        std::vector<std::string> toks{std::istream_iterator<std::string>(is), std::istream_iterator<std::string>()};
        if (toks.empty()) throw ParseError(0, "empty instance spec");
        const WeightedGraph g = gen::generate(toks.front(), parse_args(toks, 1));
        std::string args;
        for (std::size_t i = 1; i < toks.size(); ++i) args += (i > 1 ? " " : "") + toks[i];
        const double n = static_cast<double>(g.num_vertices());
        for (int ell : bench_ells)
          for (int algo : bench_algos) {
            Common c = bench_c;
            c.algo = algo;
            c.p.ell = ell;
            std::string kind;
            double sep = 0, wall = 0, dels = 0;
            try {
              const SeparatorOutcome out = run_algo(g, c, true);
              kind = to_string(out.kind);
              sep = out.is_separator() ? static_cast<double>(out.vertices.size()) : 0;
              wall = out.stats.get("wall_ms");
              dels = out.stats.get("oracle_deletions");
            } catch (const RegimeError&) {
              kind = "regime";
            }
            csv << toks.front() << "," << args << "," << g.num_vertices() << "," << g.num_edges() << "," << ell << ","
                << c.p.h << "," << algo << "," << kind << "," << sep << "," << n / ell << ","
                << static_cast<double>(c.p.h) * c.p.h * ell * std::log2(std::max(n, 2.0)) << "," << wall << ","
                << dels << "\n";
          }
      }
      write_text(bench_out, csv.str());
      return kOk;
    }
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kRegime;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
