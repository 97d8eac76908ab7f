#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "shallowsep/types.hpp"

namespace shallowsep {

inline constexpr double kBalance = 2.0 / 3.0;

struct ProblemParams {
  int h = 5;
  int ell = 4;
  double epsilon = 0.5;
  std::uint64_t seed = 1;

  void validate() const {
    if (h < 2) throw RegimeError("h must be at least 2");
    if (ell < 1) throw RegimeError("ell must be at least 1");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw RegimeError("epsilon must lie in (0, 1]");
  }

  // rho = 2 * ceil(ell * ln n) for the original vertex count n.
  Dist rho(std::size_t n) const {
    if (n <= 1) return 0;
    return 2 * static_cast<Dist>(std::ceil(ell * std::log(static_cast<double>(n))));
  }

  // Oracle stretch parameter of Algorithm 1.
  int oracle_k() const { return static_cast<int>(std::ceil(1.0 / epsilon - 1e-12)); }
};

/*
 * Explicit constants behind the asymptotic budgets. Every field can be set
 * by key (CLI --budgets KEY=VAL) or from SHALLOWSEP_BUDGET_<KEY> in the
 * environment.
 */
struct Budgets {
  double c_sp = 8;           // sparsity gate: m <= c_sp * h * sqrt(log2 h) * n
  double b_c = 4;            // per-cluster boundary: b_c * sqrt(r) * log2(n+1)
  double b_t = 4;            // total boundary: b_t * n / sqrt(r) * log2^2(n+1)
  double b_m = 4;            // mini clusters of one cluster: b_m * |dC| * log2(|dC|+2)
  double b_prime = 4;        // all mini clusters: b' * n / sqrt(ell) * log2^2(n+1)
  double spanner_size = 2;   // spanner edges <= spanner_size * |V|^(1+2 eps)
  double active = 8;         // |X| <= active * (ell * log2 n + n / ell)
  double rmain_slack = 32;   // slack on the sum |C||dC| and sum |dC|^3 envelopes
  double c_e = 4;            // expanded tree size <= c_e * ell * sqrt(n) * log2 n
  double pad_trees = 0;      // 1 = grow Algorithm 1 trees to >= d vertices

  static const std::map<std::string, double Budgets::*>& fields() {
    static const std::map<std::string, double Budgets::*> f = {
        {"c_sp", &Budgets::c_sp},     {"b_c", &Budgets::b_c},
        {"b_t", &Budgets::b_t},       {"b_m", &Budgets::b_m},
        {"b_prime", &Budgets::b_prime}, {"spanner_size", &Budgets::spanner_size},
        {"active", &Budgets::active}, {"rmain_slack", &Budgets::rmain_slack},
        {"c_e", &Budgets::c_e},       {"pad_trees", &Budgets::pad_trees},
    };
    return f;
  }

  void set(const std::string& key, double value) {
    auto it = fields().find(key);
    if (it == fields().end()) throw Error("unknown budget key '" + key + "'");
    if (!(value >= 0.0) || !std::isfinite(value)) throw Error("budget '" + key + "' must be finite and >= 0");
    this->*(it->second) = value;
  }

  // Parses "KEY=VAL".
  void set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw Error("budget override must be KEY=VAL, got '" + assignment + "'");
    const std::string val = assignment.substr(eq + 1);
    char* end = nullptr;
    const double x = std::strtod(val.c_str(), &end);
    if (val.empty() || *end != '\0') throw Error("budget value for '" + assignment.substr(0, eq) + "' is not a number");
    set(assignment.substr(0, eq), x);
  }

  void load_env() {
    for (const auto& [key, ptr] : fields()) {
      std::string var = "SHALLOWSEP_BUDGET_";
      for (char c : key) var += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (const char* v = std::getenv(var.c_str())) set(key + "=" + v);
    }
  }
};

// Per-run switches that do not change the problem.
struct RunOptions {
  bool check_invariants = false;  // O(n) partition checks every iteration
  bool timing = false;            // record wall time in stats
};

}  // namespace shallowsep
