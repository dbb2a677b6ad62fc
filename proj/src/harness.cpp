#include "esk/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "esk/constructive.hpp"
#include "esk/embed.hpp"
#include "esk/enumerate.hpp"
#include "esk/errors.hpp"
#include "esk/rational.hpp"

namespace esk {

namespace {

std::string normalize_label(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != '(' && ch != ')' && ch != ' ') out.push_back(ch);
  return out;
}

bool is_registry_label(const std::string& s) {
  for (const CaseLabel& c : case_registry())
    if (c.label == s) return true;
  return false;
}

bool coverage_step(const std::string& s) {
  return is_registry_label(s) || s.rfind("Delta=", 0) == 0 || s.rfind("base: ", 0) == 0;
}

std::string first_label(const std::vector<std::string>& steps) {
  for (const std::string& s : steps)
    if (is_registry_label(s)) return s;
  return "";
}

struct Outcome {
  bool produced = false;
  bool embedded = false;
  bool fallback = false;
  std::vector<std::string> steps;
  std::string plan_label;
  std::vector<FailureRecord> failures;
};

void run_engine_on(const Instance& inst, std::int64_t index, Outcome& out) {
  out.produced = true;
  std::string g6 = graph6_encode(inst.g);
  std::string ts = tree_to_string(inst.t);
  auto oracle = embed_backtracking(inst.t, inst.g);
  if (!oracle) {
    FailureRecord f;
    f.kind = "counterexample";
    f.k = inst.k;
    f.graph6 = g6;
    f.tree = ts;
    f.detail = "oracle found no embedding despite avedeg > k-2";
    f.index = index;
    out.failures.push_back(std::move(f));
    return;
  }
  try {
    EngineResult r = embed_constructive(inst);
    out.embedded = true;
    out.fallback = r.trace.used_fallback;
    out.steps = r.trace.steps;
  } catch (const ProofGapError& e) {
    out.steps = e.trace().steps;
    FailureRecord f;
    f.kind = "proof-gap";
    f.k = inst.k;
    f.graph6 = g6;
    f.tree = ts;
    f.case_label = e.label();
    f.detail = e.what();
    f.index = index;
    out.failures.push_back(std::move(f));
  } catch (const InfeasibleError& e) {
    out.steps = e.trace().steps;
    FailureRecord f;
    f.kind = "proof-gap";
    f.k = inst.k;
    f.graph6 = g6;
    f.tree = ts;
    f.detail = std::string("engine reported infeasible but the oracle embeds: ") + e.what();
    f.index = index;
    out.failures.push_back(std::move(f));
  }
  out.plan_label = first_label(out.steps);
}

void shard_loop(std::size_t total, int jobs, const std::function<void(std::size_t)>& work) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < total; i += jobs) work(i);
    });
  for (std::thread& th : pool) th.join();
}

void merge(RunReport& report, std::vector<Outcome>& outcomes) {
  for (Outcome& o : outcomes) {
    if (!o.produced) continue;
    ++report.instances;
    if (o.embedded) ++report.embedded;
    if (o.fallback) {
      ++report.fallbacks;
      if (!o.plan_label.empty()) ++report.fallbacks_by_case[o.plan_label];
    }
    for (const std::string& s : o.steps)
      if (coverage_step(s)) ++report.coverage[s];
    for (FailureRecord& f : o.failures) {
      if (f.kind == "counterexample") ++report.counterexamples;
      if (f.kind == "proof-gap") {
        ++report.proof_gaps;
        if (!f.case_label.empty()) ++report.gaps_by_case[f.case_label];
      }
      report.failures.push_back(std::move(f));
    }
  }
}

GenOptions options_for(const RunConfig& cfg, int k, std::uint64_t index, bool hunt) {
  GenOptions opts;
  if (cfg.delta_target) {
    opts.delta_target = *cfg.delta_target;
  } else if (hunt) {
    // oversample the branches holding the open-flagged handlers
    static const int offsets[8] = {-1, -1, 2, 0, -1, 1, 3, 0};
    opts.delta_target = k + offsets[index % 8];
    static const int shapes[4] = {1, 1, 0, 1};
    opts.tree_shape = shapes[(index / 8) % 4];
    opts.style = static_cast<int>((index / 32) % 6);
    return opts;
  } else {
    if (index % 16 == 15) {
      // planted-structure slice reaching the thin handlers
      int s = 6 + static_cast<int>((index / 16) % 4);
      opts.style = s;
      opts.delta_target = s == 9 ? k - 1 : s == 8 ? k + 1 : k + 2;
      opts.tree_shape = s == 9 ? 2 : s == 8 ? 1 : 1 + static_cast<int>((index / 64) % 2);
      return opts;
    }
    opts.delta_target = k - 1 + static_cast<int>(index % 5);
  }
  opts.style = static_cast<int>((index / 5) % 6);
  opts.tree_shape = static_cast<int>((index / 30) % 3);
  return opts;
}

RunReport run_random(const RunConfig& cfg, bool hunt) {
  int k = cfg.k_lo;
  if (k < 9) throw Error(Errc::empty_range, "random sampling needs k >= 9");
  if (cfg.n != 0 && cfg.n != k + 4)
    throw Error(Errc::domain_mismatch, "random sampling requires n = k+4");
  RunReport report;
  report.config = cfg;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t total = cfg.samples < 0 ? 0 : static_cast<std::size_t>(cfg.samples);
  std::vector<Outcome> outcomes(total);
  int jobs = std::max(1, cfg.jobs);
  shard_loop(total, jobs, [&](std::size_t i) {
    std::uint64_t index = static_cast<std::uint64_t>(i);
    std::optional<Instance> inst;
    GenOptions opts = options_for(cfg, k, index, hunt);
    for (int attempt = 0; attempt < 2 && !inst; ++attempt) {
      try {
        inst = random_instance(k, cfg.seed, index, attempt == 0 ? opts : GenOptions{});
      } catch (const Error& e) {
        if (e.code() != Errc::target_infeasible) throw;
      }
    }
    if (!inst) return;  // unreachable target, sample skipped deterministically
    run_engine_on(*inst, static_cast<std::int64_t>(index), outcomes[i]);
  });
  merge(report, outcomes);
  if (hunt && !cfg.target_case.empty()) {
    // keep only the targeted handler in the per-case maps
    std::string want = normalize_label(cfg.target_case);
    auto filter = [&](std::map<std::string, long>& m) {
      for (auto it = m.begin(); it != m.end();)
        it = normalize_label(it->first) == want ? ++it : m.erase(it);
    };
    filter(report.fallbacks_by_case);
    filter(report.gaps_by_case);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

RunReport run_exhaustive(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 9)
    throw Error(Errc::cap_exceeded, "exhaustive sweeps support 1 <= n <= 9");
  RunConfig c = cfg;
  if (c.k_lo == 0) c.k_lo = std::max(2, c.n - 4);
  if (c.k_hi == 0) c.k_hi = c.n;
  if (c.k_lo > c.k_hi) throw Error(Errc::empty_range, "empty k range");
  RunReport report;
  report.config = c;
  auto t0 = std::chrono::steady_clock::now();

  std::vector<Graph> graphs = all_graphs_upto_iso(c.n);
  std::map<int, std::vector<Tree>> trees;
  // items: (k, graph index, tree index) for graphs meeting the threshold
  std::vector<std::tuple<int, int, int>> items;
  for (int k = c.k_lo; k <= c.k_hi; ++k) {
    trees[k] = all_free_trees(k);
    Rational bar(k - 2);
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      Rational ad = avedeg(graphs[gi]);
      bool eligible = c.threshold_allow_equal ? !(ad < bar) : bar < ad;
      if (!eligible) continue;
      for (std::size_t ti = 0; ti < trees[k].size(); ++ti)
        items.emplace_back(k, static_cast<int>(gi), static_cast<int>(ti));
    }
  }

  std::vector<Outcome> outcomes(items.size());
  int jobs = std::max(1, c.jobs);
  shard_loop(items.size(), jobs, [&](std::size_t i) {
    auto [k, gi, ti] = items[i];
    const Graph& g = graphs[gi];
    const Tree& t = trees[k][ti];
    Outcome& out = outcomes[i];
    out.produced = true;
    auto oracle = embed_backtracking(t, g);
    if (!oracle) {
      FailureRecord f;
      f.kind = "counterexample";
      f.k = k;
      f.graph6 = graph6_encode(g);
      f.tree = tree_to_string(t);
      f.detail = "no embedding at the stated threshold";
      out.failures.push_back(std::move(f));
      return;
    }
    out.embedded = true;
    // the constructive route applies exactly on the strict-threshold k+4 slice
    if (k == g.order() - 4 && Rational(k - 2) < avedeg(g)) {
      Instance inst = Instance::make(g, t);
      try {
        EngineResult r = embed_constructive(inst);
        out.fallback = r.trace.used_fallback;
        out.steps = r.trace.steps;
      } catch (const ProofGapError& e) {
        out.steps = e.trace().steps;
        FailureRecord f;
        f.kind = "proof-gap";
        f.k = k;
        f.graph6 = graph6_encode(g);
        f.tree = tree_to_string(t);
        f.case_label = e.label();
        f.detail = e.what();
        out.failures.push_back(std::move(f));
      } catch (const InfeasibleError& e) {
        out.steps = e.trace().steps;
        FailureRecord f;
        f.kind = "proof-gap";
        f.k = k;
        f.graph6 = graph6_encode(g);
        f.tree = tree_to_string(t);
        f.detail = std::string("engine reported infeasible but the oracle embeds: ") + e.what();
        out.failures.push_back(std::move(f));
      }
      out.plan_label = first_label(out.steps);
    }
  });
  merge(report, outcomes);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace

RunReport run_verify(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.mode = "verify";
  if (c.exhaustive) return run_exhaustive(c);
  return run_random(c, /*hunt=*/false);
}

RunReport run_hunt(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.mode = "hunt";
  if (c.k_lo < 9) throw Error(Errc::empty_range, "hunt needs k >= 9");
  return run_random(c, /*hunt=*/true);
}

std::string run_report_json(const RunReport& report, bool include_timing) {
  nlohmann::json j;
  j["schema"] = 1;
  j["mode"] = report.config.mode;
  nlohmann::json cfg;  // jobs is execution shape, not result identity
  cfg["n"] = report.config.n;
  cfg["k_lo"] = report.config.k_lo;
  cfg["k_hi"] = report.config.k_hi;
  cfg["exhaustive"] = report.config.exhaustive;
  cfg["seed"] = report.config.seed;
  cfg["samples"] = report.config.samples;
  cfg["threshold_allow_equal"] = report.config.threshold_allow_equal;
  if (!report.config.target_case.empty()) cfg["target_case"] = report.config.target_case;
  if (report.config.delta_target) cfg["delta_target"] = *report.config.delta_target;
  j["config"] = std::move(cfg);
  nlohmann::json totals;
  totals["instances"] = report.instances;
  totals["embedded"] = report.embedded;
  totals["fallbacks"] = report.fallbacks;
  totals["proof_gaps"] = report.proof_gaps;
  totals["counterexamples"] = report.counterexamples;
  j["totals"] = std::move(totals);
  j["coverage"] = report.coverage;
  j["fallbacks_by_case"] = report.fallbacks_by_case;
  j["gaps_by_case"] = report.gaps_by_case;
  j["failures"] = nlohmann::json::array();
  for (const FailureRecord& f : report.failures) {
    nlohmann::json e;
    e["kind"] = f.kind;
    e["k"] = f.k;
    e["graph6"] = f.graph6;
    e["tree"] = f.tree;
    if (!f.case_label.empty()) e["case"] = f.case_label;
    e["detail"] = f.detail;
    if (f.index >= 0) e["index"] = f.index;
    j["failures"].push_back(std::move(e));
  }
  if (include_timing) j["timestamp"] = {{"wall_seconds", report.wall_seconds}};
  return j.dump(2);
}

std::string run_report_summary(const RunReport& report) {
  std::string s;
  s += report.config.mode + ": " + std::to_string(report.instances) + " instances, " +
       std::to_string(report.embedded) + " embedded, " + std::to_string(report.fallbacks) +
       " fallbacks, " + std::to_string(report.proof_gaps) + " proof gaps, " +
       std::to_string(report.counterexamples) + " counterexamples\n";
  long labels = 0;
  for (const auto& [step, count] : report.coverage)
    if (step.rfind("Delta=", 0) != 0 && step.rfind("base: ", 0) != 0) ++labels;
  s += "subcase labels touched: " + std::to_string(labels) + " of " +
       std::to_string(case_registry().size()) + "\n";
  for (const auto& [label, count] : report.fallbacks_by_case)
    s += "  fallback " + label + ": " + std::to_string(count) + "\n";
  for (const auto& [label, count] : report.gaps_by_case)
    s += "  proof-gap " + label + ": " + std::to_string(count) + "\n";
  for (const FailureRecord& f : report.failures) {
    s += "  " + f.kind + " k=" + std::to_string(f.k) + " graph6=" + f.graph6 +
         " tree=" + f.tree + "\n";
    if (report.failures.size() > 20) {
      s += "  ... (" + std::to_string(report.failures.size()) + " failures total)\n";
      break;
    }
  }
  return s;
}

}  // namespace esk
