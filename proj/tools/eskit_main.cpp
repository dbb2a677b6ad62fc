#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "esk/constructive.hpp"
#include "esk/embed.hpp"
#include "esk/enumerate.hpp"
#include "esk/errors.hpp"
#include "esk/harness.hpp"
#include "esk/ledger.hpp"

#ifndef ESKIT_DATA_DIR
#define ESKIT_DATA_DIR "data"
#endif

namespace {

// accepts a literal graph6 line or a path to a file whose first line is one
esk::Graph load_graph(const std::string& arg) {
  std::ifstream in(arg);
  if (in) {
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) return esk::graph6_decode(line);
    throw esk::Error(esk::Errc::parse_error, "no graph6 line in " + arg);
  }
  return esk::graph6_decode(arg);
}

// parent-array line: integers separated by commas or whitespace, -1 = root
esk::Tree load_tree(const std::string& arg) {
  std::string line = arg;
  std::ifstream in(arg);
  if (in) {
    line.clear();
    std::string l;
    while (std::getline(in, l))
      if (!l.empty()) {
        line = l;
        break;
      }
    if (line.empty()) throw esk::Error(esk::Errc::parse_error, "no tree line in " + arg);
  }
  for (char& ch : line)
    if (ch == ',') ch = ' ';
  std::istringstream is(line);
  std::vector<int> parents;
  int v;
  while (is >> v) parents.push_back(v);
  if (parents.empty()) throw esk::Error(esk::Errc::parse_error, "empty parent array");
  return esk::Tree::from_parent_array(parents);
}

void emit_report(const esk::RunReport& report, const std::string& report_path, bool json_stdout,
                 bool no_timing) {
  std::string json = esk::run_report_json(report, !no_timing);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << json << "\n";
  }
  if (json_stdout)
    std::cout << json << "\n";
  else
    std::cout << esk::run_report_summary(report);
}

int run(int argc, char** argv) {
  CLI::App app{"Erdos-Sos verification toolkit for graphs on at most k+4 vertices"};
  app.set_config("--config", "", "flat key=value config file; flags win over file values");
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "sweep instances and check embeddings");
  int v_n = 0, v_k = 0, v_jobs = 1;
  long v_samples = 1000;
  std::uint64_t v_seed = 0;
  bool v_exhaustive = false, v_json = false, v_no_timing = false;
  std::string v_threshold_at, v_report;
  int v_delta = -1;
  verify->add_option("--n", v_n, "graph order (exhaustive mode; random mode forces k+4)");
  verify->add_option("--k", v_k, "tree order (random mode)");
  verify->add_flag("--exhaustive", v_exhaustive, "all graph classes x all free trees");
  verify->add_option("--samples", v_samples, "random instances to draw");
  verify->add_option("--seed", v_seed, "master seed");
  verify->add_option("--jobs", v_jobs, "worker threads")->envname("ESKIT_JOBS");
  verify->add_option("--threshold-at", v_threshold_at,
                     "'k-2' relaxes the hypothesis to avedeg >= k-2");
  verify->add_option("--delta", v_delta, "pin the generator's max-degree target");
  verify->add_option("--report", v_report, "write the JSON report to this path");
  verify->add_flag("--json", v_json, "print JSON instead of the summary");
  verify->add_flag("--no-timing", v_no_timing, "omit the timestamp object from JSON");

  // embed
  auto* embed = app.add_subcommand("embed", "embed one tree into one graph");
  std::string e_graph, e_tree, e_engine = "oracle";
  embed->add_option("--graph", e_graph, "graph6 line or file")->required();
  embed->add_option("--tree", e_tree, "parent-array line or file")->required();
  embed->add_option("--engine", e_engine, "oracle | constructive")
      ->check(CLI::IsMember({"oracle", "constructive"}));

  // ledger
  auto* ledger = app.add_subcommand("ledger", "check the inequality corpus");
  int l_kmax = 10000;
  bool l_json = false;
  std::string l_corpus = std::string(ESKIT_DATA_DIR) + "/ledger_corpus.txt";
  ledger->add_option("--kmax", l_kmax, "largest k checked exactly (k_min is 9)");
  ledger->add_option("--corpus", l_corpus, "corpus file path");
  ledger->add_flag("--json", l_json, "print the JSON report");

  // hunt
  auto* hunt = app.add_subcommand("hunt", "oversample the open-flagged handlers");
  int h_k = 9, h_jobs = 1;
  long h_samples = 1000;
  std::uint64_t h_seed = 0;
  bool h_json = false, h_no_timing = false;
  std::string h_target, h_report;
  hunt->add_option("--k", h_k, "tree order, n = k+4");
  hunt->add_option("--samples", h_samples, "random instances to draw");
  hunt->add_option("--seed", h_seed, "master seed");
  hunt->add_option("--jobs", h_jobs, "worker threads")->envname("ESKIT_JOBS");
  hunt->add_option("--target-case", h_target, "report one handler, e.g. 2.5.2D");
  hunt->add_option("--report", h_report, "write the JSON report to this path");
  hunt->add_flag("--json", h_json, "print JSON instead of the summary");
  hunt->add_flag("--no-timing", h_no_timing, "omit the timestamp object from JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  if (verify->parsed()) {
    esk::RunConfig cfg;
    cfg.n = v_n;
    cfg.k_lo = v_k;
    cfg.exhaustive = v_exhaustive;
    cfg.samples = v_samples;
    cfg.seed = v_seed;
    cfg.jobs = v_jobs;
    if (!v_threshold_at.empty()) {
      if (v_threshold_at != "k-2")
        throw esk::Error(esk::Errc::parse_error, "--threshold-at supports only 'k-2'");
      cfg.threshold_allow_equal = true;
    }
    if (v_delta >= 0) cfg.delta_target = v_delta;
    esk::RunReport report = esk::run_verify(cfg);
    emit_report(report, v_report, v_json, v_no_timing);
    return report.exit_code();
  }

  if (embed->parsed()) {
    esk::Graph g = load_graph(e_graph);
    esk::Tree t = load_tree(e_tree);
    if (e_engine == "oracle") {
      auto emb = esk::embed_backtracking(t, g);
      if (!emb) {
        std::cout << "no embedding\n";
        return 1;
      }
      for (int v = 0; v < t.order(); ++v) std::cout << v << " -> " << (*emb)[v] << "\n";
      return 0;
    }
    esk::Instance inst = esk::Instance::make(g, t);
    try {
      esk::EngineResult r = esk::embed_constructive(inst);
      for (int v = 0; v < t.order(); ++v) std::cout << v << " -> " << r.embedding[v] << "\n";
      std::cout << "trace:";
      for (const std::string& s : r.trace.steps) std::cout << " [" << s << "]";
      std::cout << "\n";
      return 0;
    } catch (const esk::InfeasibleError&) {
      std::cout << "no embedding\n";
      return 1;
    }
  }

  if (ledger->parsed()) {
    if (l_kmax < 9) throw esk::Error(esk::Errc::empty_range, "--kmax must be at least 9");
    auto entries = esk::parse_ledger_file(l_corpus);
    esk::LedgerReport report = esk::verify_ledger(entries, 9, l_kmax);
    esk::CrossCheck cc = esk::cross_check_ledger(entries, esk::inequality_labels());
    if (l_json) {
      std::cout << esk::ledger_report_json(report, &cc) << "\n";
    } else {
      for (const esk::EntryCheck& c : report.entries)
        std::cout << (c.edge_bound_ok && c.target_ok ? "ok   " : "FAIL ") << c.case_id
                  << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
      std::cout << (report.all_ok ? "all chains hold" : "failures: ")
                << (report.all_ok ? "" : std::to_string(report.failures)) << " (k in [9,"
                << l_kmax << "])\n";
      if (!cc.ok()) {
        for (const std::string& s : cc.unknown_cases) std::cout << "unknown case: " << s << "\n";
        for (const std::string& s : cc.missing_cases) std::cout << "missing case: " << s << "\n";
      }
    }
    return report.all_ok && cc.ok() ? 0 : 2;
  }

  // hunt
  esk::RunConfig cfg;
  cfg.k_lo = h_k;
  cfg.samples = h_samples;
  cfg.seed = h_seed;
  cfg.jobs = h_jobs;
  cfg.target_case = h_target;
  esk::RunReport report = esk::run_hunt(cfg);
  emit_report(report, h_report, h_json, h_no_timing);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const esk::ProofGapError& e) {
    std::cerr << "proof gap: " << e.what() << "\n";
    return 3;
  } catch (const esk::InfeasibleError& e) {
    std::cerr << "counterexample: " << e.what() << "\n";
    return 2;
  } catch (const esk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
