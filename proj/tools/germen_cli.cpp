// germen: cluster a keyword document stream period by period and report how
// the clusters evolve between two snapshots.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "germen/germen.h"

namespace {

struct SessionDeleter {
  void operator()(germen_session* s) const { germen_session_free(s); }
};
using SessionPtr = std::unique_ptr<germen_session, SessionDeleter>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { germen_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int fail(germen_status st) {
  std::cerr << "germen: " << germen_last_error() << '\n';
  return static_cast<int>(st);
}

int input_error(const std::string& msg) {
  std::cerr << "germen: " << msg << '\n';
  return GERMEN_ERR_INPUT;
}

// Writes to `path`, or stdout when empty.
int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return std::cout ? GERMEN_OK : GERMEN_ERR_INPUT;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return input_error("cannot write '" + path + "'");
  out << text;
  return out ? GERMEN_OK : input_error("failed writing '" + path + "'");
}

void print_diagnostic(size_t line, const char* message, void*) {
  if (line)
    std::cerr << "line " << line << ": " << message << '\n';
  else
    std::cerr << message << '\n';
}

void print_trace(const char* line, void*) { std::cerr << line << '\n'; }

struct ClusterArgs {
  std::size_t k = 3;
  std::size_t min_df = 2;
  double max_df = 0.5;
  std::string state;
  std::string period;
  std::string corpus;
  std::string output;
  bool trace = false;
};

int run_cluster(const ClusterArgs& a, const CLI::App& cmd) {
  const bool k_given = cmd.count("--k") > 0;
  const bool min_df_given = cmd.count("--min-df") > 0;
  const bool max_df_given = cmd.count("--max-df") > 0;

  germen_session* raw = nullptr;
  if (std::filesystem::exists(a.state)) {
    if (auto st = germen_session_load(a.state.c_str(), &raw); st != GERMEN_OK) return fail(st);
    SessionPtr probe(raw);
    germen_cluster_config cfg;
    germen_session_config(probe.get(), &cfg);
    if (k_given && cfg.k != a.k) {
      return input_error("state '" + a.state + "' was built with K=" + std::to_string(cfg.k) +
                         ", refusing to resume with K=" + std::to_string(a.k));
    }
    if ((min_df_given && cfg.min_df != a.min_df) || (max_df_given && cfg.max_df != a.max_df)) {
      return input_error("state '" + a.state +
                         "' was built with different vocabulary thresholds; refusing to resume");
    }
    raw = probe.release();
  } else {
    germen_cluster_config cfg{a.k, a.min_df, a.max_df};
    if (auto st = germen_session_create(&cfg, &raw); st != GERMEN_OK) return fail(st);
  }
  SessionPtr session(raw);

  size_t inserted = 0;
  const char* period = a.period.empty() ? nullptr : a.period.c_str();
  if (auto st = germen_session_ingest_file(session.get(), a.corpus.c_str(), period, print_diagnostic,
                                           a.trace ? print_trace : nullptr, nullptr, &inserted);
      st != GERMEN_OK) {
    return fail(st);
  }
  if (auto st = germen_session_save(session.get(), a.state.c_str()); st != GERMEN_OK) return fail(st);

  OwnedString report;
  if (auto st = germen_session_stats(session.get(), &report.p); st != GERMEN_OK) return fail(st);
  return emit(report.str(), a.output);
}

int run_stats(const std::string& state, const std::string& output) {
  germen_session* raw = nullptr;
  if (auto st = germen_session_load(state.c_str(), &raw); st != GERMEN_OK) return fail(st);
  SessionPtr session(raw);
  OwnedString report;
  if (auto st = germen_session_stats(session.get(), &report.p); st != GERMEN_OK) return fail(st);
  return emit(report.str(), output);
}

struct CompareArgs {
  std::string state1;
  std::string state2;
  std::string output;
  bool crosstab = false;
  germen_compare_options opts{};
};

int run_compare(const CompareArgs& a) {
  germen_session* raw = nullptr;
  if (auto st = germen_session_load(a.state1.c_str(), &raw); st != GERMEN_OK) return fail(st);
  SessionPtr before(raw);
  if (auto st = germen_session_load(a.state2.c_str(), &raw); st != GERMEN_OK) return fail(st);
  SessionPtr after(raw);

  OwnedString report, rules, crosstab;
  if (auto st = germen_compare(before.get(), after.get(), &a.opts, &report.p, &rules.p,
                               a.crosstab ? &crosstab.p : nullptr);
      st != GERMEN_OK) {
    return fail(st);
  }
  std::string text = report.str() + "\n# Rules\n" + rules.str();
  if (a.crosstab) text += "\n# Degree cross-tabulation\n" + crosstab.str();
  return emit(text, a.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental density-based clustering of document streams and trend reports"};
  app.require_subcommand(1);

  ClusterArgs ca;
  auto* cluster = app.add_subcommand("cluster", "Insert a corpus (or one period of it) into a state");
  cluster->add_option("--k", ca.k, "Neighbours per document (default 3)")->check(CLI::PositiveNumber);
  cluster->add_option("--state", ca.state, "State file, created or resumed")->required();
  cluster->add_option("--period", ca.period, "Only insert records of this period");
  cluster->add_option("--min-df", ca.min_df, "Minimum document frequency (default 2)")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--max-df", ca.max_df, "Maximum document-frequency share (default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
  cluster->add_option("--output,-o", ca.output, "Write the report here instead of stdout");
  cluster->add_flag("--trace", ca.trace, "Print per-insertion counters to stderr");
  cluster->add_option("corpus", ca.corpus, "Corpus file (id<TAB>period<TAB>kw;kw;...)")->required();

  std::string stats_state, stats_output;
  auto* stats = app.add_subcommand("stats", "Print cluster statistics of a saved state");
  stats->add_option("--state", stats_state, "State file")->required();
  stats->add_option("--output,-o", stats_output, "Write the report here instead of stdout");

  CompareArgs cmp;
  germen_compare_options_init(&cmp.opts);
  auto* compare = app.add_subcommand("compare", "Compare two clusterings and report trends");
  compare->add_option("--state1", cmp.state1, "Earlier state")->required();
  compare->add_option("--state2", cmp.state2, "Later state")->required();
  compare->add_flag("--crosstab", cmp.crosstab, "Also print the degree cross-tabulation");
  compare->add_option("--min-support", cmp.opts.min_support, "Pair support threshold (default 2)")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--min-midova", cmp.opts.min_midova, "Pair MIDOVA threshold (default 0)")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--min-confidence", cmp.opts.min_confidence,
                      "Rule confidence threshold (default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
  compare->add_option("--output,-o", cmp.output, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : GERMEN_ERR_INPUT;
  }

  if (*cluster) return run_cluster(ca, *cluster);
  if (*stats) return run_stats(stats_state, stats_output);
  return run_compare(cmp);
}
