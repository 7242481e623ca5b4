#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <optional>

#include "phishrev/pipeline.hpp"
#include "phishrev/synthetic.hpp"
#include "phishrev/text.hpp"

namespace phishrev::cli {

namespace {

struct Flags {
  std::string config_file;
  std::optional<std::string> dataset, meta_column, snapshot_dir, rules, out;
  std::optional<std::uint64_t> seed;
  bool best_config = false;
  bool grid_search = false;
  std::vector<std::string> classifiers;
};

void add_common(CLI::App* sub, Flags& f, bool needs_data) {
  sub->add_option("--config", f.config_file, "key = value config file (flags win)");
  sub->add_option("--out", f.out, "output directory");
  if (!needs_data) return;
  sub->add_option("--dataset", f.dataset, "dataset CSV");
  auto* meta = sub->add_option("--meta-column", f.meta_column, "CSV column holding meta 0/1");
  auto* snap = sub->add_option("--snapshot-dir", f.snapshot_dir, "directory of <id>.html snapshots");
  meta->excludes(snap);
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--rules", f.rules, "revision rule file (default: built-in)");
  auto* best = sub->add_flag("--best-config", f.best_config, "use fixed best hyperparameters");
  auto* grid = sub->add_flag("--grid-search", f.grid_search, "select hyperparameters by cross-validation");
  best->excludes(grid);
  sub->add_option("--classifier", f.classifiers, "svm|knn|dt|rf|all (repeatable)");
}

RunConfig make_config(const Flags& f) {
  RunConfig c;
  if (!f.config_file.empty()) apply_config_file(c, f.config_file);
  if (f.dataset) apply_setting(c, "dataset", *f.dataset);
  if (f.meta_column) {
    apply_setting(c, "meta_column", *f.meta_column);
    c.snapshot_dir.clear();
  }
  if (f.snapshot_dir) apply_setting(c, "snapshot_dir", *f.snapshot_dir);
  if (f.seed) apply_setting(c, "seed", std::to_string(*f.seed));
  if (f.rules) apply_setting(c, "rules", *f.rules);
  if (f.out) apply_setting(c, "out", *f.out);
  if (f.best_config) apply_setting(c, "params", "best-config");
  if (f.grid_search) apply_setting(c, "params", "grid-search");
  if (!f.classifiers.empty()) apply_setting(c, "classifiers", text::join(f.classifiers, ","));
  return c;
}

void print_train(const TrainSummary& s, std::ostream& out) {
  out << "train " << s.train_size << " / test " << s.test_size << '\n';
  for (const auto& [kind, params] : s.params) {
    out << "  " << kind_symbol(kind) << "  " << describe(params) << "  test accuracy "
        << text::format_fixed(100.0 * s.test_accuracy.at(kind), 2) << "%";
    if (s.cv_accuracy.contains(kind)) out << "  (cv " << text::format_fixed(100.0 * s.cv_accuracy.at(kind), 2) << "%)";
    out << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"phishrev: phishing classifiers with rule-based belief revision", "phishrev"};
  app.require_subcommand(1);

  Flags f;
  auto* train = app.add_subcommand("train", "split, fit and save the four classifiers");
  auto* revise = app.add_subcommand("revise", "revise test-set beliefs with meta evidence");
  auto* report = app.add_subcommand("report", "render comparison tables from report.kv");
  auto* all = app.add_subcommand("run", "train, revise and report in one go");
  for (auto* sub : {train, revise, all}) add_common(sub, f, true);
  add_common(report, f, false);

  std::string synth_path;
  std::size_t synth_size = 200;
  std::uint64_t synth_seed = 7;
  auto* synth = app.add_subcommand("synth", "write a synthetic fixture CSV");
  synth->add_option("path", synth_path, "output CSV")->required();
  synth->add_option("--size", synth_size, "row count")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "usage: phishrev <train|revise|report|run|synth> [options]; see --help\n";
    return kExitUsage;
  }

  try {
    if (synth->parsed()) {
      synthetic::FixtureOptions opts;
      opts.size = synth_size;
      opts.seed = synth_seed;
      text::write_file(synth_path, synthetic::to_csv(synthetic::make_fixture(opts)));
      out << "wrote " << synth_size << " rows to " << synth_path << '\n';
      return kExitOk;
    }
    const auto config = make_config(f);
    if (train->parsed() || all->parsed()) print_train(cmd_train(config), out);
    if (revise->parsed() || all->parsed()) {
      const auto rep = cmd_revise(config);
      out << render_report(rep);
    }
    if (report->parsed() || all->parsed()) out << cmd_report(config);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\nusage: phishrev <train|revise|report|run|synth> [options]; see --help\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace phishrev::cli
