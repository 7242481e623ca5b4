#include "phishrev/pipeline.hpp"

#include <filesystem>
#include <sstream>

#include "phishrev/kb.hpp"
#include "phishrev/text.hpp"

namespace fs = std::filesystem;

namespace phishrev {

std::string artifacts::model_file(ClassifierKind kind) {
  return "model_" + std::string(kind_symbol(kind)) + ".txt";
}

namespace {

std::string out_path(const RunConfig& c, const std::string& name) { return (fs::path(c.output_dir) / name).string(); }

std::vector<FeatureRecord> load_records(const RunConfig& c) {
  if (c.dataset_path.empty()) throw ConfigError("no dataset given (use --dataset)");
  if (!fs::is_regular_file(c.dataset_path)) throw ConfigError("dataset not found: " + c.dataset_path);
  try {
    return load_dataset(c.dataset_path, c.schema());
  } catch (const DatasetError& e) {
    throw PipelineError(c.dataset_path + ": " + e.what());
  }
}

void ensure_output_dir(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + c.output_dir + ": " + ec.message());
}

std::string read_artifact(const RunConfig& c, const std::string& name) {
  const auto path = out_path(c, name);
  if (!fs::is_regular_file(path)) throw ConfigError("missing artifact " + path + " (run the previous stage first)");
  return text::read_file(path);
}

std::string scaler_text(const ScalerStats& s) {
  std::ostringstream out;
  out << "dimension " << s.dimension() << '\n';
  out << "means";
  for (double v : s.means) out << ' ' << text::format_double(v);
  out << "\nstd_devs";
  for (double v : s.std_devs) out << ' ' << text::format_double(v);
  out << '\n';
  return out.str();
}

}  // namespace

TrainSummary cmd_train(const RunConfig& config) {
  const auto records = load_records(config);
  if (config.classifiers.empty()) throw ConfigError("no classifiers selected");
  ensure_output_dir(config);
  text::write_file(out_path(config, artifacts::kConfig), config_to_text(config));

  SplitPlan plan;
  try {
    plan = make_split(records, config.test_fraction, config.folds, config.seed);
  } catch (const DatasetError& e) {
    throw PipelineError(e.what());
  }
  text::write_file(out_path(config, artifacts::kSplitManifest), split_manifest_csv(plan));
  text::write_file(out_path(config, artifacts::kScalerStats), scaler_text(fit_scaler(records, plan.train_ids)));

  TrainSummary summary;
  summary.train_size = plan.train_ids.size();
  summary.test_size = plan.test_ids.size();
  std::ostringstream cv;
  for (auto kind : config.classifiers) {
    ModelParams params = config.best.at(kind);
    try {
      if (config.param_source == ParamSource::grid_search) {
        const auto result = grid_search(config.grids.at(kind), records, plan.folds, config.seed);
        params = result.best;
        summary.cv_accuracy[kind] = result.cv_accuracy;
        for (const auto& s : result.scores) {
          cv << kind_symbol(kind) << ' ' << text::format_fixed(s.mean_accuracy, 4) << ' ' << describe(s.params) << '\n';
        }
      }
      const auto model = train(params, records, plan.train_ids, config.seed);
      save_model(model, out_path(config, artifacts::model_file(kind)));
      summary.params[kind] = params;
      summary.test_accuracy[kind] = accuracy(model, records, plan.test_ids);
    } catch (const ModelError& e) {
      throw PipelineError(std::string(kind_symbol(kind)) + ": " + e.what());
    }
  }

  std::ostringstream out;
  out << "train_size " << summary.train_size << "\ntest_size " << summary.test_size << '\n';
  for (const auto& [kind, params] : summary.params) {
    out << kind_symbol(kind) << " params " << describe(params) << '\n';
    if (summary.cv_accuracy.contains(kind))
      out << kind_symbol(kind) << " cv_accuracy " << text::format_fixed(summary.cv_accuracy.at(kind), 4) << '\n';
    out << kind_symbol(kind) << " test_accuracy " << text::format_fixed(summary.test_accuracy.at(kind), 4) << '\n';
  }
  text::write_file(out_path(config, artifacts::kTrainSummary), out.str());
  if (config.param_source == ParamSource::grid_search) text::write_file(out_path(config, artifacts::kCvSummary), cv.str());
  return summary;
}

std::string final_beliefs_csv(const std::vector<FinalBelief>& beliefs) {
  std::ostringstream out;
  out << "id,classifier,initial,final,revised\n";
  for (const auto& b : beliefs) {
    out << b.instance_id << ',' << kind_symbol(b.classifier) << ',' << kb::class_symbol(b.initial) << ','
        << kb::class_symbol(b.final_class) << ',' << (b.revised ? 1 : 0) << '\n';
  }
  return out.str();
}

RevisionReport cmd_revise(const RunConfig& config) {
  const auto records = load_records(config);
  if (config.classifiers.empty()) throw ConfigError("no classifiers selected");
  const auto plan = parse_split_manifest(read_artifact(config, artifacts::kSplitManifest), config.seed);
  for (auto id : plan.test_ids) {
    if (id >= records.size()) throw PipelineError("split manifest references instance " + std::to_string(id) +
                                                  " beyond the dataset");
  }

  kb::MetaFlags meta;
  if (!config.snapshot_dir.empty()) {
    if (!fs::is_directory(config.snapshot_dir)) throw ConfigError("snapshot directory not found: " + config.snapshot_dir);
    meta = meta_from_snapshot_dir(config.snapshot_dir, records);
  } else {
    for (auto id : plan.test_ids) {
      const auto& flag = records[id].meta_present;
      if (!flag)
        throw ConfigError("instance " + std::to_string(id) + " has no meta value; provide column '" +
                          config.meta_column + "' or --snapshot-dir");
      meta[id] = *flag;
    }
  }

  std::map<ClassifierKind, TrainedModel> models;
  for (auto kind : config.classifiers) {
    const auto path = out_path(config, artifacts::model_file(kind));
    if (!fs::is_regular_file(path)) throw ConfigError("missing model " + path + " (run train first)");
    try {
      models.emplace(kind, load_model(path));
    } catch (const ModelError& e) {
      throw PipelineError(e.what());
    }
  }

  nmr::Program rules;
  try {
    rules = config.rules_path.empty() ? revision_program() : load_rules(config.rules_path);
  } catch (const RevisionError& e) {
    throw ConfigError(e.what());
  }

  ensure_output_dir(config);
  std::vector<InitialBelief> beliefs;
  std::vector<FinalBelief> finals;
  try {
    beliefs = generate_initial_beliefs(models, records, plan.test_ids, config.classifiers);
    kb::serialize(kb::encode(beliefs, meta), out_path(config, artifacts::kFacts));
    finals = apply_revision(beliefs, meta, rules);
  } catch (const std::runtime_error& e) {
    throw PipelineError(e.what());
  }

  std::map<InstanceId, Label> truth;
  for (auto id : plan.test_ids) truth[id] = records[id].label;
  RevisionReport report;
  try {
    report = build_report(beliefs, finals, truth);
  } catch (const RevisionError& e) {
    throw PipelineError(e.what());
  }

  text::write_file(out_path(config, artifacts::kFinalBeliefs), final_beliefs_csv(finals));
  text::write_file(out_path(config, artifacts::kReportText), render_report(report));
  text::write_file(out_path(config, artifacts::kReportKv), report_to_kv(report));
  return report;
}

std::string cmd_report(const RunConfig& config) {
  const auto kv = read_artifact(config, artifacts::kReportKv);
  RevisionReport report;
  try {
    report = report_from_kv(kv);
  } catch (const RevisionError& e) {
    throw PipelineError(e.what());
  }
  const auto rendered = render_comparison(report);
  text::write_file(out_path(config, artifacts::kComparison), rendered);
  return rendered;
}

}  // namespace phishrev
