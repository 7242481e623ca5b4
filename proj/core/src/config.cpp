#include "phishrev/config.hpp"

#include <algorithm>
#include <sstream>

#include "phishrev/text.hpp"

namespace phishrev {

RunConfig::RunConfig() {
  for (auto k : kAllKinds) {
    best[k] = best_config(k);
    grids[k] = default_grid(k);
  }
}

CsvSchema RunConfig::schema() const {
  CsvSchema s;
  s.label_column = label_column;
  s.meta_column = meta_column;
  return s;
}

namespace {

ClassifierKind parse_kind(std::string_view s) {
  auto k = kind_from_symbol(s);
  if (!k) throw ConfigError("unknown classifier '" + std::string(s) + "' (expected svm, knn, dt, rf or all)");
  return *k;
}

void set_param(Assignment& a, const std::string& name, const std::string& value) {
  for (auto& [k, v] : a) {
    if (k == name) {
      v = value;
      return;
    }
  }
  a.emplace_back(name, value);
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view raw_key, std::string_view raw_value) {
  const std::string key(text::trim(raw_key));
  const std::string value(text::trim(raw_value));
  try {
    if (key == "dataset") {
      c.dataset_path = value;
    } else if (key == "label_column") {
      c.label_column = value;
    } else if (key == "meta_column") {
      c.meta_column = value;
    } else if (key == "snapshot_dir") {
      c.snapshot_dir = value;
    } else if (key == "seed") {
      auto v = text::parse_int(value);
      if (!v || *v < 0) throw ConfigError("seed must be a non-negative integer");
      c.seed = static_cast<std::uint64_t>(*v);
    } else if (key == "test_fraction") {
      auto v = text::parse_double(value);
      if (!v || !(*v > 0.0 && *v < 1.0)) throw ConfigError("test_fraction must lie in (0, 1)");
      c.test_fraction = *v;
    } else if (key == "folds") {
      auto v = text::parse_int(value);
      if (!v || *v < 2) throw ConfigError("folds must be an integer >= 2");
      c.folds = static_cast<std::size_t>(*v);
    } else if (key == "params") {
      if (value == "best-config") c.param_source = ParamSource::best_config;
      else if (value == "grid-search") c.param_source = ParamSource::grid_search;
      else throw ConfigError("params must be best-config or grid-search");
    } else if (key == "rules") {
      c.rules_path = value;
    } else if (key == "out") {
      c.output_dir = value;
    } else if (key == "classifiers") {
      c.classifiers.clear();
      if (value == "all") {
        c.classifiers.assign(kAllKinds.begin(), kAllKinds.end());
      } else {
        for (const auto& part : text::split(value, ',')) {
          const auto k = parse_kind(text::trim(part));
          if (std::find(c.classifiers.begin(), c.classifiers.end(), k) == c.classifiers.end())
            c.classifiers.push_back(k);
        }
        std::sort(c.classifiers.begin(), c.classifiers.end());
      }
    } else if (key.starts_with("best.") || key.starts_with("grid.")) {
      const auto parts = text::split(key, '.');
      if (parts.size() != 3) throw ConfigError("expected best.<kind>.<param> or grid.<kind>.<param>");
      const auto kind = parse_kind(parts[1]);
      if (parts[0] == "best") {
        auto a = to_assignment(c.best.at(kind));
        set_param(a, parts[2], value);
        c.best[kind] = from_assignment(kind, a);
      } else {
        std::vector<std::string> values;
        for (const auto& v : text::split(value, ',')) values.emplace_back(text::trim(v));
        auto& grid = c.grids.at(kind);
        bool replaced = false;
        for (auto& [name, list] : grid.parameter_lists) {
          if (name == parts[2]) {
            list = values;
            replaced = true;
          }
        }
        if (!replaced) throw ConfigError("grid." + parts[1] + ": unknown parameter " + parts[2]);
        grid.candidates();  // validates every value
      }
    } else {
      throw ConfigError("unknown setting '" + key + "'");
    }
  } catch (const ParamError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

void apply_config_text(RunConfig& config, std::string_view text_in) {
  std::istringstream in{std::string(text_in)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(config, body.substr(0, eq), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  apply_config_text(config, contents);
}

std::string config_to_text(const RunConfig& c) {
  std::ostringstream out;
  out << "dataset = " << c.dataset_path << '\n';
  out << "label_column = " << c.label_column << '\n';
  out << "meta_column = " << c.meta_column << '\n';
  out << "snapshot_dir = " << c.snapshot_dir << '\n';
  out << "seed = " << c.seed << '\n';
  out << "test_fraction = " << text::format_double(c.test_fraction) << '\n';
  out << "folds = " << c.folds << '\n';
  out << "params = " << (c.param_source == ParamSource::best_config ? "best-config" : "grid-search") << '\n';
  out << "rules = " << c.rules_path << '\n';
  out << "out = " << c.output_dir << '\n';
  std::vector<std::string> kinds;
  for (auto k : c.classifiers) kinds.emplace_back(kind_symbol(k));
  out << "classifiers = " << text::join(kinds, ",") << '\n';
  for (const auto& [kind, params] : c.best)
    for (const auto& [k, v] : to_assignment(params)) out << "best." << kind_symbol(kind) << '.' << k << " = " << v << '\n';
  for (const auto& [kind, grid] : c.grids)
    for (const auto& [name, values] : grid.parameter_lists)
      out << "grid." << kind_symbol(kind) << '.' << name << " = " << text::join(values, ",") << '\n';
  return out.str();
}

}  // namespace phishrev
