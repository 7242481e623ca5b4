#include "phishrev/params.hpp"

#include <algorithm>

#include "phishrev/text.hpp"

namespace phishrev {

std::string_view kind_symbol(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::svm: return "svm";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::dt: return "dt";
    case ClassifierKind::rf: return "rf";
  }
  return "?";
}

std::optional<ClassifierKind> kind_from_symbol(std::string_view s) {
  const auto lower = text::to_lower(text::trim(s));
  for (auto k : kAllKinds)
    if (kind_symbol(k) == lower) return k;
  return std::nullopt;
}

ClassifierKind kind_of(const ModelParams& params) {
  return static_cast<ClassifierKind>(params.index());
}

namespace {

std::string depth_str(const std::optional<int>& d) { return d ? std::to_string(*d) : "none"; }
std::string criterion_str(SplitCriterion c) { return c == SplitCriterion::gini ? "gini" : "entropy"; }

int parse_positive_int(const std::string& name, const std::string& v) {
  auto i = text::parse_int(v);
  if (!i || *i <= 0) throw ParamError("parameter " + name + " must be a positive integer, got '" + v + "'");
  return static_cast<int>(*i);
}

std::optional<int> parse_depth(const std::string& v) {
  if (text::to_lower(v) == "none") return std::nullopt;
  return parse_positive_int("max_depth", v);
}

SplitCriterion parse_criterion(const std::string& v) {
  if (v == "gini") return SplitCriterion::gini;
  if (v == "entropy") return SplitCriterion::entropy;
  throw ParamError("unknown criterion '" + v + "'");
}

const std::string* find(const Assignment& a, std::string_view name) {
  for (const auto& [k, v] : a)
    if (k == name) return &v;
  return nullptr;
}

}  // namespace

Assignment to_assignment(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> Assignment {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SvmParams>) {
          return {{"C", text::format_double(p.c)},
                  {"kernel", p.kernel == SvmKernel::linear ? "linear" : "rbf"},
                  {"gamma", p.gamma == GammaMode::scale ? "scale" : "auto"}};
        } else if constexpr (std::is_same_v<T, KnnParams>) {
          return {{"n_neighbors", std::to_string(p.k)},
                  {"weights", p.weights == KnnWeights::uniform ? "uniform" : "distance"},
                  {"metric", p.metric == KnnMetric::euclidean ? "euclidean" : "manhattan"}};
        } else if constexpr (std::is_same_v<T, TreeParams>) {
          return {{"criterion", criterion_str(p.criterion)},
                  {"max_depth", depth_str(p.max_depth)},
                  {"min_samples_split", std::to_string(p.min_samples_split)}};
        } else {
          return {{"n_estimators", std::to_string(p.n_estimators)},
                  {"max_depth", depth_str(p.max_depth)},
                  {"criterion", criterion_str(p.criterion)}};
        }
      },
      params);
}

ModelParams from_assignment(ClassifierKind kind, const Assignment& a) {
  auto get = [&](std::string_view name) -> std::string {
    const auto* v = find(a, name);
    if (!v) throw ParamError(std::string(kind_symbol(kind)) + ": missing parameter " + std::string(name));
    return std::string(text::trim(*v));
  };
  for (const auto& [k, v] : a) {
    static const std::map<ClassifierKind, std::vector<std::string_view>> known = {
        {ClassifierKind::svm, {"C", "kernel", "gamma"}},
        {ClassifierKind::knn, {"n_neighbors", "weights", "metric"}},
        {ClassifierKind::dt, {"criterion", "max_depth", "min_samples_split"}},
        {ClassifierKind::rf, {"n_estimators", "max_depth", "criterion"}}};
    const auto& names = known.at(kind);
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw ParamError(std::string(kind_symbol(kind)) + ": unknown parameter " + k);
  }

  switch (kind) {
    case ClassifierKind::svm: {
      SvmParams p;
      auto c = text::parse_double(get("C"));
      if (!c || !(*c > 0.0)) throw ParamError("svm: C must be a positive number");
      p.c = *c;
      const auto kernel = get("kernel");
      if (kernel == "linear") p.kernel = SvmKernel::linear;
      else if (kernel == "rbf") p.kernel = SvmKernel::rbf;
      else throw ParamError("svm: unknown kernel '" + kernel + "'");
      const auto gamma = get("gamma");
      if (gamma == "scale") p.gamma = GammaMode::scale;
      else if (gamma == "auto") p.gamma = GammaMode::automatic;
      else throw ParamError("svm: unknown gamma '" + gamma + "'");
      return p;
    }
    case ClassifierKind::knn: {
      KnnParams p;
      p.k = parse_positive_int("n_neighbors", get("n_neighbors"));
      const auto w = get("weights");
      if (w == "uniform") p.weights = KnnWeights::uniform;
      else if (w == "distance") p.weights = KnnWeights::distance;
      else throw ParamError("knn: unknown weights '" + w + "'");
      const auto m = get("metric");
      if (m == "euclidean") p.metric = KnnMetric::euclidean;
      else if (m == "manhattan") p.metric = KnnMetric::manhattan;
      else throw ParamError("knn: unknown metric '" + m + "'");
      return p;
    }
    case ClassifierKind::dt: {
      TreeParams p;
      p.criterion = parse_criterion(get("criterion"));
      p.max_depth = parse_depth(get("max_depth"));
      p.min_samples_split = parse_positive_int("min_samples_split", get("min_samples_split"));
      if (p.min_samples_split < 2) throw ParamError("dt: min_samples_split must be >= 2");
      return p;
    }
    case ClassifierKind::rf: {
      ForestParams p;
      p.n_estimators = parse_positive_int("n_estimators", get("n_estimators"));
      p.max_depth = parse_depth(get("max_depth"));
      p.criterion = parse_criterion(get("criterion"));
      return p;
    }
  }
  throw ParamError("unknown classifier kind");
}

std::string describe(const ModelParams& params) {
  std::vector<std::string> parts;
  for (const auto& [k, v] : to_assignment(params)) parts.push_back(k + "=" + v);
  return text::join(parts, " ");
}

std::size_t HyperGrid::cardinality() const {
  std::size_t n = parameter_lists.empty() ? 0 : 1;
  for (const auto& [name, values] : parameter_lists) n *= values.size();
  return n;
}

std::vector<ModelParams> HyperGrid::candidates() const {
  std::vector<ModelParams> out;
  const auto total = cardinality();
  out.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Assignment a;
    std::size_t rest = flat;
    std::vector<std::size_t> digits(parameter_lists.size());
    for (std::size_t i = parameter_lists.size(); i-- > 0;) {
      digits[i] = rest % parameter_lists[i].second.size();
      rest /= parameter_lists[i].second.size();
    }
    for (std::size_t i = 0; i < parameter_lists.size(); ++i)
      a.emplace_back(parameter_lists[i].first, parameter_lists[i].second[digits[i]]);
    out.push_back(from_assignment(kind, a));
  }
  return out;
}

HyperGrid default_grid(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::svm:
      return {kind, {{"C", {"0.1", "1", "10"}}, {"kernel", {"linear", "rbf"}}, {"gamma", {"scale", "auto"}}}};
    case ClassifierKind::knn:
      return {kind,
              {{"n_neighbors", {"3", "5", "7", "9"}},
               {"weights", {"uniform", "distance"}},
               {"metric", {"euclidean", "manhattan"}}}};
    case ClassifierKind::dt:
      return {kind,
              {{"criterion", {"gini", "entropy"}},
               {"max_depth", {"3", "5", "10", "none"}},
               {"min_samples_split", {"2", "5", "10"}}}};
    case ClassifierKind::rf:
      return {kind,
              {{"n_estimators", {"100", "200"}},
               {"max_depth", {"5", "10", "none"}},
               {"criterion", {"gini", "entropy"}}}};
  }
  throw ParamError("unknown classifier kind");
}

ModelParams best_config(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::svm: return SvmParams{10.0, SvmKernel::rbf, GammaMode::scale};
    case ClassifierKind::knn: return KnnParams{9, KnnWeights::distance, KnnMetric::manhattan};
    case ClassifierKind::dt: return TreeParams{SplitCriterion::gini, 10, 10};
    case ClassifierKind::rf: return ForestParams{100, std::nullopt, SplitCriterion::entropy};
  }
  throw ParamError("unknown classifier kind");
}

std::vector<ModelParams> effective_candidates(const std::vector<ModelParams>& candidates) {
  auto normalise = [](ModelParams p) {
    if (auto* s = std::get_if<SvmParams>(&p); s && s->kernel == SvmKernel::linear)
      s->gamma = GammaMode::scale;
    return p;
  };
  std::vector<ModelParams> out;
  std::vector<ModelParams> seen;
  for (const auto& c : candidates) {
    auto n = normalise(c);
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    out.push_back(c);
  }
  return out;
}

}  // namespace phishrev
