#include <sstream>

#include "phishrev/classifiers.hpp"
#include "phishrev/text.hpp"

namespace phishrev {

namespace {

constexpr std::string_view kMagic = "phishrev-model v1";

void write_values(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out << ' ';
    out << text::format_double(values[i]);
  }
}

void write_tree(std::ostream& out, const DecisionTree& tree) {
  out << "tree " << tree.nodes.size() << '\n';
  for (const auto& n : tree.nodes) {
    out << n.feature << ' ' << text::format_double(n.threshold) << ' ' << n.left << ' ' << n.right << ' '
        << label_value(n.label) << ' ' << n.counts[0] << ' ' << n.counts[1] << '\n';
  }
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : in_(std::string(text)) {}

  std::vector<std::string> next() {
    std::string line;
    if (!std::getline(in_, line)) throw ModelError("model file truncated at line " + std::to_string(line_ + 1));
    ++line_;
    std::vector<std::string> tokens;
    std::istringstream ls(line);
    for (std::string t; ls >> t;) tokens.push_back(t);
    return tokens;
  }

  std::vector<std::string> expect(std::string_view key, std::size_t min_tokens = 2) {
    auto t = next();
    if (t.empty() || t[0] != key || t.size() < min_tokens)
      throw ModelError("model file line " + std::to_string(line_) + ": expected '" + std::string(key) + "'");
    return t;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ModelError("model file line " + std::to_string(line_) + ": " + what);
  }

  double to_double(const std::string& s) const {
    auto v = text::parse_double(s);
    if (!v) fail("bad number '" + s + "'");
    return *v;
  }

  long long to_int(const std::string& s) const {
    auto v = text::parse_int(s);
    if (!v) fail("bad integer '" + s + "'");
    return *v;
  }

  std::size_t to_size(const std::string& s) const {
    const auto v = to_int(s);
    if (v < 0) fail("negative count");
    return static_cast<std::size_t>(v);
  }

  std::vector<double> values(const std::vector<std::string>& tokens, std::size_t from, std::size_t count) const {
    if (tokens.size() != from + count) fail("expected " + std::to_string(count) + " values");
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = from; i < tokens.size(); ++i) out.push_back(to_double(tokens[i]));
    return out;
  }

 private:
  std::istringstream in_;
  std::size_t line_ = 0;
};

Label to_label(const LineReader& r, long long v) {
  if (v != 0 && v != 1) r.fail("label must be 0 or 1");
  return static_cast<Label>(v);
}

DecisionTree read_tree(LineReader& r, std::size_t dim) {
  const auto header = r.expect("tree");
  const auto count = r.to_size(header[1]);
  DecisionTree tree;
  tree.nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto t = r.next();
    if (t.size() != 7) r.fail("tree node needs 7 fields");
    TreeNode n;
    n.feature = static_cast<int>(r.to_int(t[0]));
    n.threshold = r.to_double(t[1]);
    n.left = static_cast<int>(r.to_int(t[2]));
    n.right = static_cast<int>(r.to_int(t[3]));
    n.label = to_label(r, r.to_int(t[4]));
    n.counts = {r.to_size(t[5]), r.to_size(t[6])};
    if (!n.is_leaf()) {
      const auto limit = static_cast<long long>(count);
      if (static_cast<std::size_t>(n.feature) >= dim || n.left <= static_cast<int>(i) || n.right <= static_cast<int>(i) ||
          n.left >= limit || n.right >= limit)
        r.fail("tree node references out of range");
    }
    tree.nodes.push_back(n);
  }
  if (tree.nodes.empty()) r.fail("empty tree");
  return tree;
}

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  std::ostringstream out;
  out << kMagic << '\n';
  out << "kind " << kind_symbol(model.kind) << '\n';
  for (const auto& [k, v] : to_assignment(model.params)) out << "param " << k << ' ' << v << '\n';
  out << "seed " << model.seed << '\n';
  out << "dimension " << model.scaler.dimension() << '\n';
  out << "scaler.means ";
  write_values(out, model.scaler.means);
  out << "\nscaler.std_devs ";
  write_values(out, model.scaler.std_devs);
  out << '\n';

  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SvmModel>) {
          out << "kernel " << (s.kernel == SvmKernel::linear ? "linear" : "rbf") << '\n';
          out << "gamma " << text::format_double(s.gamma) << '\n';
          out << "bias " << text::format_double(s.bias) << '\n';
          out << "support_vectors " << s.coefficients.size() << '\n';
          for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
            out << text::format_double(s.coefficients[i]) << ' ';
            write_values(out, s.support_vectors.row(i));
            out << '\n';
          }
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          out << "train " << s.train.rows() << '\n';
          for (std::size_t i = 0; i < s.train.rows(); ++i) {
            out << label_value(s.labels[i]) << ' ';
            write_values(out, s.train.row(i));
            out << '\n';
          }
        } else if constexpr (std::is_same_v<T, DecisionTree>) {
          write_tree(out, s);
        } else {
          out << "trees " << s.trees.size() << '\n';
          for (const auto& t : s.trees) write_tree(out, t);
        }
      },
      model.state);
  out << "end\n";
  return out.str();
}

TrainedModel parse_model(std::string_view text) {
  LineReader r(text);
  {
    auto magic = r.next();
    if (text::join(magic, " ") != kMagic) r.fail("not a phishrev model file");
  }
  TrainedModel model;
  const auto kind_line = r.expect("kind");
  const auto kind = kind_from_symbol(kind_line[1]);
  if (!kind) r.fail("unknown kind '" + kind_line[1] + "'");
  model.kind = *kind;

  Assignment assignment;
  for (int i = 0; i < 3; ++i) {
    const auto p = r.expect("param", 3);
    assignment.emplace_back(p[1], p[2]);
  }
  try {
    model.params = from_assignment(model.kind, assignment);
  } catch (const ParamError& e) {
    r.fail(e.what());
  }
  model.seed = static_cast<std::uint64_t>(r.to_size(r.expect("seed")[1]));
  const auto dim = r.to_size(r.expect("dimension")[1]);
  model.scaler.means = r.values(r.expect("scaler.means", 1), 1, dim);
  model.scaler.std_devs = r.values(r.expect("scaler.std_devs", 1), 1, dim);

  switch (model.kind) {
    case ClassifierKind::svm: {
      SvmModel s;
      const auto kernel = r.expect("kernel")[1];
      if (kernel != "linear" && kernel != "rbf") r.fail("unknown kernel");
      s.kernel = kernel == "linear" ? SvmKernel::linear : SvmKernel::rbf;
      s.gamma = r.to_double(r.expect("gamma")[1]);
      s.bias = r.to_double(r.expect("bias")[1]);
      const auto count = r.to_size(r.expect("support_vectors")[1]);
      s.support_vectors = Matrix(0, dim);
      for (std::size_t i = 0; i < count; ++i) {
        const auto t = r.next();
        auto v = r.values(t, 0, dim + 1);
        s.coefficients.push_back(v[0]);
        s.support_vectors.append_row(std::span<const double>(v).subspan(1));
      }
      model.state = std::move(s);
      break;
    }
    case ClassifierKind::knn: {
      KnnModel s;
      s.params = std::get<KnnParams>(model.params);
      const auto count = r.to_size(r.expect("train")[1]);
      s.train = Matrix(0, dim);
      for (std::size_t i = 0; i < count; ++i) {
        const auto t = r.next();
        auto v = r.values(t, 0, dim + 1);
        s.labels.push_back(to_label(r, static_cast<long long>(v[0])));
        s.train.append_row(std::span<const double>(v).subspan(1));
      }
      model.state = std::move(s);
      break;
    }
    case ClassifierKind::dt:
      model.state = read_tree(r, dim);
      break;
    case ClassifierKind::rf: {
      RandomForest f;
      const auto count = r.to_size(r.expect("trees")[1]);
      for (std::size_t i = 0; i < count; ++i) f.trees.push_back(read_tree(r, dim));
      model.state = std::move(f);
      break;
    }
  }
  if (r.next() != std::vector<std::string>{"end"}) r.fail("expected 'end'");
  return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
  text::write_file(path, serialize_model(model));
}

TrainedModel load_model(const std::string& path) {
  try {
    return parse_model(text::read_file(path));
  } catch (const ModelError& e) {
    throw ModelError(path + ": " + e.what());
  }
}

}  // namespace phishrev
