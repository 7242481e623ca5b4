#include "phishrev/kb.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "phishrev/text.hpp"

namespace phishrev::kb {

std::string_view class_symbol(Label label) { return label == Label::phishing ? "phishing" : "benign"; }

Label class_from_symbol(std::string_view symbol) {
  if (symbol == "phishing") return Label::phishing;
  if (symbol == "benign") return Label::legitimate;
  throw KbError("unknown class constant '" + std::string(symbol) + "'");
}

namespace {

bool is_pred(const Fact& f) { return f.predicate == "pred" && f.args.size() == 3; }
bool is_meta(const Fact& f) { return f.predicate == "meta" && f.args.size() == 2; }

InstanceId id_arg(const Fact& f, std::size_t at) {
  const auto* v = std::get_if<std::int64_t>(&f.args[at]);
  if (!v || *v < 0) throw KbError("fact " + f.to_string() + ": instance id must be a non-negative integer");
  return static_cast<InstanceId>(*v);
}

const std::string& symbol_arg(const Fact& f, std::size_t at) {
  const auto* v = std::get_if<std::string>(&f.args[at]);
  if (!v) throw KbError("fact " + f.to_string() + ": expected a symbol at position " + std::to_string(at + 1));
  return *v;
}

}  // namespace

bool fact_less(const Fact& a, const Fact& b) {
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
  if (is_pred(a)) {
    auto ka = std::tie(a.args[1], a.args[0], a.args[2]);
    auto kb = std::tie(b.args[1], b.args[0], b.args[2]);
    return ka < kb;
  }
  return a.args < b.args;
}

void FactBase::add(Fact fact) {
  if (seen_.contains(fact)) return;
  if (is_pred(fact)) {
    const auto key = std::make_pair(symbol_arg(fact, 0), id_arg(fact, 1));
    const auto& cls = symbol_arg(fact, 2);
    auto [it, inserted] = pred_class_.try_emplace(key, cls);
    if (!inserted)
      throw KbError("conflicting predictions for (" + key.first + ", " + std::to_string(key.second) + ")");
  } else if (is_meta(fact)) {
    const auto id = id_arg(fact, 0);
    auto [it, inserted] = meta_.try_emplace(id, symbol_arg(fact, 1));
    if (!inserted) throw KbError("conflicting meta facts for instance " + std::to_string(id));
  }
  seen_.insert(fact);
  facts_.push_back(std::move(fact));
}

std::vector<Fact> FactBase::sorted() const {
  auto out = facts_;
  std::sort(out.begin(), out.end(), fact_less);
  return out;
}

std::vector<InstanceId> FactBase::missing_meta() const {
  std::set<InstanceId> ids;
  for (const auto& [key, cls] : pred_class_)
    if (!meta_.contains(key.second)) ids.insert(key.second);
  return {ids.begin(), ids.end()};
}

FactBase FactBase::from_program(const nmr::Program& program) {
  FactBase fb;
  for (const auto& r : program.rules()) {
    if (!r.is_fact()) throw KbError("fact file contains a rule at line " + std::to_string(r.pos.line));
    Fact f{r.head.predicate, {}};
    for (const auto& t : r.head.terms) f.args.push_back(std::get<nmr::Constant>(t));
    fb.add(std::move(f));
  }
  return fb;
}

FactBase encode(std::span<const InitialBelief> beliefs, const MetaFlags& meta_flags, std::size_t* visits) {
  FactBase fb;
  std::set<InstanceId> emitted_meta;
  std::size_t count = 0;
  for (const auto& b : beliefs) {
    ++count;
    auto meta = meta_flags.find(b.instance_id);
    if (meta == meta_flags.end())
      throw KbError("no meta evidence for instance " + std::to_string(b.instance_id));
    const auto id = static_cast<std::int64_t>(b.instance_id);
    fb.add(Fact{"pred", {std::string(kind_symbol(b.classifier)), id, std::string(class_symbol(b.predicted))}});
    if (emitted_meta.insert(b.instance_id).second)
      fb.add(Fact{"meta", {id, std::string(meta->second ? "yes" : "no")}});
  }
  if (visits) *visits = count;
  return fb;
}

Decoded decode(const FactBase& facts) {
  Decoded out;
  for (const auto& f : facts.facts()) {
    if (is_pred(f)) {
      const auto kind = kind_from_symbol(symbol_arg(f, 0));
      if (!kind) throw KbError("unknown classifier '" + symbol_arg(f, 0) + "'");
      out.beliefs.push_back({*kind, id_arg(f, 1), class_from_symbol(symbol_arg(f, 2))});
    } else if (is_meta(f)) {
      const auto& m = symbol_arg(f, 1);
      if (m != "yes" && m != "no") throw KbError("meta value must be yes or no, got '" + m + "'");
      out.meta_flags[id_arg(f, 0)] = m == "yes";
    } else {
      throw KbError("unexpected fact " + f.to_string());
    }
  }
  std::sort(out.beliefs.begin(), out.beliefs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.instance_id, a.classifier) < std::tie(b.instance_id, b.classifier);
  });
  return out;
}

std::string to_text(const FactBase& facts) {
  std::string out;
  for (const auto& f : facts.sorted()) {
    out += f.to_string();
    out += ".\n";
  }
  return out;
}

std::size_t serialize(const FactBase& facts, const std::string& path) {
  try {
    return text::write_file(path, to_text(facts));
  } catch (const std::runtime_error& e) {
    throw KbError(e.what());
  }
}

FactBase parse_facts(std::string_view text) { return FactBase::from_program(nmr::parse_program(text)); }

}  // namespace phishrev::kb
