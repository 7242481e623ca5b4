#include "phishrev/revision.hpp"

#include <tuple>

#include "phishrev/text.hpp"

namespace phishrev {

namespace {

constexpr std::string_view kRevisionRules =
    "% Post-hoc belief revision over classifier predictions.\n"
    "% A phishing prediction is withdrawn when meta information is present.\n"
    "revise(CL,ID) :- pred(CL,ID,phishing), meta(ID,yes).\n"
    "final(CL,ID,benign) :- revise(CL,ID).\n"
    "final(CL,ID,C) :- pred(CL,ID,C), not revise(CL,ID).\n";

}  // namespace

std::string_view revision_rules_text() { return kRevisionRules; }

const nmr::Program& revision_program() {
  static const nmr::Program program = nmr::parse_program(kRevisionRules);
  return program;
}

nmr::Program load_rules(const std::string& path) {
  std::string source;
  try {
    source = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw RevisionError(std::string("cannot read rules: ") + e.what());
  }
  try {
    return nmr::parse_program(source);
  } catch (const nmr::ProgramError& e) {
    throw RevisionError(path + ": " + e.what());
  }
}

std::vector<FinalBelief> extract_final_beliefs(std::span<const InitialBelief> beliefs, const nmr::AnswerSet& model) {
  std::map<std::pair<std::string, InstanceId>, Label> finals;
  for (const auto& atom : model.with_predicate("final", 3)) {
    const auto* cl = std::get_if<std::string>(&atom.args[0]);
    const auto* id = std::get_if<std::int64_t>(&atom.args[1]);
    const auto* cls = std::get_if<std::string>(&atom.args[2]);
    if (!cl || !id || !cls || *id < 0) throw RevisionError("malformed atom " + atom.to_string());
    const Label label = kb::class_from_symbol(*cls);
    auto [it, inserted] = finals.try_emplace({*cl, static_cast<InstanceId>(*id)}, label);
    if (!inserted && it->second != label)
      throw RevisionError("rules derive both final classes for (" + *cl + "," + std::to_string(*id) + ")");
  }

  std::vector<FinalBelief> out;
  out.reserve(beliefs.size());
  for (const auto& b : beliefs) {
    const std::string cl(kind_symbol(b.classifier));
    auto it = finals.find({cl, b.instance_id});
    if (it == finals.end())
      throw RevisionError("final/3 not derivable for (" + cl + "," + std::to_string(b.instance_id) +
                          "): the rule set must define final(CL,ID,C) for every pred(CL,ID,_) fact");
    out.push_back({b.classifier, b.instance_id, b.predicted, it->second, it->second != b.predicted});
  }
  return out;
}

std::vector<FinalBelief> apply_revision(std::span<const InitialBelief> beliefs, const kb::MetaFlags& meta_flags,
                                        const nmr::Program& rules, RevisionTrace* trace) {
  RevisionTrace local;
  RevisionTrace& t = trace ? *trace : local;
  const auto facts = kb::encode(beliefs, meta_flags, &t.encode_visits);
  t.fact_count = facts.size();
  const auto ground = nmr::ground(rules, facts.facts(), &t.grounding);
  const auto model = nmr::solve(ground, &t.solving);
  return extract_final_beliefs(beliefs, model);
}

// ---------------------------------------------------------------------------

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double Confusion::accuracy() const { return ratio(tp + tn, total()); }

double Confusion::precision(Label cls) const {
  return cls == Label::phishing ? ratio(tp, tp + fp) : ratio(tn, tn + fn);
}

double Confusion::recall(Label cls) const {
  return cls == Label::phishing ? ratio(tp, tp + fn) : ratio(tn, tn + fp);
}

double Confusion::f1(Label cls) const {
  const double p = precision(cls);
  const double r = recall(cls);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

void Confusion::add(Label truth, Label predicted) {
  if (truth == Label::phishing) (predicted == Label::phishing ? tp : fn) += 1;
  else (predicted == Label::phishing ? fp : tn) += 1;
}

double RevisionReport::revised_fraction() const { return ratio(total_revised, total_decisions); }

const ClassifierRevision* RevisionReport::find(ClassifierKind kind) const {
  for (const auto& c : classifiers)
    if (c.kind == kind) return &c;
  return nullptr;
}

RevisionReport build_report(std::span<const InitialBelief> initial, std::span<const FinalBelief> final_beliefs,
                            const std::map<InstanceId, Label>& ground_truth) {
  if (initial.size() != final_beliefs.size())
    throw RevisionError("build_report: " + std::to_string(initial.size()) + " initial vs " +
                        std::to_string(final_beliefs.size()) + " final beliefs");

  std::map<ClassifierKind, ClassifierRevision> per_kind;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const auto& a = initial[i];
    const auto& b = final_beliefs[i];
    if (a.classifier != b.classifier || a.instance_id != b.instance_id || a.predicted != b.initial)
      throw RevisionError("build_report: misaligned beliefs at position " + std::to_string(i) + " (instance " +
                          std::to_string(a.instance_id) + " vs " + std::to_string(b.instance_id) + ")");
    auto truth = ground_truth.find(a.instance_id);
    if (truth == ground_truth.end())
      throw RevisionError("build_report: no ground truth for instance " + std::to_string(a.instance_id));

    auto& entry = per_kind[a.classifier];
    entry.kind = a.classifier;
    entry.before.add(truth->second, a.predicted);
    entry.after.add(truth->second, b.final_class);
    if (b.revised) {
      ++entry.revised_count;
      entry.revised_ids.push_back(a.instance_id);
    }
  }

  RevisionReport report;
  for (auto& [kind, entry] : per_kind) {
    std::sort(entry.revised_ids.begin(), entry.revised_ids.end());
    report.total_revised += entry.revised_count;
    report.total_decisions += entry.before.total();
    report.classifiers.push_back(std::move(entry));
  }
  return report;
}

}  // namespace phishrev
