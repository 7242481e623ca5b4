#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phishrev/classifiers.hpp"
#include "phishrev/kb.hpp"
#include "phishrev/nmr.hpp"

namespace phishrev {

class RevisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source text of the default revision rules (identical to rules/revision.lp).
std::string_view revision_rules_text();
/// The three-rule stratified program: revise/2 below final/3.
const nmr::Program& revision_program();
nmr::Program load_rules(const std::string& path);

struct FinalBelief {
  ClassifierKind classifier = ClassifierKind::svm;
  InstanceId instance_id = 0;
  Label initial = Label::legitimate;
  Label final_class = Label::legitimate;
  bool revised = false;
  bool operator==(const FinalBelief&) const = default;
};

struct RevisionTrace {
  std::size_t encode_visits = 0;
  std::size_t fact_count = 0;
  nmr::GroundingStats grounding;
  nmr::SolveStats solving;

  /// Rule instantiations plus derivations: the work done by the reasoning layer.
  std::size_t firings() const { return grounding.ground_rules + solving.firings; }
};

/// encode -> ground -> solve -> read final/3. One FinalBelief per input belief,
/// in input order. Ground truth never enters this path.
std::vector<FinalBelief> apply_revision(std::span<const InitialBelief> beliefs, const kb::MetaFlags& meta_flags,
                                        const nmr::Program& rules = revision_program(),
                                        RevisionTrace* trace = nullptr);

/// Reads final/3 (and requires exactly one class per belief) from a solved model.
std::vector<FinalBelief> extract_final_beliefs(std::span<const InitialBelief> beliefs,
                                               const nmr::AnswerSet& model);

// ---------------------------------------------------------------------------

/// Confusion counts with phishing as the positive class.
struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  double accuracy() const;
  double precision(Label cls) const;
  double recall(Label cls) const;
  double f1(Label cls) const;
  void add(Label truth, Label predicted);
  bool operator==(const Confusion&) const = default;
};

struct ClassifierRevision {
  ClassifierKind kind = ClassifierKind::svm;
  Confusion before;
  Confusion after;
  std::size_t revised_count = 0;
  std::vector<InstanceId> revised_ids;  // sorted
  bool operator==(const ClassifierRevision&) const = default;
};

struct RevisionReport {
  std::vector<ClassifierRevision> classifiers;  // kind order
  std::size_t total_revised = 0;
  std::size_t total_decisions = 0;

  double revised_fraction() const;
  const ClassifierRevision* find(ClassifierKind kind) const;
  bool operator==(const RevisionReport&) const = default;
};

RevisionReport build_report(std::span<const InitialBelief> initial, std::span<const FinalBelief> final_beliefs,
                            const std::map<InstanceId, Label>& ground_truth);

/// `classifier.metric=value`, one per line, fixed key order.
std::string report_to_kv(const RevisionReport& report);
RevisionReport report_from_kv(std::string_view kv);

/// Per-classifier revision summary.
std::string render_report(const RevisionReport& report);
/// Side-by-side false-positive table (without vs with revision) followed by
/// accuracy / per-class precision, recall and F1 for both stages.
std::string render_comparison(const RevisionReport& report);

}  // namespace phishrev
