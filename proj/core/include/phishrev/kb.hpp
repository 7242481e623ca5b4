#pragma once

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phishrev/classifiers.hpp"
#include "phishrev/nmr.hpp"

namespace phishrev::kb {

using Fact = nmr::GroundAtom;
using MetaFlags = std::map<InstanceId, bool>;

class KbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Class constant used in facts: 0 <-> benign, 1 <-> phishing.
std::string_view class_symbol(Label label);
Label class_from_symbol(std::string_view symbol);

/// Canonical ordering: predicate, then for pred/3 (id, classifier, class),
/// otherwise arguments left to right.
bool fact_less(const Fact& a, const Fact& b);

/// Ground facts with functional constraints on the pipeline vocabulary:
/// at most one pred/3 per (classifier, id) and one meta/2 per id.
class FactBase {
 public:
  /// Inserts a fact. Exact duplicates are ignored; a second pred/meta fact for
  /// the same key with a different value throws KbError.
  void add(Fact fact);

  const std::vector<Fact>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  std::vector<Fact> sorted() const;
  /// Ids that carry a pred fact but no meta fact.
  std::vector<InstanceId> missing_meta() const;

  /// Rebuilds a fact base from a parsed program consisting only of facts.
  static FactBase from_program(const nmr::Program& program);

  bool operator==(const FactBase& other) const { return sorted() == other.sorted(); }

 private:
  std::vector<Fact> facts_;
  std::set<Fact> seen_;
  std::map<std::pair<std::string, InstanceId>, std::string> pred_class_;  // (classifier, id) -> class
  std::map<InstanceId, std::string> meta_;
};

/// One pred(cl,id,c) per belief and one meta(id,yes|no) per distinct instance.
/// Single pass over the beliefs; `visits` (optional) counts element visits.
FactBase encode(std::span<const InitialBelief> beliefs, const MetaFlags& meta_flags,
                std::size_t* visits = nullptr);

struct Decoded {
  std::vector<InitialBelief> beliefs;  // sorted by (id, classifier)
  MetaFlags meta_flags;
};

/// Inverse of encode for pipeline vocabulary facts.
Decoded decode(const FactBase& facts);

/// `pred(svm,0,benign).` lines in canonical order.
std::string to_text(const FactBase& facts);
/// Writes to_text(facts) to `path`; returns the number of bytes written.
std::size_t serialize(const FactBase& facts, const std::string& path);
FactBase parse_facts(std::string_view text);

}  // namespace phishrev::kb
