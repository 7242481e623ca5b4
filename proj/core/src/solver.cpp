#include <algorithm>

#include "phishrev/nmr.hpp"

namespace phishrev::nmr {

AnswerSet solve(const GroundProgram& program, SolveStats* stats) {
  if (stats) *stats = {};
  const auto& rules = program.rules();
  const std::size_t n_atoms = program.atom_count();

  std::vector<bool> truth(n_atoms, false);
  std::vector<std::vector<std::size_t>> by_stratum(program.stratum_count());
  std::vector<std::vector<std::size_t>> watchers(n_atoms);  // rule indices with atom in positive body
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const auto& rule = rules[r];
    if (rule.stratum >= by_stratum.size()) by_stratum.resize(rule.stratum + 1);
    by_stratum[rule.stratum].push_back(r);
    for (auto a : rule.negative)
      if (program.atom_stratum(a) >= rule.stratum)
        throw ProgramError("internal stratification violation: '" + program.atom(a).to_string() +
                           "' is negated in a rule of the same or a lower stratum");
    for (auto a : rule.positive) watchers[a].push_back(r);
  }

  std::vector<std::size_t> missing(rules.size(), 0);
  std::vector<bool> active(rules.size(), false);
  std::vector<AtomId> queue;

  auto derive = [&](AtomId head) {
    if (truth[head]) return;
    truth[head] = true;
    queue.push_back(head);
    if (stats) ++stats->firings;
  };

  for (std::size_t s = 0; s < by_stratum.size(); ++s) {
    // Lower strata are final: negative literals are decided up front.
    for (auto r : by_stratum[s]) {
      const auto& rule = rules[r];
      const bool blocked = std::any_of(rule.negative.begin(), rule.negative.end(), [&](AtomId a) { return truth[a]; });
      if (blocked) continue;
      active[r] = true;
      std::size_t m = 0;
      for (auto a : rule.positive) m += truth[a] ? 0 : 1;
      missing[r] = m;
    }
    for (auto r : by_stratum[s])
      if (active[r] && missing[r] == 0) derive(rules[r].head);
    while (!queue.empty()) {
      const AtomId a = queue.back();
      queue.pop_back();
      for (auto r : watchers[a]) {
        if (!active[r] || rules[r].stratum != s) continue;
        if (stats) ++stats->propagations;
        if (--missing[r] == 0) derive(rules[r].head);
      }
    }
  }

  std::vector<AtomId> ids;
  std::vector<GroundAtom> atoms;
  for (std::size_t i = 0; i < n_atoms; ++i) {
    if (!truth[i]) continue;
    ids.push_back(static_cast<AtomId>(i));
    atoms.push_back(program.atom(static_cast<AtomId>(i)));
  }
  return AnswerSet(std::move(ids), std::move(atoms));
}

bool check_stability(const GroundProgram& program, std::span<const AtomId> candidate) {
  const std::size_t n_atoms = program.atom_count();
  std::vector<bool> in_candidate(n_atoms, false);
  for (auto a : candidate) {
    if (a >= n_atoms) return false;
    in_candidate[a] = true;
  }

  // Reduct: drop rules whose negative body meets the candidate, strip the rest.
  std::vector<const GroundRule*> reduct;
  for (const auto& rule : program.rules()) {
    const bool dropped =
        std::any_of(rule.negative.begin(), rule.negative.end(), [&](AtomId a) { return in_candidate[a]; });
    if (!dropped) reduct.push_back(&rule);
  }

  // Least model by naive iteration to a fixpoint.
  std::vector<bool> model(n_atoms, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto* rule : reduct) {
      if (model[rule->head]) continue;
      if (std::all_of(rule->positive.begin(), rule->positive.end(), [&](AtomId a) { return model[a]; })) {
        model[rule->head] = true;
        changed = true;
      }
    }
  }
  return model == in_candidate;
}

}  // namespace phishrev::nmr
