#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "phishrev/nmr.hpp"

namespace phishrev::nmr {

namespace {

PredicateSig sig_of(const Atom& a) { return {a.predicate, a.terms.size()}; }

void collect_vars(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.terms)
    if (const auto* v = std::get_if<Variable>(&t)) out.insert(v->name);
}

void check_safety(const Rule& r) {
  std::set<std::string> bound;
  for (const auto& a : r.positive) collect_vars(a, bound);
  auto check = [&](const Atom& a, std::string_view where) {
    for (const auto& t : a.terms) {
      const auto* v = std::get_if<Variable>(&t);
      if (v && !bound.contains(v->name))
        throw SafetyError(v->name, "line " + std::to_string(r.pos.line) + ": unsafe variable " + v->name + " in " +
                                       std::string(where) + " of rule '" + to_string(r) +
                                       "' (it must occur in a positive body atom)");
    }
  };
  check(r.head, "head");
  for (const auto& a : r.negative) check(a, "negative literal");
}

/// Shortest path from `from` to `to` along dependency edges, inclusive.
std::vector<PredicateSig> find_path(const std::vector<DependencyEdge>& edges, const PredicateSig& from,
                                    const PredicateSig& to) {
  std::map<PredicateSig, PredicateSig> parent;
  std::queue<PredicateSig> work;
  work.push(from);
  parent.emplace(from, from);
  while (!work.empty()) {
    auto at = work.front();
    work.pop();
    if (at == to) break;
    for (const auto& e : edges) {
      if (e.body == at && !parent.contains(e.head)) {
        parent.emplace(e.head, at);
        work.push(e.head);
      }
    }
  }
  if (!parent.contains(to)) return {};
  std::vector<PredicateSig> path{to};
  while (!(path.back() == from)) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Program::Program(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::set<PredicateSig> preds;
  std::set<DependencyEdge> edges;
  for (const auto& r : rules_) {
    check_safety(r);
    preds.insert(sig_of(r.head));
    for (const auto& a : r.positive) {
      preds.insert(sig_of(a));
      edges.insert({sig_of(a), sig_of(r.head), false});
    }
    for (const auto& a : r.negative) {
      preds.insert(sig_of(a));
      edges.insert({sig_of(a), sig_of(r.head), true});
    }
  }
  edges_.assign(edges.begin(), edges.end());

  // A negative edge body -> head lies on a cycle iff head reaches body.
  for (const auto& e : edges_) {
    if (!e.negative) continue;
    auto back = find_path(edges_, e.head, e.body);
    if (back.empty()) continue;
    std::vector<PredicateSig> cycle{e.body};
    cycle.insert(cycle.end(), back.begin(), back.end());
    std::string shown;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i != 0) shown += (i == 1 ? " -not-> " : " -> ");
      shown += cycle[i].to_string();
    }
    throw StratificationError(cycle, "program is not stratified: cycle through negation " + shown);
  }

  std::map<PredicateSig, std::size_t> stratum;
  for (const auto& p : preds) stratum[p] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges_) {
      const auto need = stratum[e.body] + (e.negative ? 1 : 0);
      if (stratum[e.head] < need) {
        stratum[e.head] = need;
        changed = true;
      }
    }
  }
  strata_.assign(stratum.begin(), stratum.end());
  stratum_count_ = 1;
  for (const auto& [p, s] : strata_) stratum_count_ = std::max(stratum_count_, s + 1);
}

std::size_t Program::stratum(const PredicateSig& sig) const {
  auto it = std::lower_bound(strata_.begin(), strata_.end(), sig,
                             [](const auto& entry, const PredicateSig& s) { return entry.first < s; });
  return it != strata_.end() && it->first == sig ? it->second : 0;
}

std::vector<PredicateSig> Program::predicates() const {
  std::vector<PredicateSig> out;
  for (const auto& [p, s] : strata_) out.push_back(p);
  return out;
}

}  // namespace phishrev::nmr
