#include <algorithm>
#include <map>
#include <unordered_map>

#include "phishrev/nmr.hpp"

namespace phishrev::nmr {

namespace {

using ConstId = std::uint32_t;
using PredId = std::uint32_t;

struct AtomKey {
  PredId pred = 0;
  std::vector<ConstId> args;
  bool operator==(const AtomKey&) const = default;
};

struct AtomKeyHash {
  std::size_t operator()(const AtomKey& k) const noexcept {
    std::size_t h = k.pred * 0x9E3779B97F4A7C15ULL;
    for (auto a : k.args) h = (h ^ a) * 0x100000001B3ULL + (h >> 29);
    return h;
  }
};

struct CompiledTerm {
  bool is_var = false;
  std::uint32_t value = 0;  // variable slot or constant id
};

struct CompiledAtom {
  PredId pred = 0;
  std::vector<CompiledTerm> terms;
};

struct CompiledRule {
  CompiledAtom head;
  std::vector<CompiledAtom> positive;
  std::vector<CompiledAtom> negative;
  std::size_t n_vars = 0;
  std::size_t stratum = 0;
};

struct Relation {
  std::vector<AtomId> members;
  std::unordered_map<ConstId, std::vector<std::uint32_t>> by_first;  // positions in members
  std::size_t stable = 0;    // [0, stable) seen in earlier rounds
  std::size_t frontier = 0;  // [stable, frontier) is this round's delta
};

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

}  // namespace

class Grounder {
 public:
  Grounder(const Program& program, std::span<const GroundAtom> facts, GroundingStats* stats)
      : program_(program), facts_(facts), stats_(stats) {}

  GroundProgram run() {
    check_arities();
    compile();
    seed();
    while (advance_round()) {
      for (const auto& rule : rules_) {
        if (rule.positive.empty()) continue;
        for (std::size_t i = 0; i < rule.positive.size(); ++i) {
          const auto& delta_rel = relations_[rule.positive[i].pred];
          if (delta_rel.frontier == delta_rel.stable) continue;
          order_.clear();
          order_.push_back(i);
          ranges_.assign(rule.positive.size(), {});
          for (std::size_t j = 0; j < rule.positive.size(); ++j) {
            const auto& rel = relations_[rule.positive[j].pred];
            if (j == i) ranges_[j] = {rel.stable, rel.frontier};
            else if (j < i) ranges_[j] = {0, rel.stable};
            else ranges_[j] = {0, rel.frontier};
            if (j != i) order_.push_back(j);
          }
          binding_.assign(rule.n_vars, 0);
          bound_.assign(rule.n_vars, false);
          matched_.assign(rule.positive.size(), 0);
          join(rule, 0);
        }
      }
    }
    return finish();
  }

 private:
  void check_arities() {
    std::map<std::string, std::size_t> fact_arity;
    for (const auto& f : facts_) fact_arity.emplace(f.predicate, f.args.size());
    auto check = [&](const Atom& a, const Rule& r) {
      auto it = fact_arity.find(a.predicate);
      if (it != fact_arity.end() && it->second != a.terms.size())
        throw GroundingError("arity mismatch: rule at line " + std::to_string(r.pos.line) + " uses " + a.predicate +
                             "/" + std::to_string(a.terms.size()) + " but facts provide " + a.predicate + "/" +
                             std::to_string(it->second));
    };
    for (const auto& r : program_.rules()) {
      check(r.head, r);
      for (const auto& a : r.positive) check(a, r);
      for (const auto& a : r.negative) check(a, r);
    }
  }

  ConstId intern(const Constant& c) {
    auto [it, inserted] = const_ids_.try_emplace(c, static_cast<ConstId>(consts_.size()));
    if (inserted) consts_.push_back(c);
    return it->second;
  }

  PredId intern(const PredicateSig& sig) {
    auto [it, inserted] = pred_ids_.try_emplace(sig, static_cast<PredId>(preds_.size()));
    if (inserted) {
      preds_.push_back(sig);
      pred_strata_.push_back(program_.stratum(sig));
      relations_.emplace_back();
    }
    return it->second;
  }

  CompiledAtom compile(const Atom& a, std::map<std::string, std::uint32_t>& slots) {
    CompiledAtom out;
    out.pred = intern(PredicateSig{a.predicate, a.terms.size()});
    for (const auto& t : a.terms) {
      if (const auto* v = std::get_if<Variable>(&t)) {
        auto [it, _] = slots.try_emplace(v->name, static_cast<std::uint32_t>(slots.size()));
        out.terms.push_back({true, it->second});
      } else {
        out.terms.push_back({false, intern(std::get<Constant>(t))});
      }
    }
    return out;
  }

  void compile() {
    for (const auto& r : program_.rules()) {
      if (r.is_fact()) continue;
      std::map<std::string, std::uint32_t> slots;
      CompiledRule c;
      for (const auto& a : r.positive) c.positive.push_back(compile(a, slots));
      c.head = compile(r.head, slots);
      for (const auto& a : r.negative) c.negative.push_back(compile(a, slots));
      c.n_vars = slots.size();
      c.stratum = program_.stratum(PredicateSig{r.head.predicate, r.head.terms.size()});
      rules_.push_back(std::move(c));
    }
  }

  AtomId intern_atom(AtomKey key) {
    auto [it, inserted] = atom_ids_.try_emplace(key, static_cast<AtomId>(atom_keys_.size()));
    if (inserted) {
      atom_keys_.push_back(std::move(key));
      derivable_.push_back(false);
    }
    return it->second;
  }

  /// Returns true when the atom was not derivable before.
  bool mark_derivable(AtomId id) {
    if (derivable_[id]) return false;
    derivable_[id] = true;
    const auto& key = atom_keys_[id];
    auto& rel = relations_[key.pred];
    const auto pos = static_cast<std::uint32_t>(rel.members.size());
    rel.members.push_back(id);
    if (!key.args.empty()) rel.by_first[key.args.front()].push_back(pos);
    return true;
  }

  void emit(AtomId head, std::vector<AtomId> positive, std::vector<AtomId> negative, std::size_t stratum) {
    out_rules_.push_back({head, std::move(positive), std::move(negative), stratum});
    if (stats_) ++stats_->ground_rules;
    mark_derivable(head);
  }

  void seed() {
    auto add_fact = [&](const GroundAtom& f) {
      AtomKey key;
      key.pred = intern(PredicateSig{f.predicate, f.args.size()});
      for (const auto& a : f.args) key.args.push_back(intern(a));
      const auto id = intern_atom(std::move(key));
      if (!derivable_[id]) emit(id, {}, {}, pred_strata_[atom_keys_[id].pred]);
    };
    for (const auto& f : facts_) add_fact(f);
    for (const auto& r : program_.rules()) {
      if (!r.is_fact()) continue;
      GroundAtom g{r.head.predicate, {}};
      for (const auto& t : r.head.terms) g.args.push_back(std::get<Constant>(t));
      add_fact(g);
    }
    // Rules with only negative literals are ground (safety) and fire once.
    for (const auto& rule : rules_) {
      if (!rule.positive.empty()) continue;
      binding_.clear();
      emit_instance(rule);
    }
  }

  bool advance_round() {
    bool any = false;
    for (auto& rel : relations_) {
      rel.stable = rel.frontier;
      rel.frontier = rel.members.size();
      any = any || rel.frontier > rel.stable;
    }
    if (any && stats_) ++stats_->rounds;
    return any;
  }

  AtomId instantiate(const CompiledAtom& a) {
    AtomKey key;
    key.pred = a.pred;
    key.args.reserve(a.terms.size());
    for (const auto& t : a.terms) key.args.push_back(t.is_var ? binding_[t.value] : t.value);
    return intern_atom(std::move(key));
  }

  void emit_instance(const CompiledRule& rule) {
    std::vector<AtomId> negative;
    negative.reserve(rule.negative.size());
    for (const auto& a : rule.negative) negative.push_back(instantiate(a));
    const AtomId head = instantiate(rule.head);
    emit(head, std::vector<AtomId>(matched_.begin(), matched_.begin() + static_cast<std::ptrdiff_t>(rule.positive.size())),
         std::move(negative), rule.stratum);
  }

  bool try_match(const CompiledAtom& a, AtomId id, std::vector<std::uint32_t>& newly_bound) {
    for (std::size_t j = 0; j < a.terms.size(); ++j) {
      const ConstId actual = atom_keys_[id].args[j];
      const auto& t = a.terms[j];
      if (!t.is_var) {
        if (actual != t.value) return false;
      } else if (bound_[t.value]) {
        if (binding_[t.value] != actual) return false;
      } else {
        bound_[t.value] = true;
        binding_[t.value] = actual;
        newly_bound.push_back(t.value);
      }
    }
    return true;
  }

  void join(const CompiledRule& rule, std::size_t depth) {
    if (depth == order_.size()) {
      emit_instance(rule);
      return;
    }
    const std::size_t body_index = order_[depth];
    const auto& a = rule.positive[body_index];
    const Range range = ranges_[body_index];
    const PredId pred = a.pred;

    std::optional<ConstId> first;
    if (!a.terms.empty()) {
      const auto& t = a.terms.front();
      if (!t.is_var) first = t.value;
      else if (bound_[t.value]) first = binding_[t.value];
    }

    std::vector<std::uint32_t> newly_bound;
    auto visit = [&](std::size_t position) {
      const AtomId id = relations_[pred].members[position];
      if (stats_) ++stats_->join_probes;
      newly_bound.clear();
      if (try_match(a, id, newly_bound)) {
        matched_[body_index] = id;
        std::vector<std::uint32_t> undo = newly_bound;
        join(rule, depth + 1);
        for (auto v : undo) bound_[v] = false;
      } else {
        for (auto v : newly_bound) bound_[v] = false;
      }
    };

    if (first) {
      auto it = relations_[pred].by_first.find(*first);
      if (it == relations_[pred].by_first.end()) return;
      const auto& positions = it->second;
      auto k = static_cast<std::size_t>(
          std::lower_bound(positions.begin(), positions.end(), static_cast<std::uint32_t>(range.lo)) -
          positions.begin());
      // Positions may be appended during recursion; re-index each step.
      for (; k < relations_[pred].by_first.find(*first)->second.size(); ++k) {
        const auto position = relations_[pred].by_first.find(*first)->second[k];
        if (position >= range.hi) break;
        visit(position);
      }
    } else {
      for (std::size_t position = range.lo; position < range.hi; ++position) visit(position);
    }
  }

  GroundProgram finish() {
    GroundProgram gp;
    gp.atoms_.reserve(atom_keys_.size());
    gp.atom_strata_.reserve(atom_keys_.size());
    for (const auto& key : atom_keys_) {
      GroundAtom g{preds_[key.pred].name, {}};
      g.args.reserve(key.args.size());
      for (auto c : key.args) g.args.push_back(consts_[c]);
      gp.atoms_.push_back(std::move(g));
      gp.atom_strata_.push_back(pred_strata_[key.pred]);
    }
    gp.lookup_.reserve(gp.atoms_.size());
    for (std::size_t i = 0; i < gp.atoms_.size(); ++i) gp.lookup_.emplace_back(gp.atoms_[i], static_cast<AtomId>(i));
    std::sort(gp.lookup_.begin(), gp.lookup_.end());
    gp.rules_ = std::move(out_rules_);
    gp.stratum_count_ = std::max<std::size_t>(1, program_.stratum_count());
    return gp;
  }

  const Program& program_;
  std::span<const GroundAtom> facts_;
  GroundingStats* stats_;

  std::map<Constant, ConstId> const_ids_;
  std::vector<Constant> consts_;
  std::map<PredicateSig, PredId> pred_ids_;
  std::vector<PredicateSig> preds_;
  std::vector<std::size_t> pred_strata_;
  std::vector<Relation> relations_;

  std::unordered_map<AtomKey, AtomId, AtomKeyHash> atom_ids_;
  std::vector<AtomKey> atom_keys_;
  std::vector<bool> derivable_;

  std::vector<CompiledRule> rules_;
  std::vector<GroundRule> out_rules_;

  std::vector<std::size_t> order_;
  std::vector<Range> ranges_;
  std::vector<ConstId> binding_;
  std::vector<bool> bound_;
  std::vector<AtomId> matched_;
};

GroundProgram ground(const Program& program, std::span<const GroundAtom> facts, GroundingStats* stats) {
  if (stats) *stats = {};
  return Grounder(program, facts, stats).run();
}

}  // namespace phishrev::nmr
