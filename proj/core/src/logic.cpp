#include <algorithm>

#include "phishrev/nmr.hpp"

namespace phishrev::nmr {

std::string to_string(const Constant& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

namespace {

std::string term_string(const Term& t) {
  if (const auto* v = std::get_if<Variable>(&t)) return v->name;
  return to_string(std::get<Constant>(t));
}

}  // namespace

std::string GroundAtom::to_string() const {
  std::string out = predicate;
  if (!args.empty()) {
    out.push_back('(');
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i != 0) out.push_back(',');
      out += nmr::to_string(args[i]);
    }
    out.push_back(')');
  }
  return out;
}

std::string to_string(const Atom& atom) {
  std::string out = atom.predicate;
  if (!atom.terms.empty()) {
    out.push_back('(');
    for (std::size_t i = 0; i < atom.terms.size(); ++i) {
      if (i != 0) out.push_back(',');
      out += term_string(atom.terms[i]);
    }
    out.push_back(')');
  }
  return out;
}

std::string to_string(const Rule& rule) {
  std::string out = to_string(rule.head);
  if (!rule.is_fact()) {
    out += " :- ";
    bool first = true;
    for (const auto& a : rule.positive) {
      if (!first) out += ", ";
      out += to_string(a);
      first = false;
    }
    for (const auto& a : rule.negative) {
      if (!first) out += ", ";
      out += "not " + to_string(a);
      first = false;
    }
  }
  out.push_back('.');
  return out;
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : ProgramError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::optional<AtomId> GroundProgram::find(const GroundAtom& atom) const {
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), atom,
                             [](const auto& entry, const GroundAtom& a) { return entry.first < a; });
  if (it == lookup_.end() || it->first != atom) return std::nullopt;
  return it->second;
}

AnswerSet::AnswerSet(std::vector<AtomId> ids, std::vector<GroundAtom> atoms)
    : ids_(std::move(ids)), atoms_(std::move(atoms)) {
  std::sort(ids_.begin(), ids_.end());
  std::sort(atoms_.begin(), atoms_.end());
}

bool AnswerSet::contains(const GroundAtom& atom) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

std::vector<GroundAtom> AnswerSet::with_predicate(std::string_view name, std::size_t arity) const {
  std::vector<GroundAtom> out;
  for (const auto& a : atoms_)
    if (a.predicate == name && a.args.size() == arity) out.push_back(a);
  return out;
}

}  // namespace phishrev::nmr
