#pragma once

// Embedded engine for stratified normal logic programs: parser, grounder,
// stratified fixpoint solver and a stable-model check.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace phishrev::nmr {

/// Integer or lowercase symbol. Integers order before symbols.
using Constant = std::variant<std::int64_t, std::string>;

std::string to_string(const Constant& c);

struct Variable {
  std::string name;
  auto operator<=>(const Variable&) const = default;
};

using Term = std::variant<Constant, Variable>;

struct Atom {
  std::string predicate;
  std::vector<Term> terms;
  auto operator<=>(const Atom&) const = default;
};

struct GroundAtom {
  std::string predicate;
  std::vector<Constant> args;

  auto operator<=>(const GroundAtom&) const = default;
  std::string to_string() const;  // p(a,1) or p
};

struct PredicateSig {
  std::string name;
  std::size_t arity = 0;
  auto operator<=>(const PredicateSig&) const = default;
  std::string to_string() const { return name + "/" + std::to_string(arity); }
};

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Rule {
  Atom head;
  std::vector<Atom> positive;
  std::vector<Atom> negative;  // under default negation
  SourcePos pos;

  bool is_fact() const { return positive.empty() && negative.empty(); }
};

std::string to_string(const Atom& atom);
std::string to_string(const Rule& rule);

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ProgramError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SafetyError : public ProgramError {
 public:
  SafetyError(std::string variable, const std::string& what)
      : ProgramError(what), variable_(std::move(variable)) {}
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

class StratificationError : public ProgramError {
 public:
  StratificationError(std::vector<PredicateSig> cycle, const std::string& what)
      : ProgramError(what), cycle_(std::move(cycle)) {}
  const std::vector<PredicateSig>& cycle() const { return cycle_; }

 private:
  std::vector<PredicateSig> cycle_;
};

class GroundingError : public ProgramError {
 public:
  using ProgramError::ProgramError;
};

struct DependencyEdge {
  PredicateSig body;
  PredicateSig head;
  bool negative = false;
  auto operator<=>(const DependencyEdge&) const = default;
};

/// A safe, stratified program. Construction validates both properties.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<DependencyEdge>& dependencies() const { return edges_; }
  /// Stratum of a predicate; predicates not mentioned by any rule are 0.
  std::size_t stratum(const PredicateSig& sig) const;
  std::size_t stratum_count() const { return stratum_count_; }
  std::vector<PredicateSig> predicates() const;

 private:
  std::vector<Rule> rules_;
  std::vector<DependencyEdge> edges_;
  std::vector<std::pair<PredicateSig, std::size_t>> strata_;  // sorted by signature
  std::size_t stratum_count_ = 0;
};

/// Grammar:
///   rule    := atom [ ":-" literal ("," literal)* ] "."
///   literal := ["not"] atom
///   atom    := ident [ "(" term ("," term)* ")" ]
///   term    := ident | Variable | [-]integer
/// `%` starts a comment that runs to end of line.
Program parse_program(std::string_view text);

// ---------------------------------------------------------------------------

using AtomId = std::uint32_t;

struct GroundRule {
  AtomId head = 0;
  std::vector<AtomId> positive;
  std::vector<AtomId> negative;
  std::size_t stratum = 0;
};

struct GroundingStats {
  std::size_t ground_rules = 0;
  std::size_t join_probes = 0;
  std::size_t rounds = 0;
};

class GroundProgram {
 public:
  std::size_t atom_count() const { return atoms_.size(); }
  const GroundAtom& atom(AtomId id) const { return atoms_[id]; }
  std::optional<AtomId> find(const GroundAtom& atom) const;
  std::size_t atom_stratum(AtomId id) const { return atom_strata_[id]; }
  const std::vector<GroundRule>& rules() const { return rules_; }
  std::size_t stratum_count() const { return stratum_count_; }

 private:
  friend class Grounder;
  std::vector<GroundAtom> atoms_;
  std::vector<std::size_t> atom_strata_;
  std::vector<std::pair<GroundAtom, AtomId>> lookup_;  // sorted by atom
  std::vector<GroundRule> rules_;
  std::size_t stratum_count_ = 1;
};

/// Instantiates `program` over `facts` plus the program's own facts. Only
/// substitutions whose positive body atoms are derivable (ignoring negation)
/// are produced; joins are semi-naive and indexed on predicate + first argument.
GroundProgram ground(const Program& program, std::span<const GroundAtom> facts = {},
                     GroundingStats* stats = nullptr);

struct SolveStats {
  std::size_t firings = 0;       // rule heads derived
  std::size_t propagations = 0;  // body-counter decrements
};

class AnswerSet {
 public:
  AnswerSet() = default;
  AnswerSet(std::vector<AtomId> ids, std::vector<GroundAtom> atoms);

  const std::vector<AtomId>& ids() const { return ids_; }
  const std::vector<GroundAtom>& atoms() const { return atoms_; }  // sorted
  std::size_t size() const { return atoms_.size(); }
  bool contains(const GroundAtom& atom) const;
  std::vector<GroundAtom> with_predicate(std::string_view name, std::size_t arity) const;

 private:
  std::vector<AtomId> ids_;
  std::vector<GroundAtom> atoms_;
};

/// Unique stable model, computed stratum by stratum.
AnswerSet solve(const GroundProgram& program, SolveStats* stats = nullptr);

/// True iff `candidate` equals the least model of the reduct of `program`
/// with respect to `candidate`.
bool check_stability(const GroundProgram& program, std::span<const AtomId> candidate);

}  // namespace phishrev::nmr
