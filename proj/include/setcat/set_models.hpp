#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "setcat/wtypes.hpp"

namespace setcat {

// Hereditarily finite set: a handle into a process-wide hash-cons store.
// Children are canonically sorted and deduplicated, so equality is identity.
class HF {
 public:
  HF();  // the empty set
  static HF make(std::vector<HF> children);

  const std::vector<HF>& children() const;
  std::size_t rank() const;
  std::size_t id() const { return id_; }
  std::string str() const;  // braces notation

  friend bool operator==(HF a, HF b) { return a.id_ == b.id_; }
  // total order: rank, then child count, then lexicographic on children
  friend bool operator<(HF a, HF b);

 private:
  explicit HF(std::size_t id) : id_(id) {}
  std::size_t id_;
};

HF hf_empty();
HF hf_pair(HF x, HF y);
HF hf_singleton(HF x);
HF hf_union(HF x);
HF hf_succ(HF x);  // x union {x}
HF hf_kuratowski(HF x, HF y);
HF hf_parse(const std::string& text);

std::vector<HF> ext(HF v);
HF int_of(std::vector<HF> members);
bool eps(HF x, HF y);

// V_n: all sets of rank < n, sorted. universe(0) is empty.
std::vector<HF> universe(std::size_t n);

// Canonical forms of all trees over the representation's signature up to the
// given height: the finite stages of the initial power-class algebra.
std::vector<HF> build_v(const Representation& pi, std::size_t depth);

// Collapses a tree to a hereditarily finite set; identifies trees exactly
// when the plain bisimulation test does.
HF canonical_hf(const WStore& store, TreeId w);

// Formula language:
//   phi ::= eps(t, t) | eq(t, t) | t = t | phi and phi | phi or phi
//         | phi -> phi | not phi | forall v [in t] . phi
//         | exists v [in t] . phi
// with terms either variables or braces literals. Bounded formulas use only
// quantifiers with an "in" bound.
class Formula {
 public:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  const Node& node() const { return *root_; }
  std::shared_ptr<const Node> ptr() const { return root_; }

 private:
  std::shared_ptr<const Node> root_;
};

Formula parse_formula(const std::string& text);
std::string formula_str(const Formula& phi);
bool formula_bounded(const Formula& phi);
std::vector<std::string> free_variables(const Formula& phi);

using Env = std::map<std::string, HF>;

// Tarskian evaluation with unbounded quantifiers relativized to V_n.
bool eval_formula(const Formula& phi, const Env& env, std::size_t n);

struct AxiomInstanceReport {
  std::string axiom;
  Status status = Status::Pass;
  std::vector<HF> witnesses;
  std::string detail;
};

struct AxiomParams {
  std::optional<Formula> formula;
  std::vector<HF> sets;
};

// Names: extensionality, empty, pairing, union, set-induction(formula),
// bounded-separation(formula, a), strong-collection(formula, a), infinity,
// full-separation(formula, a), power-set(x), fullness(f).
AxiomInstanceReport check_set_axiom(const std::string& name, std::size_t n,
                                    const AxiomParams& params);

// Decodes f as a set of Kuratowski pairs b -> a and returns the set of
// inclusion-minimal multi-valued sections: every subset of the domain whose
// image is all of the range contains one of them.
HF fullness_set(HF f);

}  // namespace setcat
