#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "setcat/atom.hpp"

namespace setcat {

class CategoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite object: a named, canonically sorted, duplicate-free list of atoms.
// Structural equality of the element list is set equality.
class FinObj {
 public:
  FinObj() = default;
  static FinObj make(std::string id, std::vector<Atom> elements);

  const std::string& id() const { return id_; }
  const std::vector<Atom>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Atom& at(std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const Atom& a) const;
  bool contains(const Atom& a) const { return index_of(a).has_value(); }

  friend bool operator==(const FinObj& a, const FinObj& b) {
    return a.elements_ == b.elements_;
  }

 private:
  std::string id_;
  std::vector<Atom> elements_;
};

// Canonical small objects.
FinObj initial_obj();
FinObj terminal_obj();
// The two-element object of bounded truth values, with bottom() < top().
FinObj truth_obj();
Atom truth_top();
Atom truth_bottom();

// A tabulated total function between finite objects.
class FinMap {
 public:
  FinMap() = default;
  // table[i] is the index in cod of the image of dom.at(i).
  static FinMap make(FinObj dom, FinObj cod, std::vector<std::size_t> table);
  // Builds the table by evaluating fn on each element of dom.
  static FinMap from_fn(FinObj dom, FinObj cod,
                        const std::function<Atom(const Atom&)>& fn);
  static FinMap identity(FinObj x);

  const FinObj& dom() const { return dom_; }
  const FinObj& cod() const { return cod_; }
  const std::vector<std::size_t>& table() const { return table_; }

  std::size_t apply_index(std::size_t i) const { return table_[i]; }
  Atom apply(const Atom& a) const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const { return is_injective() && is_surjective(); }

  // Indices in dom of the fiber over cod.at(j).
  std::vector<std::size_t> fiber(std::size_t j) const;
  std::size_t fiber_size(std::size_t j) const;
  std::size_t max_fiber_size() const;

  std::string str() const;

  friend bool operator==(const FinMap& a, const FinMap& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.table_ == b.table_;
  }

 private:
  FinObj dom_;
  FinObj cod_;
  std::vector<std::size_t> table_;
};

FinMap compose(const FinMap& g, const FinMap& f);  // g after f
FinMap to_terminal(const FinObj& x);

// Carrier subset of an ambient object, stored as a membership mask.
class Subobject {
 public:
  Subobject() = default;
  static Subobject of(FinObj ambient, std::vector<bool> mask);
  static Subobject from_atoms(FinObj ambient, const std::vector<Atom>& atoms);
  static Subobject top(FinObj ambient);
  static Subobject bottom(FinObj ambient);

  const FinObj& ambient() const { return ambient_; }
  const std::vector<bool>& mask() const { return mask_; }
  bool has(std::size_t i) const { return mask_[i]; }
  std::size_t count() const;
  std::vector<Atom> atoms() const;
  // Inclusion as a map from the carrier (a fresh object) into the ambient.
  FinMap inclusion() const;
  FinObj carrier() const;

  bool leq(const Subobject& other) const;

  friend bool operator==(const Subobject& a, const Subobject& b) {
    return a.ambient_ == b.ambient_ && a.mask_ == b.mask_;
  }

 private:
  FinObj ambient_;
  std::vector<bool> mask_;
};

// Commuting square: right . top == bottom . left, with corners
//   A --top--> B
//   |left      |right
//   C -bottom> D
class Square {
 public:
  static Square make(FinMap top, FinMap left, FinMap right, FinMap bottom);
  const FinMap& top() const { return top_; }
  const FinMap& left() const { return left_; }
  const FinMap& right() const { return right_; }
  const FinMap& bottom() const { return bottom_; }

 private:
  Square() = default;
  FinMap top_, left_, right_, bottom_;
};

struct PullbackResult {
  FinObj obj;                  // pairs (b, c) with f(b) = g(c)
  FinMap proj_first;           // to f.dom
  FinMap proj_second;          // to g.dom
};

PullbackResult pullback(const FinMap& f, const FinMap& g);

// Binary product, as the pullback over the terminal object.
PullbackResult product(const FinObj& x, const FinObj& y);

struct ImageFactorisation {
  FinMap cover;  // surjection onto the image carrier
  FinMap mono;   // inclusion of the canonical image subobject
  Subobject image;
};

ImageFactorisation image_factor(const FinMap& f);

// Subobject lattice operations and the adjoint triple along f : Y -> X.
Subobject sub_meet(const Subobject& a, const Subobject& b);
Subobject sub_join(const Subobject& a, const Subobject& b);
Subobject sub_implication(const Subobject& a, const Subobject& b);
Subobject sub_not(const Subobject& a);
Subobject pull_f(const FinMap& f, const Subobject& s);     // f^{-1}(S), S over cod
Subobject exists_f(const FinMap& f, const Subobject& s);   // f(S), S over dom
Subobject forall_f(const FinMap& f, const Subobject& s);   // {x : f^{-1}(x) <= S}

struct CoveringVerdict {
  bool quasi_pullback = false;
  bool covering = false;
  // Present when not a quasi-pullback: an element of the pullback of
  // (bottom, right) not hit by the comparison map.
  std::optional<Atom> missed;
};

CoveringVerdict is_covering_square(const Square& s);
bool is_pullback_square(const Square& s);

struct SumResult {
  FinObj obj;        // tagged disjoint union
  FinMap inj_first;  // X -> X + Y
  FinMap inj_second; // Y -> X + Y
};

SumResult sums(const FinObj& x, const FinObj& y);
FinMap copair(const SumResult& s, const FinMap& f, const FinMap& g);
FinMap sum_map(const FinMap& f, const FinMap& g);  // f + g

// Dependent product Pi_f(g) -> f.cod for g : E -> f.dom. The fiber over a
// is the set of sections of g over f^{-1}(a); elements are pairs
// (a, {(d, e), ...}).
FinMap pi_map(const FinMap& f, const FinMap& g);

// Exponential X^A as Pi along A -> 1; elements are set atoms of (a, x) pairs.
FinObj exponential(const FinObj& x, const FinObj& a);
// Evaluates a function-table atom at a point.
Atom eval_table(const Atom& table, const Atom& arg);

// The classifying map X x X -> truth_obj of the diagonal.
FinMap eq_classifier(const FinObj& x);

}  // namespace setcat
