#pragma once

#include <map>
#include <optional>
#include <vector>

#include "setcat/map_class.hpp"

namespace setcat {

// Branching signature f: B -> A with precomputed fibers B_a.
class PolySig {
 public:
  static PolySig from_map(FinMap f);
  // labels 1..n with the given branching arities
  static PolySig from_fiber_sizes(const std::vector<std::size_t>& sizes);

  const FinMap& map() const { return f_; }
  const FinObj& labels() const { return f_.cod(); }
  const FinObj& branches() const { return f_.dom(); }
  // indices into branches(), per label, in canonical order
  const std::vector<std::vector<std::size_t>>& fibers() const {
    return fibers_;
  }

 private:
  FinMap f_;
  std::vector<std::vector<std::size_t>> fibers_;
};

// P_f(X) = sum over a of X^{B_a}; elements are pairs (a, table).
FinObj poly_apply(const PolySig& sig, const FinObj& x);

using TreeId = std::size_t;

// Hash-consed well-founded trees over a signature. Structural equality is
// identity of ids.
class WStore {
 public:
  explicit WStore(PolySig sig) : sig_(std::move(sig)) {}

  const PolySig& sig() const { return sig_; }
  // children listed in the label's fiber order
  TreeId sup(std::size_t label, std::vector<TreeId> children);
  std::size_t label(TreeId t) const { return nodes_[t].label; }
  const std::vector<TreeId>& children(TreeId t) const {
    return nodes_[t].children;
  }
  std::size_t height(TreeId t) const { return nodes_[t].height; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    std::size_t label;
    std::vector<TreeId> children;
    std::size_t height;
  };
  PolySig sig_;
  std::vector<Node> nodes_;
  std::map<std::pair<std::size_t, std::vector<TreeId>>, TreeId> index_;
};

// All trees of height <= depth, sorted by id; the count obeys
// t(0) = #leaf labels, t(d+1) = sum over a of t(d)^{|B_a|}.
std::vector<TreeId> wtype_enum(WStore& store, std::size_t depth);

// Structural recursion: the unique value with
// fold(sup_a t) = algebra(a, b |-> fold(t b)). The algebra's domain must be
// poly_apply(sig, X) for the codomain X.
Atom fold(const WStore& store, const FinMap& algebra, TreeId w);

struct Closure {
  std::vector<TreeId> tc;  // w and all subtrees, deduplicated, sorted by id
  std::vector<TreeId> st;  // tc without w
};
Closure transitive_closure(const WStore& store, TreeId w);

// Relabelings for the labeled bisimulation: p on tree labels, q on branches.
struct BisimLabels {
  FinMap p;
  FinMap q;
};

struct BisimTable {
  std::vector<TreeId> left;   // tc of the first tree
  std::vector<TreeId> right;  // tc of the second tree
  std::vector<std::vector<bool>> table;
  bool top = false;  // entry at the pair of roots
};

// Plain form: roots match iff each child is bisimilar to some child on the
// other side, both ways. Labeled form additionally guards roots with p and
// child matching with q; the plain form is the labeled one with p constant
// and q constant.
BisimTable bisim_test(const WStore& store, TreeId w, TreeId w2,
                      const std::optional<BisimLabels>& labels = {});

// Collection span over a signature f: a covering square
//   D --q--> B
//   |g       |f      with p a cover, such that every cover of a g-fiber
//   C --p--> A       is refined by another g-fiber over the same label.
struct CollectionSpan {
  Square square;  // top q, left g, right f, bottom p
};

// The canonical span induced by a representation: C indexes pairs of a label
// and a surjection from some pi-fiber onto its branch set.
CollectionSpan collection_span_from(const Representation& pi,
                                    const PolySig& f);

// Rebuilds the trees of W_f from trees over the span's left leg g: coherent
// trees (same-q siblings carry bisimilar subtrees, q covering the branch set)
// are quotiented by the labeled bisimulation. Returns ids in target, sorted.
// Throws if the square is not covering or the span condition fails.
std::vector<TreeId> wtype_via_span(WStore& target, const CollectionSpan& span,
                                   std::size_t depth);

struct PPiResult {
  FinObj p_pi;  // sum over u of X^{E_u}, elements (u, table)
  FinMap tau;   // onto the power class object, by taking images
};

// The generic total object over a representation and its image-equality
// quotient map onto the power class of x.
PPiResult p_pi_quotient(const FinObj& x, const Representation& pi,
                        const MapClass& cls);

}  // namespace setcat
