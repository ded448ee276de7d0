#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "setcat/map_class.hpp"

namespace setcat {

// Object of the exact completion: a finite set with an equivalence relation,
// stored as its canonical partition (blocks sorted, ordered by least element).
class ExObj {
 public:
  ExObj() = default;
  static ExObj discrete(FinObj base);
  // closes the listed pairs into an equivalence relation
  static ExObj from_pairs(FinObj base,
                          const std::vector<std::pair<Atom, Atom>>& rel);

  const FinObj& base() const { return base_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_of(std::size_t i) const { return block_of_[i]; }
  const std::vector<std::vector<std::size_t>>& blocks() const {
    return blocks_;
  }
  bool related(std::size_t i, std::size_t j) const {
    return block_of_[i] == block_of_[j];
  }

  // the partition as a finite object of set atoms, with the canonical cover
  FinObj class_object() const;
  FinMap class_cover() const;

  friend bool operator==(const ExObj& a, const ExObj& b) {
    return a.base_ == b.base_ && a.block_of_ == b.block_of_;
  }

 private:
  FinObj base_;
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<std::size_t>> blocks_;
};

using RelMatrix = std::vector<std::vector<bool>>;

struct RelVerdict {
  bool ok = true;
  std::string clause;  // totality | saturation | functionality
  std::vector<Atom> witness;
};

// Verdict on a raw relation as a candidate morphism src -> tgt: totality,
// saturation under both equivalence relations, functionality up to the
// target relation. Names the first violated clause with a witness tuple.
RelVerdict check_functional_relation(const RelMatrix& rel, const ExObj& src,
                                     const ExObj& tgt);

// Morphism of the completion: a saturated functional relation. Saturation is
// applied eagerly at construction; totality and functionality are enforced.
class ExMor {
 public:
  ExMor() = default;
  static ExMor make(ExObj src, ExObj tgt, RelMatrix rel);
  static ExMor from_fn(ExObj src, ExObj tgt,
                       const std::function<Atom(const Atom&)>& fn);

  const ExObj& src() const { return src_; }
  const ExObj& tgt() const { return tgt_; }
  const RelMatrix& rel() const { return rel_; }
  bool has(std::size_t i, std::size_t j) const { return rel_[i][j]; }

  // the induced map on partition blocks
  FinMap class_map() const;
  bool is_cover() const;
  bool is_mono() const;
  bool is_iso() const;

  friend bool operator==(const ExMor& a, const ExMor& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.rel_ == b.rel_;
  }

 private:
  ExObj src_, tgt_;
  RelMatrix rel_;
};

ExMor ex_identity(const ExObj& x);
ExMor ex_compose(const ExMor& g, const ExMor& f);  // g after f

ExObj embed_y(const FinObj& x);
ExMor embed_y(const FinMap& f);

// All morphisms between two objects of the completion.
std::vector<ExMor> ex_homs(const ExObj& src, const ExObj& tgt);
// All partitions of a finite object, i.e. all completion objects over it.
std::vector<ExObj> all_ex_objects(const FinObj& base);

// Smallest saturated subobject above s (union of touched blocks).
Subobject saturate(const ExObj& x, const Subobject& s);

struct SBar {
  MapClass base;
};

// Membership in the induced class of small maps of the completion: covered
// by some y(f) with f in the base class.
Membership sbar_member(const ExMor& m, const SBar& sbar, const Scope& scope);

struct QuotientResult {
  ExObj obj;
  ExMor cover;
};

// Quotient by a bounded equivalence relation, given as a saturated matrix on
// the base containing the object's own relation.
QuotientResult quotient(const ExObj& x, const RelMatrix& eq, const SBar& sbar,
                        const Scope& scope);

// Right adjoint to pulling back along g, computed as exists_p forall_yf q*
// over a covering square witnessing g in sbar. The input and output masks
// live over the base objects and are saturated.
Subobject heyting_forall_ex(const ExMor& g, const Subobject& sub,
                            const SBar& sbar, const Scope& scope);

// Whether the diagonal of x belongs to sbar.
bool is_separated(const ExObj& x, const SBar& sbar, const Scope& scope);

// Executable form of the completion theorem: y full and faithful, covering,
// bijective on subobjects; the sbar characterization; quotients of bounded
// equivalence relations; idempotence over an exact base.
std::vector<AxiomReport> completion_report(const Scope& scope,
                                           const MapClass& base_class);

}  // namespace setcat
