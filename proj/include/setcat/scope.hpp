#pragma once

#include <vector>

#include "setcat/category.hpp"

namespace setcat {

// The finite enumeration bound for universal quantification in property
// checks: all objects over a fixed atom pool with at most max_size elements,
// and all maps between them. Enumerations are cached and deterministic
// (lexicographic in the canonical atom order).
class Scope {
 public:
  explicit Scope(std::size_t atom_pool = 3, std::size_t max_size = 3);

  std::size_t atom_pool() const { return atom_pool_; }
  std::size_t max_size() const { return max_size_; }

  const std::vector<FinObj>& objects() const { return objects_; }
  const std::vector<FinMap>& maps() const { return maps_; }

  std::vector<FinMap> maps_between(const FinObj& dom, const FinObj& cod) const;
  // All maps in scope whose codomain is cod.
  std::vector<FinMap> maps_into(const FinObj& cod) const;
  // All surjections from scope objects onto cod.
  std::vector<FinMap> covers_onto(const FinObj& cod) const;

 private:
  std::size_t atom_pool_;
  std::size_t max_size_;
  std::vector<FinObj> objects_;
  std::vector<FinMap> maps_;
};

// All total maps dom -> cod, for arbitrary finite objects.
std::vector<FinMap> all_maps(const FinObj& dom, const FinObj& cod);
// All surjections dom ->> cod.
std::vector<FinMap> all_covers(const FinObj& dom, const FinObj& cod);
// All subobjects of an ambient object, in mask order.
std::vector<Subobject> all_subobjects(const FinObj& ambient);

}  // namespace setcat
