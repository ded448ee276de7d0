#include "setcat/scope.hpp"

#include <string>

namespace setcat {

std::vector<FinMap> all_maps(const FinObj& dom, const FinObj& cod) {
  std::vector<FinMap> out;
  if (dom.empty()) {
    out.push_back(FinMap::make(dom, cod, {}));
    return out;
  }
  if (cod.empty()) return out;
  std::vector<std::size_t> table(dom.size(), 0);
  while (true) {
    out.push_back(FinMap::make(dom, cod, table));
    std::size_t i = 0;
    while (i < table.size()) {
      if (++table[i] < cod.size()) break;
      table[i] = 0;
      ++i;
    }
    if (i == table.size()) break;
  }
  return out;
}

std::vector<FinMap> all_covers(const FinObj& dom, const FinObj& cod) {
  std::vector<FinMap> out;
  for (auto& f : all_maps(dom, cod))
    if (f.is_surjective()) out.push_back(std::move(f));
  return out;
}

std::vector<Subobject> all_subobjects(const FinObj& ambient) {
  std::vector<Subobject> out;
  std::size_t n = ambient.size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = (bits >> i) & 1u;
    out.push_back(Subobject::of(ambient, std::move(mask)));
  }
  return out;
}

Scope::Scope(std::size_t atom_pool, std::size_t max_size)
    : atom_pool_(atom_pool), max_size_(max_size) {
  std::vector<Atom> pool;
  for (std::size_t i = 1; i <= atom_pool_; ++i)
    pool.push_back(Atom::integer(static_cast<int>(i)));
  for (std::size_t bits = 0; bits < (std::size_t{1} << atom_pool_); ++bits) {
    std::vector<Atom> elems;
    for (std::size_t i = 0; i < atom_pool_; ++i)
      if ((bits >> i) & 1u) elems.push_back(pool[i]);
    if (elems.size() > max_size_) continue;
    objects_.push_back(
        FinObj::make("S" + std::to_string(bits), std::move(elems)));
  }
  for (const auto& x : objects_)
    for (const auto& y : objects_)
      for (auto& f : all_maps(x, y)) maps_.push_back(std::move(f));
}

std::vector<FinMap> Scope::maps_between(const FinObj& dom,
                                        const FinObj& cod) const {
  std::vector<FinMap> out;
  for (const auto& f : maps_)
    if (f.dom() == dom && f.cod() == cod) out.push_back(f);
  return out;
}

std::vector<FinMap> Scope::maps_into(const FinObj& cod) const {
  std::vector<FinMap> out;
  for (const auto& f : maps_)
    if (f.cod() == cod) out.push_back(f);
  return out;
}

std::vector<FinMap> Scope::covers_onto(const FinObj& cod) const {
  std::vector<FinMap> out;
  for (const auto& f : maps_)
    if (f.cod() == cod && f.is_surjective()) out.push_back(f);
  return out;
}

}  // namespace setcat
