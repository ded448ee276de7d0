#include "setcat/category.hpp"

#include <algorithm>
#include <sstream>

namespace setcat {

FinObj FinObj::make(std::string id, std::vector<Atom> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  FinObj o;
  o.id_ = std::move(id);
  o.elements_ = std::move(elements);
  return o;
}

std::optional<std::size_t> FinObj::index_of(const Atom& a) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), a);
  if (it != elements_.end() && *it == a)
    return static_cast<std::size_t>(it - elements_.begin());
  return std::nullopt;
}

FinObj initial_obj() { return FinObj::make("0", {}); }

FinObj terminal_obj() { return FinObj::make("1", {Atom::integer(0, "*")}); }

FinObj truth_obj() {
  return FinObj::make("Omega_b", {truth_bottom(), truth_top()});
}

Atom truth_top() { return Atom::integer(1, "true"); }
Atom truth_bottom() { return Atom::integer(0, "false"); }

FinMap FinMap::make(FinObj dom, FinObj cod, std::vector<std::size_t> table) {
  if (table.size() != dom.size())
    throw CategoryError("map table not total on domain");
  for (auto j : table)
    if (j >= cod.size()) throw CategoryError("map table value outside codomain");
  FinMap f;
  f.dom_ = std::move(dom);
  f.cod_ = std::move(cod);
  f.table_ = std::move(table);
  return f;
}

FinMap FinMap::from_fn(FinObj dom, FinObj cod,
                       const std::function<Atom(const Atom&)>& fn) {
  std::vector<std::size_t> table;
  table.reserve(dom.size());
  for (const auto& a : dom.elements()) {
    auto j = cod.index_of(fn(a));
    if (!j) throw CategoryError("map value outside codomain");
    table.push_back(*j);
  }
  return make(std::move(dom), std::move(cod), std::move(table));
}

FinMap FinMap::identity(FinObj x) {
  std::vector<std::size_t> table(x.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
  FinObj cod = x;
  return make(std::move(x), std::move(cod), std::move(table));
}

Atom FinMap::apply(const Atom& a) const {
  auto i = dom_.index_of(a);
  if (!i) throw CategoryError("element outside domain");
  return cod_.at(table_[*i]);
}

bool FinMap::is_injective() const {
  std::vector<bool> seen(cod_.size(), false);
  for (auto j : table_) {
    if (seen[j]) return false;
    seen[j] = true;
  }
  return true;
}

bool FinMap::is_surjective() const {
  std::vector<bool> seen(cod_.size(), false);
  for (auto j : table_) seen[j] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::vector<std::size_t> FinMap::fiber(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] == j) out.push_back(i);
  return out;
}

std::size_t FinMap::fiber_size(std::size_t j) const {
  std::size_t n = 0;
  for (auto v : table_)
    if (v == j) ++n;
  return n;
}

std::size_t FinMap::max_fiber_size() const {
  std::vector<std::size_t> counts(cod_.size(), 0);
  for (auto v : table_) ++counts[v];
  return counts.empty() ? 0
                        : *std::max_element(counts.begin(), counts.end());
}

std::string FinMap::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out << ", ";
    out << dom_.at(i).str() << "->" << cod_.at(table_[i]).str();
  }
  out << ']';
  return out.str();
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (!(f.cod() == g.dom()))
    throw CategoryError("composition: codomain/domain mismatch");
  std::vector<std::size_t> table(f.dom().size());
  for (std::size_t i = 0; i < table.size(); ++i)
    table[i] = g.apply_index(f.apply_index(i));
  return FinMap::make(f.dom(), g.cod(), std::move(table));
}

FinMap to_terminal(const FinObj& x) {
  return FinMap::make(x, terminal_obj(),
                      std::vector<std::size_t>(x.size(), 0));
}

Subobject Subobject::of(FinObj ambient, std::vector<bool> mask) {
  if (mask.size() != ambient.size())
    throw CategoryError("subobject mask size mismatch");
  Subobject s;
  s.ambient_ = std::move(ambient);
  s.mask_ = std::move(mask);
  return s;
}

Subobject Subobject::from_atoms(FinObj ambient,
                                const std::vector<Atom>& atoms) {
  std::vector<bool> mask(ambient.size(), false);
  for (const auto& a : atoms) {
    auto i = ambient.index_of(a);
    if (!i) throw CategoryError("subobject atom outside ambient");
    mask[*i] = true;
  }
  return of(std::move(ambient), std::move(mask));
}

Subobject Subobject::top(FinObj ambient) {
  std::vector<bool> mask(ambient.size(), true);
  return of(std::move(ambient), std::move(mask));
}

Subobject Subobject::bottom(FinObj ambient) {
  std::vector<bool> mask(ambient.size(), false);
  return of(std::move(ambient), std::move(mask));
}

std::size_t Subobject::count() const {
  return static_cast<std::size_t>(
      std::count(mask_.begin(), mask_.end(), true));
}

std::vector<Atom> Subobject::atoms() const {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(ambient_.at(i));
  return out;
}

FinObj Subobject::carrier() const {
  return FinObj::make(ambient_.id() + "|sub", atoms());
}

FinMap Subobject::inclusion() const {
  FinObj c = carrier();
  return FinMap::from_fn(c, ambient_, [](const Atom& a) { return a; });
}

bool Subobject::leq(const Subobject& other) const {
  if (!(ambient_ == other.ambient_))
    throw CategoryError("subobject ambient mismatch");
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !other.mask_[i]) return false;
  return true;
}

Square Square::make(FinMap top, FinMap left, FinMap right, FinMap bottom) {
  if (!(top.dom() == left.dom()) || !(top.cod() == right.dom()) ||
      !(left.cod() == bottom.dom()) || !(right.cod() == bottom.cod()))
    throw CategoryError("square: boundary mismatch");
  if (!(compose(right, top) == compose(bottom, left)))
    throw CategoryError("square does not commute");
  Square s;
  s.top_ = std::move(top);
  s.left_ = std::move(left);
  s.right_ = std::move(right);
  s.bottom_ = std::move(bottom);
  return s;
}

PullbackResult pullback(const FinMap& f, const FinMap& g) {
  if (!(f.cod() == g.cod()))
    throw CategoryError("pullback: codomain mismatch");
  std::vector<Atom> elems;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (std::size_t j = 0; j < g.dom().size(); ++j)
      if (f.apply_index(i) == g.apply_index(j))
        elems.push_back(Atom::pair(f.dom().at(i), g.dom().at(j)));
  FinObj p = FinObj::make(f.dom().id() + "x_" + g.dom().id(), std::move(elems));
  FinMap p1 = FinMap::from_fn(p, f.dom(),
                              [](const Atom& a) { return a.first(); });
  FinMap p2 = FinMap::from_fn(p, g.dom(),
                              [](const Atom& a) { return a.second(); });
  return {std::move(p), std::move(p1), std::move(p2)};
}

PullbackResult product(const FinObj& x, const FinObj& y) {
  return pullback(to_terminal(x), to_terminal(y));
}

ImageFactorisation image_factor(const FinMap& f) {
  std::vector<bool> mask(f.cod().size(), false);
  for (auto j : f.table()) mask[j] = true;
  Subobject image = Subobject::of(f.cod(), std::move(mask));
  FinObj carrier = image.carrier();
  FinMap cover = FinMap::from_fn(f.dom(), carrier, [&](const Atom& a) {
    return f.apply(a);
  });
  return {std::move(cover), image.inclusion(), std::move(image)};
}

Subobject sub_meet(const Subobject& a, const Subobject& b) {
  if (!(a.ambient() == b.ambient()))
    throw CategoryError("subobject ambient mismatch");
  std::vector<bool> mask(a.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i)
    mask[i] = a.mask()[i] && b.mask()[i];
  return Subobject::of(a.ambient(), std::move(mask));
}

Subobject sub_join(const Subobject& a, const Subobject& b) {
  if (!(a.ambient() == b.ambient()))
    throw CategoryError("subobject ambient mismatch");
  std::vector<bool> mask(a.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i)
    mask[i] = a.mask()[i] || b.mask()[i];
  return Subobject::of(a.ambient(), std::move(mask));
}

Subobject sub_implication(const Subobject& a, const Subobject& b) {
  if (!(a.ambient() == b.ambient()))
    throw CategoryError("subobject ambient mismatch");
  std::vector<bool> mask(a.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i)
    mask[i] = !a.mask()[i] || b.mask()[i];
  return Subobject::of(a.ambient(), std::move(mask));
}

Subobject sub_not(const Subobject& a) {
  return sub_implication(a, Subobject::bottom(a.ambient()));
}

Subobject pull_f(const FinMap& f, const Subobject& s) {
  if (!(s.ambient() == f.cod()))
    throw CategoryError("pull_f: subobject not over codomain");
  std::vector<bool> mask(f.dom().size());
  for (std::size_t i = 0; i < mask.size(); ++i)
    mask[i] = s.mask()[f.apply_index(i)];
  return Subobject::of(f.dom(), std::move(mask));
}

Subobject exists_f(const FinMap& f, const Subobject& s) {
  if (!(s.ambient() == f.dom()))
    throw CategoryError("exists_f: subobject not over domain");
  std::vector<bool> mask(f.cod().size(), false);
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (s.mask()[i]) mask[f.apply_index(i)] = true;
  return Subobject::of(f.cod(), std::move(mask));
}

Subobject forall_f(const FinMap& f, const Subobject& s) {
  if (!(s.ambient() == f.dom()))
    throw CategoryError("forall_f: subobject not over domain");
  std::vector<bool> mask(f.cod().size(), true);
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (!s.mask()[i]) mask[f.apply_index(i)] = false;
  return Subobject::of(f.cod(), std::move(mask));
}

CoveringVerdict is_covering_square(const Square& s) {
  auto pb = pullback(s.bottom(), s.right());
  // Comparison A -> C x_D B sends a to (left(a), top(a)).
  std::vector<bool> hit(pb.obj.size(), false);
  for (std::size_t i = 0; i < s.top().dom().size(); ++i) {
    Atom target = Atom::pair(s.left().cod().at(s.left().apply_index(i)),
                             s.top().cod().at(s.top().apply_index(i)));
    auto j = pb.obj.index_of(target);
    if (j) hit[*j] = true;
  }
  CoveringVerdict v;
  v.quasi_pullback = true;
  for (std::size_t j = 0; j < hit.size(); ++j) {
    if (!hit[j]) {
      v.quasi_pullback = false;
      v.missed = pb.obj.at(j);
      break;
    }
  }
  v.covering = v.quasi_pullback && s.bottom().is_surjective();
  return v;
}

bool is_pullback_square(const Square& s) {
  auto pb = pullback(s.bottom(), s.right());
  if (pb.obj.size() != s.top().dom().size()) return false;
  std::vector<bool> hit(pb.obj.size(), false);
  for (std::size_t i = 0; i < s.top().dom().size(); ++i) {
    Atom target = Atom::pair(s.left().cod().at(s.left().apply_index(i)),
                             s.top().cod().at(s.top().apply_index(i)));
    auto j = pb.obj.index_of(target);
    if (!j || hit[*j]) return false;
    hit[*j] = true;
  }
  return true;
}

SumResult sums(const FinObj& x, const FinObj& y) {
  std::vector<Atom> elems;
  for (const auto& a : x.elements()) elems.push_back(Atom::tag(0, a));
  for (const auto& b : y.elements()) elems.push_back(Atom::tag(1, b));
  FinObj s = FinObj::make(x.id() + "+" + y.id(), std::move(elems));
  FinMap i0 =
      FinMap::from_fn(x, s, [](const Atom& a) { return Atom::tag(0, a); });
  FinMap i1 =
      FinMap::from_fn(y, s, [](const Atom& b) { return Atom::tag(1, b); });
  return {std::move(s), std::move(i0), std::move(i1)};
}

FinMap copair(const SumResult& s, const FinMap& f, const FinMap& g) {
  if (!(f.cod() == g.cod()))
    throw CategoryError("copair: codomain mismatch");
  return FinMap::from_fn(s.obj, f.cod(), [&](const Atom& a) {
    return a.tag_index() == 0 ? f.apply(a.payload()) : g.apply(a.payload());
  });
}

FinMap sum_map(const FinMap& f, const FinMap& g) {
  SumResult sd = sums(f.dom(), g.dom());
  SumResult sc = sums(f.cod(), g.cod());
  return FinMap::from_fn(sd.obj, sc.obj, [&](const Atom& a) {
    return a.tag_index() == 0 ? Atom::tag(0, f.apply(a.payload()))
                              : Atom::tag(1, g.apply(a.payload()));
  });
}

namespace {

// All total function tables from the index set `src` (atoms) into `choices`,
// where choices[i] lists the admissible images of src[i].
void enumerate_tables(const std::vector<Atom>& src,
                      const std::vector<std::vector<Atom>>& choices,
                      std::size_t pos, std::vector<Atom>& acc,
                      std::vector<Atom>& out) {
  if (pos == src.size()) {
    out.push_back(Atom::set(acc));
    return;
  }
  for (const auto& c : choices[pos]) {
    acc.push_back(Atom::pair(src[pos], c));
    enumerate_tables(src, choices, pos + 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

FinMap pi_map(const FinMap& f, const FinMap& g) {
  if (!(g.cod() == f.dom()))
    throw CategoryError("pi_map: g must land in f's domain");
  std::vector<Atom> elems;
  for (std::size_t a = 0; a < f.cod().size(); ++a) {
    std::vector<Atom> fiber_atoms;
    std::vector<std::vector<Atom>> choices;
    for (auto d : f.fiber(a)) {
      fiber_atoms.push_back(f.dom().at(d));
      std::vector<Atom> over;
      for (auto e : g.fiber(d)) over.push_back(g.dom().at(e));
      choices.push_back(std::move(over));
    }
    std::vector<Atom> tables;
    std::vector<Atom> acc;
    enumerate_tables(fiber_atoms, choices, 0, acc, tables);
    for (auto& t : tables)
      elems.push_back(Atom::pair(f.cod().at(a), std::move(t)));
  }
  FinObj pi = FinObj::make("Pi", std::move(elems));
  return FinMap::from_fn(pi, f.cod(),
                         [](const Atom& e) { return e.first(); });
}

FinObj exponential(const FinObj& x, const FinObj& a) {
  std::vector<std::vector<Atom>> choices(a.size(), x.elements());
  std::vector<Atom> tables;
  std::vector<Atom> acc;
  enumerate_tables(a.elements(), choices, 0, acc, tables);
  return FinObj::make(x.id() + "^" + a.id(), std::move(tables));
}

Atom eval_table(const Atom& table, const Atom& arg) {
  for (const auto& entry : table.members())
    if (entry.first() == arg) return entry.second();
  throw CategoryError("table has no entry for argument");
}

FinMap eq_classifier(const FinObj& x) {
  auto prod = product(x, x);
  return FinMap::from_fn(prod.obj, truth_obj(), [](const Atom& p) {
    return p.first() == p.second() ? truth_top() : truth_bottom();
  });
}

}  // namespace setcat
