#include "setcat/ex_reg.hpp"

#include <algorithm>
#include <numeric>

namespace setcat {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t i, std::size_t j) { parent[find(i)] = find(j); }
};

}  // namespace

ExObj ExObj::discrete(FinObj base) {
  return from_pairs(std::move(base), {});
}

ExObj ExObj::from_pairs(FinObj base,
                        const std::vector<std::pair<Atom, Atom>>& rel) {
  UnionFind uf(base.size());
  for (const auto& [a, b] : rel) {
    auto i = base.index_of(a);
    auto j = base.index_of(b);
    if (!i || !j) throw CategoryError("relation pair outside the base");
    uf.unite(*i, *j);
  }
  ExObj out;
  out.base_ = std::move(base);
  out.block_of_.assign(out.base_.size(), 0);
  std::vector<std::size_t> root_block(out.base_.size(), 0);
  std::vector<bool> seen(out.base_.size(), false);
  for (std::size_t i = 0; i < out.base_.size(); ++i) {
    std::size_t r = uf.find(i);
    if (!seen[r]) {
      seen[r] = true;
      root_block[r] = out.blocks_.size();
      out.blocks_.push_back({});
    }
    out.block_of_[i] = root_block[r];
    out.blocks_[root_block[r]].push_back(i);
  }
  return out;
}

FinObj ExObj::class_object() const {
  std::vector<Atom> classes;
  for (const auto& block : blocks_) {
    std::vector<Atom> members;
    for (std::size_t i : block) members.push_back(base_.at(i));
    classes.push_back(Atom::set(std::move(members)));
  }
  return FinObj::make(base_.id() + "/~", std::move(classes));
}

FinMap ExObj::class_cover() const {
  FinObj classes = class_object();
  return FinMap::from_fn(base_, classes, [&](const Atom& a) {
    std::vector<Atom> members;
    for (std::size_t i : blocks_[block_of_[*base_.index_of(a)]])
      members.push_back(base_.at(i));
    return Atom::set(std::move(members));
  });
}

RelVerdict check_functional_relation(const RelMatrix& rel, const ExObj& src,
                                     const ExObj& tgt) {
  std::size_t n = src.base().size();
  std::size_t m = tgt.base().size();
  for (std::size_t x = 0; x < n; ++x) {
    bool any = false;
    for (std::size_t y = 0; y < m; ++y)
      if (rel[x][y]) any = true;
    if (!any) return {false, "totality", {src.base().at(x)}};
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (!src.related(x, x2)) continue;
      for (std::size_t y = 0; y < m; ++y)
        if (rel[x][y] && !rel[x2][y])
          return {false,
                  "saturation",
                  {src.base().at(x), src.base().at(x2), tgt.base().at(y)}};
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (!rel[x][y]) continue;
      for (std::size_t y2 = 0; y2 < m; ++y2)
        if (tgt.related(y, y2) && !rel[x][y2])
          return {false,
                  "saturation",
                  {src.base().at(x), tgt.base().at(y), tgt.base().at(y2)}};
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (!rel[x][y]) continue;
      for (std::size_t y2 = 0; y2 < m; ++y2)
        if (rel[x][y2] && !tgt.related(y, y2))
          return {false,
                  "functionality",
                  {src.base().at(x), tgt.base().at(y), tgt.base().at(y2)}};
    }
  return {true, "", {}};
}

ExMor ExMor::make(ExObj src, ExObj tgt, RelMatrix rel) {
  std::size_t n = src.base().size();
  std::size_t m = tgt.base().size();
  if (rel.size() != n) throw CategoryError("relation has the wrong shape");
  for (const auto& row : rel)
    if (row.size() != m) throw CategoryError("relation has the wrong shape");
  // eager saturation under both equivalence relations
  RelMatrix sat(n, std::vector<bool>(m, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (!rel[x][y]) continue;
      for (std::size_t x2 = 0; x2 < n; ++x2) {
        if (!src.related(x, x2)) continue;
        for (std::size_t y2 = 0; y2 < m; ++y2)
          if (tgt.related(y, y2)) sat[x2][y2] = true;
      }
    }
  // totality and functionality up to the target relation
  for (std::size_t x = 0; x < n; ++x) {
    bool any = false;
    for (std::size_t y = 0; y < m; ++y)
      if (sat[x][y]) any = true;
    if (!any) throw CategoryError("relation is not total");
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t y2 = 0; y2 < m; ++y2)
        if (sat[x][y] && sat[x][y2] && !tgt.related(y, y2))
          throw CategoryError("relation is not functional");
  }
  ExMor out;
  out.src_ = std::move(src);
  out.tgt_ = std::move(tgt);
  out.rel_ = std::move(sat);
  return out;
}

ExMor ExMor::from_fn(ExObj src, ExObj tgt,
                     const std::function<Atom(const Atom&)>& fn) {
  std::size_t n = src.base().size();
  RelMatrix rel(n, std::vector<bool>(tgt.base().size(), false));
  for (std::size_t x = 0; x < n; ++x) {
    auto j = tgt.base().index_of(fn(src.base().at(x)));
    if (!j) throw CategoryError("value outside the target base");
    rel[x][*j] = true;
  }
  return make(std::move(src), std::move(tgt), std::move(rel));
}

FinMap ExMor::class_map() const {
  FinObj sc = src_.class_object();
  FinObj tc = tgt_.class_object();
  return FinMap::from_fn(sc, tc, [&](const Atom& block) {
    std::size_t x = *src_.base().index_of(block.members().front());
    for (std::size_t y = 0; y < tgt_.base().size(); ++y)
      if (rel_[x][y]) {
        std::vector<Atom> members;
        for (std::size_t i : tgt_.blocks()[tgt_.block_of(y)])
          members.push_back(tgt_.base().at(i));
        return Atom::set(std::move(members));
      }
    throw CategoryError("relation is not total");
  });
}

bool ExMor::is_cover() const { return class_map().is_surjective(); }
bool ExMor::is_mono() const { return class_map().is_injective(); }
bool ExMor::is_iso() const { return class_map().is_iso(); }

ExMor ex_identity(const ExObj& x) {
  std::size_t n = x.base().size();
  RelMatrix rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  return ExMor::make(x, x, std::move(rel));
}

ExMor ex_compose(const ExMor& g, const ExMor& f) {
  if (!(g.src() == f.tgt()))
    throw CategoryError("morphisms do not compose");
  std::size_t n = f.src().base().size();
  std::size_t k = f.tgt().base().size();
  std::size_t m = g.tgt().base().size();
  RelMatrix rel(n, std::vector<bool>(m, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < k; ++y) {
      if (!f.has(x, y)) continue;
      for (std::size_t z = 0; z < m; ++z)
        if (g.has(y, z)) rel[x][z] = true;
    }
  return ExMor::make(f.src(), g.tgt(), std::move(rel));
}

ExObj embed_y(const FinObj& x) { return ExObj::discrete(x); }

ExMor embed_y(const FinMap& f) {
  return ExMor::from_fn(ExObj::discrete(f.dom()), ExObj::discrete(f.cod()),
                        [&](const Atom& a) { return f.apply(a); });
}

std::vector<ExMor> ex_homs(const ExObj& src, const ExObj& tgt) {
  std::vector<ExMor> out;
  FinObj sc = src.class_object();
  FinObj tc = tgt.class_object();
  for (const auto& cm : all_maps(sc, tc)) {
    RelMatrix rel(src.base().size(),
                  std::vector<bool>(tgt.base().size(), false));
    for (std::size_t x = 0; x < src.base().size(); ++x) {
      std::vector<Atom> members;
      for (std::size_t i : src.blocks()[src.block_of(x)])
        members.push_back(src.base().at(i));
      Atom image = cm.apply(Atom::set(std::move(members)));
      for (const Atom& b : image.members())
        rel[x][*tgt.base().index_of(b)] = true;
    }
    out.push_back(ExMor::make(src, tgt, std::move(rel)));
  }
  return out;
}

std::vector<ExObj> all_ex_objects(const FinObj& base) {
  std::vector<ExObj> out;
  std::size_t n = base.size();
  std::vector<std::size_t> code(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                          std::size_t top) {
    if (i == n) {
      std::vector<std::pair<Atom, Atom>> pairs;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (code[a] == code[b]) pairs.emplace_back(base.at(a), base.at(b));
      out.push_back(ExObj::from_pairs(base, pairs));
      return;
    }
    for (std::size_t c = 0; c <= top; ++c) {
      code[i] = c;
      rec(i + 1, std::max(top, c + 1));
    }
  };
  rec(0, 0);
  return out;
}

Subobject saturate(const ExObj& x, const Subobject& s) {
  if (!(s.ambient() == x.base()))
    throw CategoryError("subobject lives over the wrong base");
  std::vector<bool> mask(x.base().size(), false);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (s.has(i))
      for (std::size_t j : x.blocks()[x.block_of(i)]) mask[j] = true;
  return Subobject::of(x.base(), std::move(mask));
}

Membership sbar_member(const ExMor& m, const SBar& sbar, const Scope& scope) {
  Membership inner =
      member(MapClass::covered(sbar.base), m.class_map(), scope);
  inner.detail = "on partition classes: " + inner.detail;
  return inner;
}

QuotientResult quotient(const ExObj& x, const RelMatrix& eq, const SBar& sbar,
                        const Scope& scope) {
  std::size_t n = x.base().size();
  if (eq.size() != n) throw CategoryError("relation has the wrong shape");
  for (std::size_t i = 0; i < n; ++i) {
    if (eq[i].size() != n) throw CategoryError("relation has the wrong shape");
    if (!eq[i][i]) throw CategoryError("not an equivalence relation");
    for (std::size_t j = 0; j < n; ++j) {
      if (eq[i][j] != eq[j][i])
        throw CategoryError("not an equivalence relation");
      for (std::size_t k = 0; k < n; ++k)
        if (eq[i][j] && eq[j][k] && !eq[i][k])
          throw CategoryError("not an equivalence relation");
      if (x.related(i, j) && !eq[i][j])
        throw CategoryError("relation does not contain the object's own");
    }
  }
  // boundedness: the projection of the relation onto classes must be small
  FinObj classes = x.class_object();
  FinObj square = product(classes, classes).obj;
  std::vector<bool> mask(square.size(), false);
  for (std::size_t s = 0; s < square.size(); ++s) {
    const Atom& pr = square.at(s);
    std::size_t i = *x.base().index_of(pr.first().members().front());
    std::size_t j = *x.base().index_of(pr.second().members().front());
    mask[s] = eq[i][j];
  }
  Subobject rel_sub = Subobject::of(square, std::move(mask));
  FinMap proj = FinMap::from_fn(rel_sub.carrier(), classes,
                                [](const Atom& a) { return a.first(); });
  Membership bounded = member(MapClass::covered(sbar.base), proj, scope);
  if (bounded.verdict != Tri::Yes)
    throw CategoryError("equivalence relation is not bounded: " +
                        bounded.detail);

  std::vector<std::pair<Atom, Atom>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (eq[i][j]) pairs.emplace_back(x.base().at(i), x.base().at(j));
  ExObj q = ExObj::from_pairs(x.base(), pairs);
  return {q, ExMor::make(x, q, eq)};
}

Subobject heyting_forall_ex(const ExMor& g, const Subobject& sub,
                            const SBar& sbar, const Scope& scope) {
  Subobject s = saturate(g.src(), sub);
  Membership mem = sbar_member(g, sbar, scope);
  if (mem.verdict != Tri::Yes || !mem.witness)
    throw CategoryError("no covering square found: " + mem.detail);
  const Square& sq = *mem.witness;  // right leg is the class map of g
  FinMap cm = sq.right();

  std::vector<bool> tmask(cm.dom().size(), false);
  for (std::size_t c = 0; c < cm.dom().size(); ++c) {
    std::size_t i = *g.src().base().index_of(cm.dom().at(c).members().front());
    tmask[c] = s.has(i);
  }
  Subobject t = Subobject::of(cm.dom(), std::move(tmask));

  Subobject pulled = pull_f(sq.top(), t);
  Subobject forall_left = forall_f(sq.left(), pulled);
  Subobject classes_out = exists_f(sq.bottom(), forall_left);

  // the square computation must agree with the direct right adjoint on
  // partition classes
  if (!(classes_out == forall_f(cm, t)))
    throw CategoryError("covering-square forall disagrees with the adjoint");

  std::vector<bool> out(g.tgt().base().size(), false);
  for (std::size_t y = 0; y < out.size(); ++y) {
    std::vector<Atom> members;
    for (std::size_t i : g.tgt().blocks()[g.tgt().block_of(y)])
      members.push_back(g.tgt().base().at(i));
    auto c = cm.cod().index_of(Atom::set(std::move(members)));
    out[y] = c && classes_out.has(*c);
  }
  return Subobject::of(g.tgt().base(), std::move(out));
}

bool is_separated(const ExObj& x, const SBar& sbar, const Scope& scope) {
  FinObj base2 = product(x.base(), x.base()).obj;
  std::vector<std::pair<Atom, Atom>> pairs;
  for (std::size_t i = 0; i < base2.size(); ++i)
    for (std::size_t j = i + 1; j < base2.size(); ++j) {
      const Atom& a = base2.at(i);
      const Atom& b = base2.at(j);
      if (x.related(*x.base().index_of(a.first()),
                    *x.base().index_of(b.first())) &&
          x.related(*x.base().index_of(a.second()),
                    *x.base().index_of(b.second())))
        pairs.emplace_back(a, b);
    }
  ExObj sq = ExObj::from_pairs(base2, pairs);
  ExMor diag = ExMor::from_fn(
      x, sq, [](const Atom& a) { return Atom::pair(a, a); });
  return sbar_member(diag, sbar, scope).verdict == Tri::Yes;
}

std::vector<AxiomReport> completion_report(const Scope& scope,
                                           const MapClass& base_class) {
  std::vector<AxiomReport> out;
  SBar sbar{base_class};

  {
    AxiomReport rep;
    rep.axiom = "y-full-faithful";
    rep.status = Status::Pass;
    for (const auto& x : scope.objects())
      for (const auto& y : scope.objects()) {
        auto maps = all_maps(x, y);
        auto homs = ex_homs(embed_y(x), embed_y(y));
        bool distinct = true;
        for (std::size_t i = 0; i < maps.size() && distinct; ++i)
          for (std::size_t j = i + 1; j < maps.size(); ++j)
            if (embed_y(maps[i]) == embed_y(maps[j])) distinct = false;
        if (homs.size() != maps.size() || !distinct) {
          rep.status = Status::Fail;
          rep.detail = "hom-sets between " + x.id() + " and " + y.id() +
                       " do not transfer bijectively";
        }
      }
    if (rep.status == Status::Pass)
      rep.detail = "hom-counts agree and y is injective on maps";
    out.push_back(rep);
  }

  {
    AxiomReport rep;
    rep.axiom = "y-covering";
    rep.status = Status::Pass;
    for (const auto& x : scope.objects())
      for (const auto& e : all_ex_objects(x)) {
        std::size_t n = x.size();
        RelMatrix rel(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) rel[i][j] = e.related(i, j);
        if (!ExMor::make(embed_y(x), e, rel).is_cover()) {
          rep.status = Status::Fail;
          rep.detail = "canonical map onto a partition of " + x.id() +
                       " is not a cover";
        }
      }
    if (rep.status == Status::Pass)
      rep.detail = "every partition object is covered by its discrete base";
    out.push_back(rep);
  }

  {
    AxiomReport rep;
    rep.axiom = "y-subobjects";
    rep.status = Status::Pass;
    for (const auto& x : scope.objects()) {
      // subobjects of yX are the saturated masks, which are all masks
      std::size_t count = 0;
      ExObj yx = embed_y(x);
      for (const auto& s : all_subobjects(x))
        if (saturate(yx, s) == s) ++count;
      if (count != (std::size_t{1} << x.size())) {
        rep.status = Status::Fail;
        rep.detail = "Sub(y" + x.id() + ") has " + std::to_string(count) +
                     " elements";
      }
    }
    if (rep.status == Status::Pass)
      rep.detail = "Sub(yX) = 2^|X| = Sub(X) throughout the scope";
    out.push_back(rep);
  }

  {
    AxiomReport rep;
    rep.axiom = "sbar-characterization";
    rep.status = Status::Pass;
    for (const auto& f : scope.maps()) {
      Tri in_base = member_tri(base_class, f, scope);
      Tri in_sbar = sbar_member(embed_y(f), sbar, scope).verdict;
      if (in_base == Tri::Yes && in_sbar != Tri::Yes) {
        rep.status = Status::Fail;
        rep.detail = "y(" + f.str() + ") escaped sbar";
      }
    }
    auto cap = base_class.fiber_cap();
    for (const auto& x : scope.objects())
      for (const auto& e : all_ex_objects(x)) {
        std::size_t n = x.size();
        RelMatrix rel(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) rel[i][j] = e.related(i, j);
        ExMor cover = ExMor::make(embed_y(x), e, rel);
        std::size_t largest = 0;
        for (const auto& block : e.blocks())
          largest = std::max(largest, block.size());
        Tri got = sbar_member(cover, sbar, scope).verdict;
        if (cap && got != (largest <= *cap ? Tri::Yes : Tri::No)) {
          rep.status = Status::Fail;
          rep.detail = "quotient cover of " + x.id() +
                       " misclassified against the fiber bound";
        }
      }
    if (rep.status == Status::Pass)
      rep.detail =
          "sbar agrees with the base class on embedded maps and on quotient "
          "covers";
    out.push_back(rep);
  }

  {
    AxiomReport rep;
    rep.axiom = "bounded-quotients";
    rep.status = Status::Pass;
    auto cap = base_class.fiber_cap();
    for (const auto& x : scope.objects())
      for (const auto& e : all_ex_objects(x)) {
        std::size_t n = x.size();
        RelMatrix eq(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) eq[i][j] = e.related(i, j);
        std::size_t largest = 0;
        for (const auto& block : e.blocks())
          largest = std::max(largest, block.size());
        if (cap && largest > *cap) continue;
        auto q = quotient(embed_y(x), eq, sbar, scope);
        bool kernel_ok = true;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (q.cover.has(i, j) != static_cast<bool>(eq[i][j]))
              kernel_ok = false;
        if (!q.cover.is_cover() || !kernel_ok || !(q.obj == e)) {
          rep.status = Status::Fail;
          rep.detail = "quotient of a bounded relation on " + x.id() +
                       " failed verification";
        }
      }
    if (rep.status == Status::Pass)
      rep.detail =
          "every bounded equivalence relation in scope has an exact quotient";
    out.push_back(rep);
  }

  {
    AxiomReport rep;
    rep.axiom = "idempotence";
    rep.status = Status::Pass;
    for (const auto& x : scope.objects())
      for (const auto& e : all_ex_objects(x)) {
        ExObj yc = embed_y(e.class_object());
        ExMor comparison = ExMor::from_fn(e, yc, [&](const Atom& a) {
          std::vector<Atom> members;
          for (std::size_t i : e.blocks()[e.block_of(*x.index_of(a))])
            members.push_back(x.at(i));
          return Atom::set(std::move(members));
        });
        if (!comparison.is_iso()) {
          rep.status = Status::Fail;
          rep.detail = "a partition of " + x.id() +
                       " is not isomorphic to an embedded object";
        }
      }
    if (rep.status == Status::Pass)
      rep.detail =
          "the completion of the exact base is equivalent to the base (every "
          "object is isomorphic to an embedded one)";
    out.push_back(rep);
  }

  return out;
}

}  // namespace setcat
