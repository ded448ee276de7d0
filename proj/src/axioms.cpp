#include <algorithm>
#include <map>

#include "setcat/map_class.hpp"

namespace setcat {

namespace {

Diagram diag(std::vector<std::pair<std::string, FinMap>> maps,
             std::string note = "") {
  return Diagram{std::move(maps), std::move(note)};
}

struct Acc {
  AxiomReport rep;
  bool unknown = false;

  explicit Acc(std::string axiom) { rep.axiom = std::move(axiom); }
  bool failed() const { return rep.status == Status::Fail; }
  void fail(Diagram cex, std::string why) {
    if (failed()) return;
    rep.status = Status::Fail;
    rep.counterexample = std::move(cex);
    rep.detail = std::move(why);
  }
  void require(Tri v, const std::function<Diagram()>& cex, std::string why) {
    if (failed()) return;
    if (v == Tri::No) fail(cex(), std::move(why));
    if (v == Tri::Unknown) unknown = true;
  }
  AxiomReport finish(std::string ok = "") {
    if (!failed()) {
      if (unknown) {
        rep.status = Status::Inconclusive;
        if (rep.detail.empty())
          rep.detail = "membership inconclusive on some instance";
      } else {
        rep.status = Status::Pass;
        rep.detail = std::move(ok);
      }
    }
    return rep;
  }
};

std::vector<FinMap> members_in_scope(const MapClass& cls, const Scope& scope,
                                     bool* unknown_seen) {
  std::vector<FinMap> out;
  for (const auto& f : scope.maps()) {
    Tri v = member_tri(cls, f, scope);
    if (v == Tri::Yes) out.push_back(f);
    if (v == Tri::Unknown && unknown_seen) *unknown_seen = true;
  }
  return out;
}

FinMap diagonal(const FinObj& x) {
  FinObj xx = product(x, x).obj;
  return FinMap::from_fn(x, xx, [](const Atom& a) { return Atom::pair(a, a); });
}

// g with g.f = h, when h is constant on the fibers of the cover f.
std::optional<FinMap> quotient_through(const FinMap& f, const FinMap& h) {
  std::vector<std::size_t> table(f.cod().size(), 0);
  for (std::size_t j = 0; j < f.cod().size(); ++j) {
    auto fib = f.fiber(j);
    table[j] = h.apply_index(fib.front());
    for (std::size_t i : fib)
      if (h.apply_index(i) != table[j]) return std::nullopt;
  }
  return FinMap::make(f.cod(), h.cod(), table);
}

AxiomReport check_a1(const MapClass& cls, const Scope& scope,
                     const std::string& id) {
  Acc acc(id);
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    for (const auto& p : scope.maps_into(f.cod())) {
      auto pb = pullback(f, p);
      acc.require(member_tri(cls, pb.proj_second, scope),
                  [&] {
                    return diag({{"f", f}, {"p", p}, {"g", pb.proj_second}});
                  },
                  "pullback of a member along " + p.str() + " left the class");
      if (acc.failed()) return acc.finish();
    }
  }
  return acc.finish("stable under every pullback in scope");
}

AxiomReport check_a2(const MapClass& cls, const Scope& scope) {
  Acc acc("A2");
  for (const auto& f : scope.maps()) {
    Tri vf = member_tri(cls, f, scope);
    if (vf == Tri::Yes) continue;
    for (const auto& p : scope.covers_onto(f.cod())) {
      auto pb = pullback(f, p);
      Tri vg = member_tri(cls, pb.proj_second, scope);
      if (vg == Tri::Unknown || vf == Tri::Unknown) acc.unknown = true;
      if (vg == Tri::Yes && vf == Tri::No)
        acc.fail(diag({{"f", f}, {"p", p}, {"g", pb.proj_second}}),
                 "pullback along the cover " + p.str() +
                     " is a member but the original is not");
      if (acc.failed()) return acc.finish();
    }
  }
  return acc.finish("descends along every cover in scope");
}

AxiomReport check_a3(const MapClass& cls, const Scope& scope,
                     const std::string& id) {
  Acc acc(id);
  auto mem = members_in_scope(cls, scope, &acc.unknown);
  for (const auto& f : mem)
    for (const auto& g : mem) {
      FinMap s = sum_map(f, g);
      acc.require(member_tri(cls, s, scope),
                  [&] { return diag({{"f", f}, {"g", g}, {"f+g", s}}); },
                  "sum of two members left the class");
      if (acc.failed()) return acc.finish();
    }
  return acc.finish("closed under binary sums of members");
}

AxiomReport check_a4(const MapClass& cls, const Scope& scope) {
  Acc acc("A4");
  SumResult two = sums(terminal_obj(), terminal_obj());
  std::vector<std::pair<std::string, FinMap>> probes = {
      {"0->1", FinMap::make(initial_obj(), terminal_obj(), {})},
      {"1->1", FinMap::identity(terminal_obj())},
      {"1+1->1", to_terminal(two.obj)},
  };
  std::vector<std::pair<std::string, FinMap>> missing;
  for (const auto& [name, f] : probes) {
    Tri v = member_tri(cls, f, scope);
    if (v == Tri::No) missing.emplace_back(name, f);
    if (v == Tri::Unknown) acc.unknown = true;
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& [name, f] : missing) {
      if (!names.empty()) names += ", ";
      names += name;
    }
    acc.fail(diag(missing), "finiteness maps outside the class: " + names);
  }
  return acc.finish("0->1, 1->1 and 1+1->1 are members");
}

AxiomReport check_a5(const MapClass& cls, const Scope& scope) {
  Acc acc("A5");
  auto mem = members_in_scope(cls, scope, &acc.unknown);
  for (const auto& f : mem)
    for (const auto& g : mem) {
      if (!(g.dom() == f.cod())) continue;
      FinMap gf = compose(g, f);
      acc.require(member_tri(cls, gf, scope),
                  [&] { return diag({{"f", f}, {"g", g}, {"gf", gf}}); },
                  "composite of two members left the class");
      if (acc.failed()) return acc.finish();
    }
  return acc.finish("closed under composition");
}

AxiomReport check_a6(const MapClass& cls, const Scope& scope) {
  Acc acc("A6");
  for (const auto& h : members_in_scope(cls, scope, &acc.unknown)) {
    for (const auto& y : scope.objects())
      for (const auto& f : all_covers(h.dom(), y)) {
        auto g = quotient_through(f, h);
        if (!g) continue;
        acc.require(member_tri(cls, *g, scope),
                    [&] { return diag({{"h", h}, {"f", f}, {"g", *g}}); },
                    "quotient along the cover " + f.str() + " left the class");
        if (acc.failed()) return acc.finish();
      }
  }
  return acc.finish("closed under quotients along covers");
}

// Canonical collection square for f in S and a cover p onto f.dom: B indexes
// pairs (a, t) where t lifts the fiber inclusion X_a -> X through p.
struct CollectionSquare {
  FinMap g, h, top, ty;
};

std::optional<CollectionSquare> collection_square(const FinMap& f,
                                                  const FinMap& p) {
  const FinObj& x = f.dom();
  const FinObj& a_obj = f.cod();
  std::vector<Atom> b_elems;
  for (std::size_t ja = 0; ja < a_obj.size(); ++ja) {
    auto xa = f.fiber(ja);
    std::vector<std::vector<std::size_t>> choices;
    for (std::size_t ix : xa) {
      auto pre = p.fiber(ix);
      if (pre.empty()) return std::nullopt;
      choices.push_back(pre);
    }
    std::vector<std::size_t> pick(xa.size(), 0);
    while (true) {
      std::vector<Atom> graph;
      for (std::size_t i = 0; i < xa.size(); ++i)
        graph.push_back(
            Atom::pair(x.at(xa[i]), p.dom().at(choices[i][pick[i]])));
      b_elems.push_back(Atom::pair(a_obj.at(ja), Atom::set(std::move(graph))));
      std::size_t i = 0;
      while (i < pick.size()) {
        if (++pick[i] < choices[i].size()) break;
        pick[i] = 0;
        ++i;
      }
      if (i == pick.size()) break;
    }
  }
  FinObj b = FinObj::make("coll(" + f.str() + ")", std::move(b_elems));
  FinMap h = FinMap::from_fn(b, a_obj, [](const Atom& e) { return e.first(); });
  std::vector<Atom> z_elems;
  for (const auto& e : b.elements())
    for (const auto& pr : e.second().members())
      z_elems.push_back(Atom::pair(e, pr.first()));
  FinObj z = FinObj::make("zcoll", std::move(z_elems));
  FinMap g = FinMap::from_fn(z, b, [](const Atom& e) { return e.first(); });
  FinMap ty = FinMap::from_fn(z, p.dom(), [](const Atom& e) {
    return eval_table(e.first().second(), e.second());
  });
  FinMap top = compose(p, ty);
  return CollectionSquare{g, h, top, ty};
}

AxiomReport check_a7(const MapClass& cls, const Scope& scope) {
  Acc acc("A7");
  bool witnessed = false;
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    for (const auto& p : scope.covers_onto(f.dom())) {
      auto sq = collection_square(f, p);
      if (!sq) {
        acc.unknown = true;
        continue;
      }
      Square outer = Square::make(sq->top, sq->g, f, sq->h);
      if (!is_covering_square(outer).covering) {
        acc.unknown = true;
        continue;
      }
      Tri v = member_tri(cls, sq->g, scope);
      if (v != Tri::Yes) {
        // Existential: never report a failure without exhausting the search,
        // which the canonical square construction does not do.
        acc.unknown = true;
        acc.rep.detail = "canonical collection square for " + f.str() +
                         " along " + p.str() + " has a left leg outside the "
                         "class";
        continue;
      }
      if (!witnessed) {
        acc.rep.witness = diag(
            {{"f", f}, {"p", p}, {"g", sq->g}, {"h", sq->h}, {"ty", sq->ty}},
            "first collection square found");
        witnessed = true;
      }
    }
  }
  return acc.finish("collection squares found for every member and cover");
}

AxiomReport check_a8(const MapClass& cls, const Scope& scope) {
  Acc acc("A8");
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    for (const auto& s : all_subobjects(f.dom())) {
      Tri bounded = member_tri(cls, s.inclusion(), scope);
      if (bounded == Tri::Unknown) acc.unknown = true;
      if (bounded != Tri::Yes) continue;
      Subobject t = forall_f(f, s);
      acc.require(member_tri(cls, t.inclusion(), scope),
                  [&] {
                    return diag({{"f", f},
                                 {"S", s.inclusion()},
                                 {"forall_f(S)", t.inclusion()}});
                  },
                  "forall_f sent a bounded subobject to an unbounded one");
      if (acc.failed()) return acc.finish();
    }
  }
  return acc.finish("forall_f preserves bounded subobjects");
}

AxiomReport check_a9(const MapClass& cls, const Scope& scope) {
  Acc acc("A9");
  for (const auto& x : scope.objects()) {
    FinMap d = diagonal(x);
    acc.require(member_tri(cls, d, scope),
                [&] { return diag({{"diagonal", d}}); },
                "diagonal of " + x.id() + " is not a member");
    if (acc.failed()) return acc.finish();
  }
  return acc.finish("all diagonals in scope are members");
}

AxiomReport check_a10(const MapClass& cls, const Scope& scope) {
  Acc acc("A10");
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    auto fac = image_factor(f);
    acc.require(member_tri(cls, fac.mono, scope),
                [&] { return diag({{"f", f}, {"image mono", fac.mono}}); },
                "image inclusion of a member left the class");
    if (acc.failed()) return acc.finish();
  }
  return acc.finish("images of members are bounded");
}

AxiomReport check_l3(const MapClass& cls, const Scope& scope) {
  Acc acc("L3");
  for (const auto& g : members_in_scope(cls, scope, &acc.unknown)) {
    for (const auto& z : scope.objects())
      for (const auto& f : all_maps(z, g.dom())) {
        FinMap h = compose(g, f);
        Tri vf = member_tri(cls, f, scope);
        Tri vh = member_tri(cls, h, scope);
        if (vf == Tri::Unknown || vh == Tri::Unknown) acc.unknown = true;
        if ((vf == Tri::Yes && vh == Tri::No) ||
            (vf == Tri::No && vh == Tri::Yes))
          acc.fail(diag({{"f", f}, {"g", g}, {"h", h}}),
                   "local fullness broken over " + g.str());
        if (acc.failed()) return acc.finish();
      }
  }
  return acc.finish("f in S iff gf in S over every member g");
}

AxiomReport check_m(const MapClass& cls, const Scope& scope) {
  Acc acc("M");
  for (const auto& m : scope.maps()) {
    if (!m.is_injective()) continue;
    acc.require(member_tri(cls, m, scope),
                [&] { return diag({{"mono", m}}); },
                "a monomorphism in scope is not a member");
    if (acc.failed()) return acc.finish();
  }
  return acc.finish("all monomorphisms in scope are members");
}

FinObj truncated_n(std::size_t d) {
  std::vector<Atom> elems;
  for (std::size_t i = 0; i < d; ++i)
    elems.push_back(Atom::integer(static_cast<int>(i)));
  return FinObj::make("N" + std::to_string(d), std::move(elems));
}

AxiomReport check_ne(const Scope& scope) {
  AxiomReport rep;
  rep.axiom = "NE";
  std::size_t d = std::max<std::size_t>(scope.max_size(), 1);
  FinObj n = truncated_n(d);
  FinMap zero = FinMap::from_fn(terminal_obj(), n,
                                [](const Atom&) { return Atom::integer(0); });
  FinMap succ = FinMap::from_fn(n, n, [&](const Atom& a) {
    int v = a.value() + 1;
    return v < static_cast<int>(d) ? Atom::integer(v) : a;
  });
  rep.status = Status::Pass;
  rep.witness = diag({{"zero", zero}, {"succ", succ}},
                     "successor clamped at the truncation boundary");
  rep.detail = "holds at scope: the height-" + std::to_string(d) +
               " truncation of N exists; a genuine natural number object is "
               "infinite and no finite instance realizes one";
  return rep;
}

AxiomReport check_ns(const MapClass& cls, const Scope& scope) {
  AxiomReport rep;
  rep.axiom = "NS";
  std::size_t d = std::max<std::size_t>(scope.max_size(), 1);
  FinMap t = to_terminal(truncated_n(d));
  Membership m = member(cls, t, scope);
  if (m.verdict == Tri::Yes) {
    rep.status = Status::Pass;
    rep.witness = diag({{"N->1", t}});
    rep.detail = "holds at scope: the height-" + std::to_string(d) +
                 " truncation of N is small; N itself is infinite, so "
                 "absolute smallness fails in any finite instance";
  } else {
    rep.status = m.verdict == Tri::No ? Status::Fail : Status::Inconclusive;
    if (m.verdict == Tri::No) rep.counterexample = diag({{"N->1", t}});
    rep.detail = "fails absolutely: already the height-" + std::to_string(d) +
                 " truncation of N is not small (" + m.detail + ")";
  }
  return rep;
}

AxiomReport check_pie(const MapClass& cls, const Scope& scope) {
  Acc acc("PiE");
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    for (const auto& g : scope.maps_into(f.dom())) {
      FinMap pi = pi_map(f, g);
      for (std::size_t ja = 0; ja < f.cod().size(); ++ja) {
        std::size_t expect = 1;
        for (std::size_t ix : f.fiber(ja)) expect *= g.fiber_size(ix);
        if (pi.fiber_size(ja) != expect) {
          acc.fail(diag({{"f", f}, {"g", g}, {"pi", pi}}),
                   "fiber of Pi_f(g) over " + f.cod().at(ja).str() +
                       " has the wrong size");
          return acc.finish();
        }
        for (std::size_t is : pi.fiber(ja)) {
          const Atom& table = pi.dom().at(is).second();
          for (std::size_t ix : f.fiber(ja)) {
            Atom e = eval_table(table, f.dom().at(ix));
            if (!(g.apply(e) == f.dom().at(ix))) {
              acc.fail(diag({{"f", f}, {"g", g}, {"pi", pi}}),
                       "an element of Pi_f(g) is not a section of g");
              return acc.finish();
            }
          }
        }
      }
    }
  }
  return acc.finish("Pi_f(g) exists with section fibers for every member f");
}

AxiomReport check_ps(const MapClass& cls, const Scope& scope) {
  Acc acc("PS");
  if (cls.kind() == MapClass::Kind::AllMaps)
    return acc.finish("every map is small, so every power object is");
  if (cls.kind() != MapClass::Kind::FiberBound) {
    acc.rep.status = Status::OutOfScope;
    acc.rep.detail = "the PS checker ships for all and fiber:<k> only";
    return acc.rep;
  }
  std::size_t k = cls.bound();
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    for (std::size_t ja = 0; ja < f.cod().size(); ++ja) {
      std::size_t n = f.fiber_size(ja);
      std::size_t count = 0;
      for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        std::size_t sz = 0;
        for (std::size_t i = 0; i < n; ++i) sz += (bits >> i) & 1u;
        if (sz <= k) ++count;
      }
      if (count > k) {
        acc.fail(diag({{"f", f}},
                      "fiberwise power object over " + f.cod().at(ja).str() +
                          " has " + std::to_string(count) + " elements"),
                 "the fiberwise power class of a member is not small");
        return acc.finish();
      }
    }
  }
  return acc.finish("fiberwise power classes of members are small");
}

}  // namespace

AxiomReport check_axiom(const MapClass& cls, const Scope& scope,
                        const std::string& axiom) {
  if (axiom == "A1" || axiom == "L1") return check_a1(cls, scope, axiom);
  if (axiom == "A2") return check_a2(cls, scope);
  if (axiom == "A3" || axiom == "L2") return check_a3(cls, scope, axiom);
  if (axiom == "A4") return check_a4(cls, scope);
  if (axiom == "A5") return check_a5(cls, scope);
  if (axiom == "A6") return check_a6(cls, scope);
  if (axiom == "A7") return check_a7(cls, scope);
  if (axiom == "A8") return check_a8(cls, scope);
  if (axiom == "A9") return check_a9(cls, scope);
  if (axiom == "A10") return check_a10(cls, scope);
  if (axiom == "L3") return check_l3(cls, scope);
  if (axiom == "M") return check_m(cls, scope);
  if (axiom == "NE") return check_ne(scope);
  if (axiom == "NS") return check_ns(cls, scope);
  if (axiom == "PiE") return check_pie(cls, scope);
  if (axiom == "PS") return check_ps(cls, scope);
  throw CategoryError("unknown axiom id: " + axiom);
}

std::vector<AxiomReport> check_axioms(const MapClass& cls, const Scope& scope,
                                      const std::vector<std::string>& which) {
  std::vector<AxiomReport> out;
  for (const auto& id : which) out.push_back(check_axiom(cls, scope, id));
  return out;
}

const std::vector<std::string>& small_map_axioms() {
  static const std::vector<std::string> ids = {"A1", "A2", "A3", "A4", "A5",
                                               "A6", "A7", "A8", "A9"};
  return ids;
}

const std::vector<std::string>& display_map_axioms() {
  static const std::vector<std::string> ids = {"A1", "A3", "A4", "A5",
                                               "A7", "A8", "A9", "A10"};
  return ids;
}

Representation fiber_bound_representation(std::size_t k) {
  std::vector<Atom> u_elems, e_elems;
  for (std::size_t m = 0; m <= k; ++m) {
    u_elems.push_back(Atom::integer(static_cast<int>(m)));
    for (std::size_t i = 1; i <= m; ++i)
      e_elems.push_back(Atom::pair(Atom::integer(static_cast<int>(m)),
                                   Atom::integer(static_cast<int>(i))));
  }
  FinObj u = FinObj::make("U" + std::to_string(k), std::move(u_elems));
  FinObj e = FinObj::make("E" + std::to_string(k), std::move(e_elems));
  return Representation{
      FinMap::from_fn(e, u, [](const Atom& a) { return a.first(); })};
}

namespace {

// All surjections from the atoms in dom onto the atoms in cod, as graph sets.
std::vector<Atom> surjection_graphs(const std::vector<Atom>& dom,
                                    const std::vector<Atom>& cod) {
  std::vector<Atom> out;
  if (cod.empty()) {
    if (dom.empty()) out.push_back(Atom::set({}));
    return out;
  }
  if (dom.empty()) return out;
  std::vector<std::size_t> pick(dom.size(), 0);
  while (true) {
    std::vector<bool> hit(cod.size(), false);
    for (std::size_t v : pick) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) == hit.end()) {
      std::vector<Atom> graph;
      for (std::size_t i = 0; i < dom.size(); ++i)
        graph.push_back(Atom::pair(dom[i], cod[pick[i]]));
      out.push_back(Atom::set(std::move(graph)));
    }
    std::size_t i = 0;
    while (i < pick.size()) {
      if (++pick[i] < cod.size()) break;
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }
  return out;
}

std::vector<Atom> fiber_atoms(const FinMap& f, std::size_t j) {
  std::vector<Atom> out;
  for (std::size_t i : f.fiber(j)) out.push_back(f.dom().at(i));
  return out;
}

}  // namespace

AxiomReport check_representation(const Representation& pi, const MapClass& cls,
                                 const Scope& scope) {
  Acc acc("representation");
  Tri self = member_tri(cls, pi.pi, scope);
  if (self == Tri::No) {
    acc.fail(diag({{"pi", pi.pi}}), "pi itself is not a class member");
    return acc.finish();
  }
  if (self == Tri::Unknown) acc.unknown = true;
  const FinObj& u = pi.pi.cod();
  bool witnessed = false;
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    std::vector<Atom> b_elems;
    bool covered_all = true;
    std::size_t bad = 0;
    for (std::size_t jx = 0; jx < f.cod().size(); ++jx) {
      auto yx = fiber_atoms(f, jx);
      bool any = false;
      for (std::size_t ju = 0; ju < u.size(); ++ju) {
        for (const auto& h : surjection_graphs(fiber_atoms(pi.pi, ju), yx)) {
          b_elems.push_back(
              Atom::pair(f.cod().at(jx), Atom::pair(u.at(ju), h)));
          any = true;
        }
      }
      if (!any) {
        covered_all = false;
        bad = jx;
        break;
      }
    }
    if (!covered_all) {
      acc.fail(diag({{"f", f}}),
               "fiber over " + f.cod().at(bad).str() +
                   " is not a cover image of any fiber of pi");
      return acc.finish();
    }
    FinObj b = FinObj::make("rep(" + f.str() + ")", std::move(b_elems));
    FinMap p_x =
        FinMap::from_fn(b, f.cod(), [](const Atom& e) { return e.first(); });
    FinMap b_u = FinMap::from_fn(
        b, u, [](const Atom& e) { return e.second().first(); });
    auto pb = pullback(b_u, pi.pi);
    FinMap c = FinMap::from_fn(pb.obj, f.dom(), [](const Atom& e) {
      return eval_table(e.first().second().second(), e.second());
    });
    Square left_sq = Square::make(c, pb.proj_first, f, p_x);
    Square right_sq = Square::make(pb.proj_second, pb.proj_first, pi.pi, b_u);
    if (!is_covering_square(left_sq).covering) {
      acc.fail(diag({{"f", f}, {"b", p_x}}),
               "canonical left square is not covering");
      return acc.finish();
    }
    if (!is_pullback_square(right_sq)) {
      acc.fail(diag({{"f", f}, {"b", b_u}}),
               "canonical right square is not a pullback");
      return acc.finish();
    }
    if (!witnessed) {
      acc.rep.witness = diag({{"f", f},
                              {"bottom cover", p_x},
                              {"to U", b_u},
                              {"top cover", c},
                              {"to E", pb.proj_second}});
      witnessed = true;
    }
  }
  return acc.finish("every member in scope is covered by a pullback of pi");
}

Representation universal_small_map(const Representation& pi,
                                   const MapClass& cls, const Scope& scope) {
  if (check_representation(pi, cls, scope).status == Status::Fail)
    throw CategoryError("pi does not represent the class on this scope");
  if (check_axiom(cls, scope, "PiE").status == Status::Fail)
    throw CategoryError("class fails PiE on this scope");

  const FinObj& u = pi.pi.cod();
  std::vector<Atom> u_elems, e_elems;
  for (std::size_t ju = 0; ju < u.size(); ++ju) {
    auto eu = fiber_atoms(pi.pi, ju);
    std::vector<Atom> squares;
    for (const auto& a : eu)
      for (const auto& b : eu) squares.push_back(Atom::pair(a, b));
    for (std::size_t jv = 0; jv < u.size(); ++jv) {
      auto ev = fiber_atoms(pi.pi, jv);
      if (!ev.empty() && squares.empty()) continue;
      std::vector<std::size_t> pick(ev.size(), 0);
      while (true) {
        std::vector<Atom> image;
        std::vector<Atom> graph;
        for (std::size_t i = 0; i < ev.size(); ++i) {
          image.push_back(squares[pick[i]]);
          graph.push_back(Atom::pair(ev[i], squares[pick[i]]));
        }
        // keep only maps whose image is an equivalence relation on E_u
        auto related = [&](const Atom& a, const Atom& b) {
          Atom pr = Atom::pair(a, b);
          return std::find(image.begin(), image.end(), pr) != image.end();
        };
        bool ok = true;
        for (const auto& a : eu)
          if (!related(a, a)) ok = false;
        for (const auto& a : eu)
          for (const auto& b : eu)
            if (related(a, b) && !related(b, a)) ok = false;
        for (const auto& a : eu)
          for (const auto& b : eu)
            for (const auto& c : eu)
              if (related(a, b) && related(b, c) && !related(a, c)) ok = false;
        if (ok) {
          Atom key = Atom::pair(Atom::pair(u.at(ju), u.at(jv)),
                                Atom::set(std::move(graph)));
          u_elems.push_back(key);
          // quotient classes of E_u by the image relation
          std::vector<bool> done(eu.size(), false);
          for (std::size_t i = 0; i < eu.size(); ++i) {
            if (done[i]) continue;
            std::vector<Atom> block;
            for (std::size_t j = i; j < eu.size(); ++j)
              if (related(eu[i], eu[j])) {
                block.push_back(eu[j]);
                done[j] = true;
              }
            e_elems.push_back(Atom::pair(key, Atom::set(std::move(block))));
          }
        }
        if (ev.empty()) break;
        std::size_t i = 0;
        while (i < pick.size()) {
          if (++pick[i] < squares.size()) break;
          pick[i] = 0;
          ++i;
        }
        if (i == pick.size()) break;
      }
    }
  }
  FinObj u2 = FinObj::make("U'", std::move(u_elems));
  FinObj e2 = FinObj::make("E'", std::move(e_elems));
  return Representation{
      FinMap::from_fn(e2, u2, [](const Atom& a) { return a.first(); })};
}

AxiomReport check_universal(const Representation& pi_prime,
                            const MapClass& cls, const Scope& scope) {
  Acc acc("universal");
  const FinObj& u2 = pi_prime.pi.cod();
  bool witnessed = false;
  for (const auto& f : members_in_scope(cls, scope, &acc.unknown)) {
    std::vector<Atom> b_elems;
    bool covered_all = true;
    std::size_t bad = 0;
    for (std::size_t jx = 0; jx < f.cod().size(); ++jx) {
      auto yx = fiber_atoms(f, jx);
      bool any = false;
      for (std::size_t ju = 0; ju < u2.size(); ++ju) {
        auto eu = fiber_atoms(pi_prime.pi, ju);
        if (eu.size() != yx.size()) continue;
        // bijections E'_u -> Y_x are the injective surjection graphs
        for (const auto& h : surjection_graphs(eu, yx)) {
          b_elems.push_back(Atom::pair(f.cod().at(jx),
                                       Atom::pair(u2.at(ju), h)));
          any = true;
        }
      }
      if (!any) {
        covered_all = false;
        bad = jx;
        break;
      }
    }
    if (!covered_all) {
      acc.fail(diag({{"f", f}}),
               "no fiber of pi' is isomorphic to the fiber over " +
                   f.cod().at(bad).str());
      return acc.finish();
    }
    FinObj b = FinObj::make("uni(" + f.str() + ")", std::move(b_elems));
    FinMap n =
        FinMap::from_fn(b, f.cod(), [](const Atom& e) { return e.first(); });
    FinMap m = FinMap::from_fn(
        b, u2, [](const Atom& e) { return e.second().first(); });
    auto pb = pullback(n, f);
    FinMap t = FinMap::from_fn(pb.obj, pi_prime.pi.dom(), [&](const Atom& e) {
      const Atom& graph = e.first().second().second();
      for (const Atom& pr : graph.members())
        if (pr.second() == e.second()) return pr.first();
      throw CategoryError("bijection lookup failed");
    });
    Square left_sq = Square::make(pb.proj_second, pb.proj_first, f, n);
    Square right_sq = Square::make(t, pb.proj_first, pi_prime.pi, m);
    if (!n.is_surjective() || !is_pullback_square(left_sq) ||
        !is_pullback_square(right_sq)) {
      acc.fail(diag({{"f", f}, {"n", n}, {"m", m}}),
               "canonical double pullback over pi' failed verification");
      return acc.finish();
    }
    if (!witnessed) {
      acc.rep.witness =
          diag({{"f", f}, {"bottom cover", n}, {"to U'", m}, {"to E'", t}});
      witnessed = true;
    }
  }
  return acc.finish(
      "every member is a strict double pullback of pi' after a cover");
}

namespace {

// Minimal displayed mvss of phi restricted to the slice over one point of X,
// given the subsets of B-fiber indices.
std::vector<std::vector<std::size_t>> minimal_mvss(
    const FinMap& phi, const std::vector<std::size_t>& b_idx,
    const std::vector<std::size_t>& a_idx, const MapClass& cls,
    const Scope& scope) {
  std::vector<std::vector<std::size_t>> found;
  std::size_t n = b_idx.size();
  if (n > 20) throw CategoryError("fullness search budget exceeded");
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < n; ++i)
      if ((bits >> i) & 1u) sub.push_back(b_idx[i]);
    // must cover every a in the slice
    bool mvs = true;
    for (std::size_t ja : a_idx) {
      bool hit = false;
      for (std::size_t ib : sub)
        if (phi.apply_index(ib) == ja) hit = true;
      if (!hit) {
        mvs = false;
        break;
      }
    }
    if (!mvs) continue;
    // displayed: composite to A is a class member
    std::vector<Atom> sub_atoms;
    for (std::size_t ib : sub) sub_atoms.push_back(phi.dom().at(ib));
    FinObj carrier = FinObj::make("mvs", sub_atoms);
    FinMap comp = FinMap::from_fn(
        carrier, phi.cod(), [&](const Atom& a) { return phi.apply(a); });
    if (member_tri(cls, comp, scope) != Tri::Yes) continue;
    bool minimal = true;
    for (const auto& other : found) {
      if (std::includes(sub.begin(), sub.end(), other.begin(), other.end()))
        minimal = false;
    }
    if (minimal) found.push_back(std::move(sub));
  }
  return found;
}

}  // namespace

AxiomReport check_fullness(const FinMap& phi, const FinMap& a,
                           const MapClass& cls, const Scope& scope) {
  if (!(a.dom() == phi.cod()))
    throw CategoryError("phi and the indexing map do not compose");
  if (member_tri(cls, phi, scope) == Tri::No ||
      member_tri(cls, a, scope) == Tri::No)
    throw CategoryError("phi and its codomain map must belong to the class");

  Acc acc("F");
  const FinObj& x = a.cod();
  FinMap aphi = compose(a, phi);

  // canonical witness over q = id: Y indexes the minimal displayed mvss of
  // each slice of phi
  std::vector<Atom> y_elems;
  std::vector<std::vector<std::vector<std::size_t>>> per_x(x.size());
  for (std::size_t jx = 0; jx < x.size(); ++jx) {
    per_x[jx] = minimal_mvss(phi, aphi.fiber(jx), a.fiber(jx), cls, scope);
    for (const auto& m : per_x[jx]) {
      std::vector<Atom> atoms;
      for (std::size_t ib : m) atoms.push_back(phi.dom().at(ib));
      y_elems.push_back(Atom::pair(x.at(jx), Atom::set(std::move(atoms))));
    }
  }
  FinObj y_obj = FinObj::make("Y", std::move(y_elems));
  FinMap y =
      FinMap::from_fn(y_obj, x, [](const Atom& e) { return e.first(); });
  if (member_tri(cls, y, scope) != Tri::Yes) {
    acc.rep.status = Status::Inconclusive;
    acc.rep.detail =
        "canonical index of minimal mvss is not a class map; no fallback "
        "search is attempted";
    return acc.rep;
  }

  // P over Y: the tautological mvs, as a subobject of Y x_X B
  auto yb = pullback(y, aphi);
  auto ya = pullback(y, a);
  std::vector<bool> p_mask(yb.obj.size());
  for (std::size_t i = 0; i < yb.obj.size(); ++i) {
    const Atom& e = yb.obj.at(i);
    const auto& mem = e.first().second().members();
    p_mask[i] = std::find(mem.begin(), mem.end(), e.second()) != mem.end();
  }
  Subobject p = Subobject::of(yb.obj, std::move(p_mask));
  FinMap p_to_ya = FinMap::from_fn(
      p.carrier(), ya.obj, [&](const Atom& e) {
        return Atom::pair(e.first(), phi.apply(e.second()));
      });
  if (!p_to_ya.is_surjective() ||
      member_tri(cls, p_to_ya, scope) != Tri::Yes) {
    acc.rep.status = Status::Inconclusive;
    acc.rep.detail = "tautological mvs over Y is not displayed";
    return acc.rep;
  }

  // generic property against every z: Z -> X in scope and every displayed
  // mvs Q over Z
  std::vector<FinMap> zs = scope.maps_into(x);
  zs.push_back(FinMap::identity(x));
  for (const auto& z : zs) {
    auto zb = pullback(z, aphi);
    auto za = pullback(z, a);
    if (zb.obj.size() > 16) {
      acc.unknown = true;
      acc.rep.detail = "mvs enumeration over " + z.str() +
                       " exceeds the search budget";
      continue;
    }
    for (const auto& q : all_subobjects(zb.obj)) {
      // Q must be a displayed mvs of phi over Z
      std::vector<Atom> q_atoms = q.atoms();
      std::vector<bool> hit(za.obj.size(), false);
      for (const Atom& e : q_atoms) {
        auto j = za.obj.index_of(Atom::pair(e.first(), phi.apply(e.second())));
        if (j) hit[*j] = true;
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) continue;
      FinMap q_to_za = FinMap::from_fn(
          q.carrier(), za.obj, [&](const Atom& e) {
            return Atom::pair(e.first(), phi.apply(e.second()));
          });
      if (member_tri(cls, q_to_za, scope) != Tri::Yes) continue;
      // build U = {(zeta, m) : m a minimal mvs below the slice of Q}
      std::vector<Atom> u_elems;
      for (std::size_t iz = 0; iz < z.dom().size(); ++iz) {
        const Atom& zeta = z.dom().at(iz);
        auto jx = x.index_of(z.apply(zeta));
        std::vector<Atom> slice;
        for (const Atom& e : q_atoms)
          if (e.first() == zeta) slice.push_back(e.second());
        bool found = false;
        for (const auto& m : per_x[*jx]) {
          bool inside = true;
          for (std::size_t ib : m) {
            const Atom& want = phi.dom().at(ib);
            if (std::find(slice.begin(), slice.end(), want) == slice.end())
              inside = false;
          }
          if (!inside) continue;
          std::vector<Atom> atoms;
          for (std::size_t ib : m) atoms.push_back(phi.dom().at(ib));
          u_elems.push_back(
              Atom::pair(zeta, Atom::pair(x.at(*jx),
                                          Atom::set(std::move(atoms)))));
          found = true;
        }
        if (!found) {
          acc.fail(diag({{"z", z}, {"Q", q.inclusion()}}),
                   "a displayed mvs over " + z.str() +
                       " contains no minimal mvs of the matching slice");
          return acc.finish();
        }
      }
      FinObj u_obj = FinObj::make("Ugen", std::move(u_elems));
      FinMap l = FinMap::from_fn(u_obj, z.dom(),
                                 [](const Atom& e) { return e.first(); });
      FinMap k = FinMap::from_fn(u_obj, y_obj,
                                 [](const Atom& e) { return e.second(); });
      if (!l.is_surjective() || !(compose(y, k) == compose(z, l))) {
        acc.fail(diag({{"z", z}, {"l", l}, {"k", k}}),
                 "canonical comparison span failed verification");
        return acc.finish();
      }
    }
  }
  if (!acc.failed() && !acc.unknown)
    acc.rep.witness = diag({{"q", FinMap::identity(x)},
                            {"y", y},
                            {"P", p.inclusion()}},
                           "P is the tautological mvs over the index of "
                           "minimal displayed mvss");
  return acc.finish("generic displayed mvs found over the identity cover");
}

}  // namespace setcat
