#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "setcat/map_class.hpp"

using namespace setcat;

namespace {

const Scope& sc3() {
  static const Scope s(3, 3);
  return s;
}

const Scope& sc2() {
  static const Scope s(2, 2);
  return s;
}

FinObj obj(const std::string& id, std::initializer_list<int> xs) {
  std::vector<Atom> elems;
  for (int x : xs) elems.push_back(Atom::integer(x));
  return FinObj::make(id, std::move(elems));
}

FinMap map_of(const FinObj& d, const FinObj& c,
              std::initializer_list<std::size_t> table) {
  return FinMap::make(d, c, std::vector<std::size_t>(table));
}

Status axiom_status(const MapClass& cls, const Scope& sc,
                    const std::string& id) {
  return check_axiom(cls, sc, id).status;
}

}  // namespace

TEST_CASE("class spec parsing") {
  CHECK(MapClass::parse("all").kind() == MapClass::Kind::AllMaps);
  CHECK(MapClass::parse("fiber:2").bound() == 2);
  CHECK(MapClass::parse("monos").kind() == MapClass::Kind::Monos);
  CHECK(MapClass::parse("isos").kind() == MapClass::Kind::Isos);
  CHECK(MapClass::parse("projfiber:1,2").sizes() ==
        std::vector<std::size_t>{1, 2});
  MapClass c = MapClass::parse("covered(fiber:1)");
  CHECK(c.kind() == MapClass::Kind::Covered);
  CHECK(c.base().bound() == 1);
  CHECK(c.str() == "covered(fiber:1)");
  CHECK(MapClass::parse(" covered( projfiber:2 ) ").str() ==
        "covered(projfiber:2)");
  CHECK_THROWS_AS(MapClass::parse("fiber:x"), CategoryError);
  CHECK_THROWS_AS(MapClass::parse("projfiber:"), CategoryError);
  CHECK_THROWS_AS(MapClass::parse("small"), CategoryError);
}

TEST_CASE("fiber-bound classes satisfy the small-map axioms") {
  // the bound must dominate the scope's object size, or composition escapes
  for (const auto& rep :
       check_axioms(MapClass::fiber_bound(3), sc3(), small_map_axioms())) {
    INFO(rep.axiom, ": ", rep.detail);
    CHECK(rep.status == Status::Pass);
  }
  for (const auto& rep :
       check_axioms(MapClass::fiber_bound(2), sc2(), small_map_axioms())) {
    INFO(rep.axiom, ": ", rep.detail);
    CHECK(rep.status == Status::Pass);
  }
  // existential axiom carries a witness
  AxiomReport a7 = check_axiom(MapClass::fiber_bound(3), sc3(), "A7");
  CHECK(a7.witness.has_value());

  // with the bound below the scope size, composition escapes: 3 -> 2 -> 1
  AxiomReport a5 = check_axiom(MapClass::fiber_bound(2), sc3(), "A5");
  REQUIRE(a5.status == Status::Fail);
  REQUIRE(a5.counterexample.has_value());
  for (const auto& [name, m] : a5.counterexample->maps)
    if (name == "gf") CHECK(m.max_fiber_size() == 3);
}

TEST_CASE("isos fail finiteness with the fold map") {
  AxiomReport rep = check_axiom(MapClass::isos(), sc3(), "A4");
  REQUIRE(rep.status == Status::Fail);
  REQUIRE(rep.counterexample.has_value());
  bool fold_listed = false;
  for (const auto& [name, f] : rep.counterexample->maps)
    if (name == "1+1->1") fold_listed = true;
  CHECK(fold_listed);
}

TEST_CASE("monos fail exactly A4") {
  MapClass m = MapClass::monos();
  for (const auto& id : small_map_axioms()) {
    Status st = axiom_status(m, sc3(), id);
    if (id == "A4")
      CHECK(st == Status::Fail);
    else {
      INFO(id);
      CHECK(st == Status::Pass);
    }
  }
}

TEST_CASE("mono axiom M") {
  CHECK(axiom_status(MapClass::all(), sc3(), "M") == Status::Pass);
  CHECK(axiom_status(MapClass::fiber_bound(1), sc3(), "M") == Status::Pass);
  CHECK(axiom_status(MapClass::isos(), sc3(), "M") == Status::Fail);
}

TEST_CASE("scov closure computations") {
  // FiberBound(k)^cov = FiberBound(k). Small bounds fail the display-axiom
  // precondition on this scope (A4 for k=1, A5 for k=2), so the closure
  // membership is exercised directly.
  CHECK_THROWS_AS(scov(MapClass::fiber_bound(1), sc3()), CategoryError);
  for (std::size_t k : {1u, 2u, 3u}) {
    MapClass base = MapClass::fiber_bound(k);
    MapClass closure = k == 3 ? scov(base, sc3()) : MapClass::covered(base);
    for (const auto& f : sc3().maps())
      CHECK(member_tri(closure, f, sc3()) == member_tri(base, f, sc3()));
  }

  // Isos^cov = Isos (via the membership semantics; Isos is not a display
  // class, 0->1 already fails A4, so the closure is taken unchecked)
  CHECK_THROWS_AS(scov(MapClass::isos(), sc3()), CategoryError);
  MapClass iso_cov = MapClass::covered(MapClass::isos());
  for (const auto& f : sc3().maps())
    CHECK(member_tri(iso_cov, f, sc3()) ==
          member_tri(MapClass::isos(), f, sc3()));

  // ProjFiber({1,2})^cov contains every map with all fiber sizes in {1,2}
  MapClass pf_cov = MapClass::covered(MapClass::proj_fiber({1, 2}));
  for (const auto& f : sc3().maps()) {
    bool all_small = true;
    for (std::size_t j = 0; j < f.cod().size(); ++j)
      if (f.fiber_size(j) == 0 || f.fiber_size(j) > 2) all_small = false;
    if (all_small) {
      Membership m = member(pf_cov, f, sc3());
      INFO(f.str(), " : ", m.detail);
      CHECK(m.verdict == Tri::Yes);
      REQUIRE(m.witness.has_value());
      CHECK(is_covering_square(*m.witness).covering);
      CHECK(m.witness->right() == f);
    }
  }
  // and nothing with a fiber of size 3 or an empty fiber
  FinObj three = obj("T", {1, 2, 3});
  CHECK(member_tri(pf_cov, to_terminal(three), sc3()) == Tri::No);
  CHECK(member_tri(pf_cov, FinMap::make(initial_obj(), terminal_obj(), {}),
                   sc3()) == Tri::No);
}

TEST_CASE("scov is a closure and lands in small maps") {
  MapClass fb3 = MapClass::fiber_bound(3);
  MapClass once = scov(fb3, sc3());
  MapClass twice = MapClass::covered(once);
  for (const auto& f : sc3().maps())
    CHECK(member_tri(twice, f, sc3()) == member_tri(once, f, sc3()));
  for (const auto& rep : check_axioms(once, sc3(), small_map_axioms())) {
    INFO(rep.axiom, ": ", rep.detail);
    CHECK(rep.status == Status::Pass);
  }
}

TEST_CASE("local fullness") {
  CHECK(axiom_status(MapClass::fiber_bound(3), sc3(), "L3") == Status::Pass);
  CHECK(axiom_status(MapClass::monos(), sc3(), "L3") == Status::Pass);

  // the one-directional composition-triangle lemma holds for any bound:
  // gf in the class forces f in the class
  MapClass fb2 = MapClass::fiber_bound(2);
  for (const auto& g : sc3().maps()) {
    if (member_tri(fb2, g, sc3()) != Tri::Yes) continue;
    for (const auto& z : sc3().objects())
      for (const auto& f : all_maps(z, g.dom()))
        if (member_tri(fb2, compose(g, f), sc3()) == Tri::Yes)
          CHECK(member_tri(fb2, f, sc3()) == Tri::Yes);
  }
}

TEST_CASE("representability") {
  Representation pi2 = fiber_bound_representation(2);
  CHECK(pi2.pi.dom().size() == 3);
  CHECK(pi2.pi.cod().size() == 3);
  AxiomReport ok = check_representation(pi2, MapClass::fiber_bound(2), sc3());
  INFO(ok.detail);
  CHECK(ok.status == Status::Pass);
  CHECK(ok.witness.has_value());

  Representation id1{FinMap::identity(terminal_obj())};
  CHECK(check_representation(id1, MapClass::isos(), sc3()).status ==
        Status::Pass);

  Representation pi1 = fiber_bound_representation(1);
  AxiomReport bad = check_representation(pi1, MapClass::fiber_bound(2), sc3());
  CHECK(bad.status == Status::Fail);
  CHECK(bad.counterexample.has_value());
}

TEST_CASE("universal small map") {
  Representation pi1 = fiber_bound_representation(1);
  Representation u1 = universal_small_map(pi1, MapClass::fiber_bound(1), sc2());
  CHECK(u1.pi.cod().size() == 2);  // (0,0,empty) and (1,1,identity graph)
  CHECK(u1.pi.dom().size() == 1);

  Representation pi2 = fiber_bound_representation(2);
  Representation u2 = universal_small_map(pi2, MapClass::fiber_bound(2), sc2());
  CHECK(u2.pi.cod().size() == 5);
  CHECK(u2.pi.dom().size() == 6);
  // fibers are quotients: sizes 0,1,1,2,2
  std::vector<std::size_t> sizes;
  for (std::size_t j = 0; j < u2.pi.cod().size(); ++j)
    sizes.push_back(u2.pi.fiber_size(j));
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{0, 1, 1, 2, 2});

  AxiomReport rep = check_universal(u2, MapClass::fiber_bound(2), sc2());
  INFO(rep.detail);
  CHECK(rep.status == Status::Pass);
  CHECK(rep.witness.has_value());

  CHECK_THROWS_AS(universal_small_map(pi1, MapClass::fiber_bound(2), sc2()),
                  CategoryError);
}

TEST_CASE("power class objects") {
  FinObj ab = obj("AB", {1, 2});
  PowerClass p1 = PowerClass::make(ab, MapClass::fiber_bound(1));
  CHECK(p1.object().size() == 3);
  PowerClass p0 = PowerClass::make(initial_obj(), MapClass::all());
  CHECK(p0.object().size() == 1);

  // classify: unique map making the membership square a pullback
  MapClass fb2 = MapClass::fiber_bound(2);
  for (const auto& x : sc2().objects())
    for (const auto& y : sc2().objects()) {
      PowerClass pc = PowerClass::make(x, fb2);
      FinObj xy = product(x, y).obj;
      for (const auto& r : all_subobjects(xy)) {
        // displayed iff every fiber over y has at most 2 elements
        std::vector<std::size_t> fib(y.size(), 0);
        for (std::size_t i = 0; i < xy.size(); ++i)
          if (r.has(i)) ++fib[*y.index_of(xy.at(i).second())];
        bool displayed = true;
        for (std::size_t n : fib)
          if (n > 2) displayed = false;
        if (!displayed) {
          CHECK_THROWS_AS(pc.classify(r, y), CategoryError);
          continue;
        }
        FinMap rho = pc.classify(r, y);
        std::size_t valid = 0;
        for (const auto& cand : all_maps(y, pc.object())) {
          // candidate classifies r iff (x,y) in r <=> x in cand(y)
          bool good = true;
          for (std::size_t i = 0; i < xy.size(); ++i) {
            const auto& mem = cand.apply(xy.at(i).second()).members();
            bool in = std::find(mem.begin(), mem.end(), xy.at(i).first()) !=
                      mem.end();
            if (in != r.has(i)) good = false;
          }
          if (good) {
            ++valid;
            CHECK(cand == rho);
          }
        }
        CHECK(valid == 1);
      }
    }
}

TEST_CASE("power class preserves covers") {
  for (const auto& f : sc3().maps()) {
    if (!f.is_surjective()) continue;
    CHECK(power_image(f, MapClass::all()).is_surjective());
    CHECK(power_image(f, MapClass::fiber_bound(2)).is_surjective());
  }
}

TEST_CASE("power class monad laws") {
  // mult needs the class closed under the unions involved, so the bound must
  // dominate |X|
  FinObj three = obj("T3", {1, 2, 3});
  CHECK_THROWS_AS(PowerClass::make(three, MapClass::fiber_bound(2)).mult(),
                  CategoryError);
  for (const auto& x : sc3().objects()) {
    MapClass cls = x.size() <= 2 ? MapClass::all() : MapClass::fiber_bound(3);
    PowerClass pc = PowerClass::make(x, cls);
    FinMap mult = pc.mult();
    PowerClass ppc = PowerClass::make(pc.object(), cls);
    // unit laws
    CHECK(compose(mult, ppc.unit()) == FinMap::identity(pc.object()));
    CHECK(compose(mult, power_image(pc.unit(), cls)) ==
          FinMap::identity(pc.object()));
    // associativity: the outer mult needs unions at the ps(X) level, which
    // only AllMaps admits
    if (cls.kind() == MapClass::Kind::AllMaps) {
      FinMap mult_outer = ppc.mult();
      CHECK(compose(mult, mult_outer) ==
            compose(mult, power_image(mult, cls)));
    }
  }
}

TEST_CASE("mvs enumeration") {
  FinObj b = obj("B", {1, 2, 3});  // x=1, y=2, z=3
  FinObj a = obj("A", {10, 11});
  FinMap phi = map_of(b, a, {0, 0, 1});
  auto mvss = mvs_enumerate(phi);
  REQUIRE(mvss.size() == 3);
  std::vector<std::vector<Atom>> expect = {
      {Atom::integer(1), Atom::integer(3)},
      {Atom::integer(2), Atom::integer(3)},
      {Atom::integer(1), Atom::integer(2), Atom::integer(3)},
  };
  for (const auto& want : expect) {
    bool found = false;
    for (const auto& p : mvss)
      if (p.atoms() == want) found = true;
    CHECK(found);
  }

  FinMap gap = map_of(obj("B1", {1}), a, {0});
  CHECK(mvs_enumerate(gap).empty());

  FinMap iso = map_of(b, obj("A3", {10, 11, 12}), {0, 1, 2});
  auto only = mvs_enumerate(iso);
  REQUIRE(only.size() == 1);
  CHECK(only[0] == Subobject::top(b));
}

TEST_CASE("fullness") {
  FinObj b = obj("B", {1, 2, 3});
  FinObj a = obj("A", {10, 11});
  FinMap phi = map_of(b, a, {0, 0, 1});
  FinMap over = to_terminal(a);

  AxiomReport rep =
      check_fullness(phi, over, MapClass::fiber_bound(3), sc2());
  INFO(rep.detail);
  REQUIRE(rep.status == Status::Pass);
  REQUIRE(rep.witness.has_value());
  for (const auto& [name, m] : rep.witness->maps)
    if (name == "y") CHECK(m.dom().size() == 2);  // the two minimal mvss

  // iso case
  FinMap iso = map_of(b, obj("A3", {10, 11, 12}), {0, 1, 2});
  AxiomReport iso_rep =
      check_fullness(iso, to_terminal(iso.cod()), MapClass::fiber_bound(3),
                     sc2());
  CHECK(iso_rep.status == Status::Pass);

  // empty fiber: no mvs exists, the generic condition is vacuous
  FinMap gap = map_of(obj("B1", {1}), a, {0});
  AxiomReport gap_rep =
      check_fullness(gap, over, MapClass::fiber_bound(3), sc2());
  CHECK(gap_rep.status == Status::Pass);
  for (const auto& [name, m] : gap_rep.witness->maps)
    if (name == "y") CHECK(m.dom().empty());
}

TEST_CASE("NE NS PiE PS reporting") {
  CHECK(axiom_status(MapClass::all(), sc3(), "NE") == Status::Pass);
  AxiomReport ne = check_axiom(MapClass::fiber_bound(2), sc3(), "NE");
  CHECK(ne.status == Status::Pass);
  CHECK(ne.detail.find("truncation") != std::string::npos);

  CHECK(axiom_status(MapClass::all(), sc3(), "NS") == Status::Pass);
  CHECK(axiom_status(MapClass::fiber_bound(3), sc3(), "NS") == Status::Pass);
  CHECK(axiom_status(MapClass::fiber_bound(2), sc3(), "NS") == Status::Fail);
  CHECK(axiom_status(MapClass::isos(), sc3(), "NS") == Status::Fail);

  CHECK(axiom_status(MapClass::fiber_bound(2), sc3(), "PiE") == Status::Pass);
  CHECK(axiom_status(MapClass::isos(), sc3(), "PiE") == Status::Pass);

  CHECK(axiom_status(MapClass::all(), sc3(), "PS") == Status::Pass);
  CHECK(axiom_status(MapClass::fiber_bound(2), sc3(), "PS") == Status::Fail);
  CHECK(axiom_status(MapClass::monos(), sc3(), "PS") == Status::OutOfScope);
}
