#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "setcat/ex_reg.hpp"

using namespace setcat;

namespace {

FinObj ints(const std::string& id, std::initializer_list<int> xs) {
  std::vector<Atom> atoms;
  for (int x : xs) atoms.push_back(Atom::integer(x));
  return FinObj::make(id, std::move(atoms));
}

Atom I(int x) { return Atom::integer(x); }

RelMatrix graph_matrix(const FinMap& f) {
  RelMatrix rel(f.dom().size(), std::vector<bool>(f.cod().size(), false));
  for (std::size_t i = 0; i < f.dom().size(); ++i) rel[i][f.apply_index(i)] = true;
  return rel;
}

RelMatrix relation_matrix(const ExObj& e) {
  std::size_t n = e.base().size();
  RelMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = e.related(i, j);
  return m;
}

// componentwise product of completion objects
ExObj ex_product(const ExObj& a, const ExObj& b) {
  FinObj base = product(a.base(), b.base()).obj;
  std::vector<std::pair<Atom, Atom>> pairs;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      const Atom& p = base.at(i);
      const Atom& q = base.at(j);
      if (a.related(*a.base().index_of(p.first()), *a.base().index_of(q.first())) &&
          b.related(*b.base().index_of(p.second()), *b.base().index_of(q.second())))
        pairs.emplace_back(p, q);
    }
  return ExObj::from_pairs(base, pairs);
}

}  // namespace

TEST_CASE("embedding sends objects to discrete partitions") {
  FinObj x = ints("X", {1, 2});
  ExObj yx = embed_y(x);
  CHECK(yx.block_count() == 2);
  CHECK(yx.blocks()[0] == std::vector<std::size_t>{0});
  CHECK(yx.blocks()[1] == std::vector<std::size_t>{1});
  CHECK(yx == ExObj::discrete(x));

  FinObj e = initial_obj();
  CHECK(embed_y(e).block_count() == 0);
  CHECK(all_ex_objects(e).size() == 1);
}

TEST_CASE("embedding is a hom-set bijection on discrete objects") {
  Scope sc(3, 3);
  for (const auto& x : sc.objects())
    for (const auto& y : sc.objects()) {
      auto maps = all_maps(x, y);
      auto homs = ex_homs(embed_y(x), embed_y(y));
      CHECK(homs.size() == maps.size());
      for (const auto& f : maps) {
        ExMor yf = embed_y(f);
        CHECK(std::count(homs.begin(), homs.end(), yf) == 1);
      }
    }
}

TEST_CASE("embedding preserves sums") {
  FinObj x = ints("X", {1, 2});
  FinObj y = ints("Y", {1});
  SumResult s = sums(x, y);
  ExObj ys = embed_y(s.obj);
  CHECK(ys.block_count() == 3);
  // tagging keeps the partition discrete, so the sum is computed on bases
  CHECK(ys.base().size() == x.size() + y.size());
  CHECK(embed_y(s.inj_first).is_mono());
  CHECK(embed_y(s.inj_second).is_mono());
}

TEST_CASE("functional relation clauses and witnesses") {
  FinObj x = ints("X", {1, 2, 3});
  FinObj y = ints("Y", {1, 2});
  ExObj dx = ExObj::discrete(x);
  ExObj dy = ExObj::discrete(y);

  for (const auto& f : all_maps(x, y)) {
    RelVerdict v = check_functional_relation(graph_matrix(f), dx, dy);
    CHECK(v.ok);
  }

  RelMatrix empty(x.size(), std::vector<bool>(y.size(), false));
  RelVerdict v = check_functional_relation(empty, dx, dy);
  CHECK_FALSE(v.ok);
  CHECK(v.clause == "totality");
  CHECK(v.witness == std::vector<Atom>{I(1)});

  // glue 1,2 in the source; their values differ, so closure under the source
  // relation fails before anything else
  ExObj glued = ExObj::from_pairs(x, {{I(1), I(2)}});
  RelMatrix unsat(x.size(), std::vector<bool>(y.size(), false));
  unsat[0][0] = true;
  unsat[1][1] = true;
  unsat[2][1] = true;
  v = check_functional_relation(unsat, glued, dy);
  CHECK_FALSE(v.ok);
  CHECK(v.clause == "saturation");
  CHECK(v.witness == std::vector<Atom>{I(1), I(2), I(1)});

  // two unrelated values for one source element
  RelMatrix twoval = graph_matrix(all_maps(x, y).front());
  twoval[0][0] = true;
  twoval[0][1] = true;
  v = check_functional_relation(twoval, dx, dy);
  CHECK_FALSE(v.ok);
  CHECK(v.clause == "functionality");
  CHECK(v.witness.size() == 3);

  // many values are fine once they are all related in the target
  ExObj ty = ExObj::from_pairs(y, {{I(1), I(2)}});
  RelMatrix full(x.size(), std::vector<bool>(y.size(), true));
  CHECK(check_functional_relation(full, dx, ty).ok);
  CHECK_FALSE(check_functional_relation(full, dx, dy).ok);
}

TEST_CASE("morphisms saturate eagerly and validate") {
  FinObj x = ints("X", {1, 2, 3});
  ExObj glued = ExObj::from_pairs(x, {{I(1), I(2)}});
  ExObj dy = ExObj::discrete(ints("Y", {1, 2}));

  RelMatrix partial(3, std::vector<bool>(2, false));
  partial[0][0] = true;
  partial[2][1] = true;
  ExMor m = ExMor::make(glued, dy, partial);
  CHECK(m.has(1, 0));  // saturation filled the glued partner
  CHECK(check_functional_relation(m.rel(), glued, dy).ok);
  CHECK(m.class_map().apply(Atom::set({I(1), I(2)})) == Atom::set({I(1)}));

  RelMatrix gap(3, std::vector<bool>(2, false));
  gap[0][0] = true;
  CHECK_THROWS_AS(ExMor::make(glued, dy, gap), CategoryError);

  RelMatrix split(3, std::vector<bool>(2, false));
  split[0][0] = true;
  split[1][1] = true;
  split[2][0] = true;
  CHECK_THROWS_AS(ExMor::make(glued, dy, split), CategoryError);
}

TEST_CASE("composition is associative with embedded identities") {
  Scope sc(2, 2);
  std::vector<ExObj> objs;
  for (const auto& x : sc.objects())
    for (const auto& e : all_ex_objects(x)) objs.push_back(e);
  CHECK(objs.size() == 5);

  for (const auto& a : objs)
    for (const auto& b : objs) {
      auto fs = ex_homs(a, b);
      for (const auto& f : fs) {
        CHECK(ex_compose(f, ex_identity(a)) == f);
        CHECK(ex_compose(ex_identity(b), f) == f);
      }
      for (const auto& c : objs)
        for (const auto& d : objs)
          for (const auto& f : fs)
            for (const auto& g : ex_homs(b, c))
              for (const auto& h : ex_homs(c, d))
                CHECK(ex_compose(h, ex_compose(g, f)) ==
                      ex_compose(ex_compose(h, g), f));
    }
}

TEST_CASE("quotients of bounded equivalence relations") {
  Scope sc(3, 3);
  SBar sbar{MapClass::fiber_bound(3)};
  FinObj x = ints("X", {1, 2, 3});
  ExObj yx = embed_y(x);

  RelMatrix diag = relation_matrix(yx);
  QuotientResult same = quotient(yx, diag, sbar, sc);
  CHECK(same.obj == yx);
  CHECK(same.cover.is_iso());

  RelMatrix glue = diag;
  glue[0][1] = glue[1][0] = true;
  QuotientResult q = quotient(yx, glue, sbar, sc);
  CHECK(q.obj.block_count() == 2);
  CHECK(q.obj.blocks()[0] == std::vector<std::size_t>{0, 1});
  CHECK(q.obj.blocks()[1] == std::vector<std::size_t>{2});
  CHECK(q.cover.is_cover());
  // agrees with the plain finite-set quotient
  CHECK(q.obj.class_object().size() == 2);
  CHECK(q.cover.class_map().is_surjective());

  RelMatrix notrans = diag;
  notrans[0][1] = notrans[1][0] = true;
  notrans[1][2] = notrans[2][1] = true;
  CHECK_THROWS_AS(quotient(yx, notrans, sbar, sc), CategoryError);

  RelMatrix all3(3, std::vector<bool>(3, true));
  SBar tight{MapClass::fiber_bound(2)};
  CHECK_THROWS_AS(quotient(yx, all3, tight, sc), CategoryError);
  CHECK_NOTHROW(quotient(yx, glue, tight, sc));
}

TEST_CASE("quotient covers are stably exact on partition classes") {
  Scope sc(3, 3);
  SBar sbar{MapClass::fiber_bound(3)};
  FinObj x = ints("X", {1, 2, 3});
  ExObj yx = embed_y(x);
  RelMatrix glue = relation_matrix(yx);
  glue[0][1] = glue[1][0] = true;
  QuotientResult q = quotient(yx, glue, sbar, sc);
  FinMap cover = q.cover.class_map();

  for (const auto& z : sc.objects()) {
    if (z.size() > 2) continue;
    for (const auto& m : all_maps(z, cover.cod())) {
      PullbackResult pb = pullback(cover, m);
      CHECK(pb.proj_second.is_surjective());
      // the pulled-back kernel pair still identifies exactly the cover fibers
      PullbackResult kp = pullback(pb.proj_second, pb.proj_second);
      for (std::size_t i = 0; i < kp.obj.size(); ++i) {
        const Atom& a = kp.obj.at(i).first();
        const Atom& b = kp.obj.at(i).second();
        CHECK(cover.apply(a.first()) == cover.apply(b.first()));
      }
    }
  }
}

TEST_CASE("kernel pair and quotient round trip") {
  Scope sc(3, 3);
  SBar sbar{MapClass::fiber_bound(3)};
  FinObj x = ints("X", {1, 2, 3});
  FinObj y = ints("Y", {1, 2});
  for (const auto& f : all_covers(x, y)) {
    ExMor m = embed_y(f);
    std::size_t n = x.size();
    RelMatrix kernel(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t z = 0; z < y.size(); ++z)
          if (m.has(i, z) && m.has(j, z)) kernel[i][j] = true;
    QuotientResult q = quotient(m.src(), kernel, sbar, sc);
    CHECK(q.obj.block_count() == y.size());
    // the induced comparison to the image is an isomorphism
    ExMor induced = ExMor::make(q.obj, m.tgt(), m.rel());
    CHECK(induced.is_iso());
  }
}

TEST_CASE("small map membership in the completion") {
  Scope sc(3, 3);
  SBar fb2{MapClass::fiber_bound(2)};
  SBar fb3{MapClass::fiber_bound(3)};
  FinObj x = ints("X", {1, 2, 3});

  for (const auto& f : sc.maps()) {
    if (member_tri(fb2.base, f, sc) == Tri::Yes)
      CHECK(sbar_member(embed_y(f), fb2, sc).verdict == Tri::Yes);
  }

  ExObj yx = embed_y(x);
  RelMatrix glue = relation_matrix(yx);
  glue[0][1] = glue[1][0] = true;
  QuotientResult q = quotient(yx, glue, fb2, sc);
  CHECK(sbar_member(q.cover, fb2, sc).verdict == Tri::Yes);

  // a three-element fiber is an absolute obstruction against bound two
  ExMor collapse = ExMor::from_fn(yx, embed_y(ints("P", {1})),
                                  [](const Atom&) { return I(1); });
  Membership no = sbar_member(collapse, fb2, sc);
  CHECK(no.verdict == Tri::No);
  CHECK(no.detail.find("exceeding") != std::string::npos);
  CHECK(sbar_member(collapse, fb3, sc).verdict == Tri::Yes);
}

TEST_CASE("universal quantification along completion maps") {
  Scope sc(3, 3);
  SBar sbar{MapClass::fiber_bound(3)};
  FinObj x = ints("X", {1, 2, 3});
  FinObj y = ints("Y", {1, 2});

  for (const auto& f : all_maps(x, y)) {
    ExMor yf = embed_y(f);
    for (const auto& s : all_subobjects(x)) {
      Subobject got = heyting_forall_ex(yf, s, sbar, sc);
      CHECK(got == forall_f(f, s));
    }
  }

  ExObj yx = embed_y(x);
  RelMatrix glue = relation_matrix(yx);
  glue[0][1] = glue[1][0] = true;
  QuotientResult q = quotient(yx, glue, sbar, sc);
  // classes wholly inside the subobject survive
  Subobject third = Subobject::from_atoms(x, {I(3)});
  Subobject r = heyting_forall_ex(q.cover, third, sbar, sc);
  CHECK(r == Subobject::from_atoms(x, {I(3)}));
  Subobject partial = Subobject::from_atoms(x, {I(1), I(3)});
  CHECK(heyting_forall_ex(q.cover, partial, sbar, sc) ==
        Subobject::from_atoms(x, {I(3)}));
  CHECK(heyting_forall_ex(q.cover, Subobject::top(x), sbar, sc) ==
        Subobject::top(x));
}

TEST_CASE("saturation of subobjects") {
  FinObj x = ints("X", {1, 2, 3});
  ExObj glued = ExObj::from_pairs(x, {{I(1), I(2)}});
  Subobject s = Subobject::from_atoms(x, {I(1)});
  CHECK(saturate(glued, s) == Subobject::from_atoms(x, {I(1), I(2)}));
  CHECK(saturate(glued, Subobject::from_atoms(x, {I(3)})) ==
        Subobject::from_atoms(x, {I(3)}));
}

TEST_CASE("separated objects for fiber-bounded classes") {
  Scope sc(3, 3);
  SBar sbar{MapClass::fiber_bound(1)};
  for (const auto& x : sc.objects())
    for (const auto& e : all_ex_objects(x))
      CHECK(is_separated(e, sbar, sc));
}

TEST_CASE("completion theorem report") {
  Scope sc(3, 3);
  auto reports = completion_report(sc, MapClass::fiber_bound(3));
  REQUIRE(reports.size() == 6);
  std::vector<std::string> names{"y-full-faithful",  "y-covering",
                                 "y-subobjects",     "sbar-characterization",
                                 "bounded-quotients", "idempotence"};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].axiom == names[i]);
    CHECK(reports[i].status == Status::Pass);
  }

  auto tight = completion_report(sc, MapClass::fiber_bound(2));
  for (const auto& rep : tight) CHECK(rep.status == Status::Pass);

  // the oracles behind the first three clauses
  FinObj x = ints("X", {1, 2, 3});
  FinObj y = ints("Y", {1, 2});
  CHECK(ex_homs(embed_y(x), embed_y(y)).size() == 8);  // |Y|^|X|
  std::size_t saturated = 0;
  for (const auto& s : all_subobjects(x))
    if (saturate(embed_y(x), s) == s) ++saturated;
  CHECK(saturated == 8);  // 2^|X|
  for (const auto& e : all_ex_objects(x))
    CHECK(ExMor::make(embed_y(x), e, relation_matrix(e)).is_cover());
}

TEST_CASE("small map axioms survive the completion") {
  Scope sc(3, 3);
  MapClass sbar_class = MapClass::covered(MapClass::fiber_bound(3));
  for (const auto& id : {"A1", "A2", "A3"})
    CHECK(check_axiom(sbar_class, sc, id).status == Status::Pass);
}

TEST_CASE("embedding preserves exponentials") {
  Scope sc(2, 2);
  FinObj x = ints("X", {1, 2});
  FinObj a = ints("A", {1, 2});
  ExObj yexp = embed_y(exponential(x, a));
  ExObj ya = embed_y(a);
  ExObj yx = embed_y(x);
  for (const auto& b : sc.objects())
    for (const auto& z : all_ex_objects(b))
      CHECK(ex_homs(ex_product(z, ya), yx).size() == ex_homs(z, yexp).size());
}

TEST_CASE("embedded power objects classify bounded families") {
  Scope sc(2, 2);
  FinObj x = ints("X", {1, 2});
  MapClass fb2 = MapClass::fiber_bound(2);
  PowerClass ps = PowerClass::make(x, fb2);
  ExObj ypower = embed_y(ps.object());

  for (const auto& b : sc.objects()) {
    for (const auto& z : all_ex_objects(b)) {
      FinObj classes = z.class_object();
      // bounded relations on classes correspond one to one to maps into y(ps X)
      std::size_t bounded = 0;
      FinObj amb = product(x, classes).obj;
      for (const auto& rel : all_subobjects(amb)) {
        bool ok = true;
        for (std::size_t j = 0; j < classes.size() && ok; ++j) {
          std::size_t fiber = 0;
          for (std::size_t i = 0; i < amb.size(); ++i)
            if (rel.has(i) && amb.at(i).second() == classes.at(j)) ++fiber;
          ok = fiber <= 2;
        }
        if (!ok) continue;
        ++bounded;
        FinMap rho = ps.classify(rel, classes);
        // the classifying map pulls the membership relation back to rel
        for (std::size_t i = 0; i < amb.size(); ++i) {
          Atom probe = Atom::pair(amb.at(i).first(), rho.apply(amb.at(i).second()));
          CHECK(rel.has(i) == ps.memb().has(*ps.memb_ambient().index_of(probe)));
        }
      }
      CHECK(bounded == ex_homs(z, ypower).size());
      CHECK(ex_homs(z, ypower).size() ==
            all_maps(classes, ps.object()).size());
    }
  }
}
