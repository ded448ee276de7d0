#include "setcat/map_class.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace setcat {

namespace {

std::vector<std::size_t> fiber_sizes(const FinMap& f) {
  std::vector<std::size_t> out(f.cod().size(), 0);
  for (std::size_t i = 0; i < f.dom().size(); ++i) ++out[f.apply_index(i)];
  return out;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::OutOfScope: return "out-of-scope";
  }
  return "unknown";
}

MapClass MapClass::all() {
  MapClass c;
  c.kind_ = Kind::AllMaps;
  return c;
}

MapClass MapClass::fiber_bound(std::size_t k) {
  MapClass c;
  c.kind_ = Kind::FiberBound;
  c.bound_ = k;
  return c;
}

MapClass MapClass::monos() {
  MapClass c;
  c.kind_ = Kind::Monos;
  return c;
}

MapClass MapClass::isos() {
  MapClass c;
  c.kind_ = Kind::Isos;
  return c;
}

MapClass MapClass::proj_fiber(std::vector<std::size_t> sizes) {
  MapClass c;
  c.kind_ = Kind::ProjFiber;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  c.sizes_ = std::move(sizes);
  return c;
}

MapClass MapClass::extensional(std::vector<FinMap> members) {
  MapClass c;
  c.kind_ = Kind::Extensional;
  c.listed_ = std::move(members);
  return c;
}

MapClass MapClass::covered(MapClass base) {
  MapClass c;
  c.kind_ = Kind::Covered;
  c.base_ = std::make_shared<MapClass>(std::move(base));
  return c;
}

const MapClass& MapClass::base() const {
  if (!base_) throw CategoryError("class has no base");
  return *base_;
}

MapClass MapClass::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s == "all") return all();
  if (s == "monos") return monos();
  if (s == "isos") return isos();
  auto number = [&](const std::string& tok) -> std::size_t {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw CategoryError("bad class spec: " + text);
    }
    if (pos != tok.size()) throw CategoryError("bad class spec: " + text);
    return v;
  };
  if (s.rfind("fiber:", 0) == 0) return fiber_bound(number(s.substr(6)));
  if (s.rfind("projfiber:", 0) == 0) {
    std::vector<std::size_t> sizes;
    std::stringstream in(s.substr(10));
    std::string tok;
    while (std::getline(in, tok, ',')) sizes.push_back(number(tok));
    if (sizes.empty()) throw CategoryError("bad class spec: " + text);
    return proj_fiber(std::move(sizes));
  }
  if (s.rfind("covered(", 0) == 0 && s.back() == ')')
    return covered(parse(s.substr(8, s.size() - 9)));
  throw CategoryError("bad class spec: " + text);
}

std::string MapClass::str() const {
  switch (kind_) {
    case Kind::AllMaps:
      return "all";
    case Kind::FiberBound:
      return "fiber:" + std::to_string(bound_);
    case Kind::Monos:
      return "monos";
    case Kind::Isos:
      return "isos";
    case Kind::ProjFiber: {
      std::string out = "projfiber:";
      for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sizes_[i]);
      }
      return out;
    }
    case Kind::Extensional:
      return "extensional[" + std::to_string(listed_.size()) + "]";
    case Kind::Covered:
      return "covered(" + base_->str() + ")";
  }
  return "?";
}

std::optional<std::size_t> MapClass::fiber_cap() const {
  switch (kind_) {
    case Kind::AllMaps:
      return std::nullopt;
    case Kind::FiberBound:
      return bound_;
    case Kind::Monos:
    case Kind::Isos:
      return 1;
    case Kind::ProjFiber:
      return sizes_.empty() ? 0 : sizes_.back();
    case Kind::Extensional: {
      std::size_t cap = 0;
      for (const auto& f : listed_) cap = std::max(cap, f.max_fiber_size());
      return cap;
    }
    case Kind::Covered:
      return base_->fiber_cap();
  }
  return std::nullopt;
}

bool MapClass::requires_surjective() const {
  switch (kind_) {
    case Kind::Isos:
      return true;
    case Kind::ProjFiber:
      return !sizes_.empty() && sizes_.front() >= 1;
    default:
      return false;
  }
}

namespace {

// Builds the top of a covering square over (left, bottom, f) when one exists:
// each left-fiber must surject onto the matching fiber of f.
std::optional<Square> complete_square(const FinMap& f, const FinMap& bottom,
                                      const FinMap& left) {
  const FinObj& z = left.dom();
  std::vector<std::size_t> table(z.size(), 0);
  for (std::size_t c = 0; c < bottom.dom().size(); ++c) {
    auto zc = left.fiber(c);
    auto yc = f.fiber(bottom.apply_index(c));
    if (yc.empty()) {
      if (!zc.empty()) return std::nullopt;
      continue;
    }
    if (zc.size() < yc.size()) return std::nullopt;
    for (std::size_t j = 0; j < zc.size(); ++j)
      table[zc[j]] = yc[std::min(j, yc.size() - 1)];
  }
  Square sq = Square::make(FinMap::make(z, f.dom(), table), left, f, bottom);
  if (!is_covering_square(sq).covering) return std::nullopt;
  return sq;
}

Membership member_covered(const MapClass& base, const FinMap& f,
                          const Scope& scope) {
  Membership direct = member(base, f, scope);
  if (direct.verdict == Tri::Yes) {
    Square sq = Square::make(FinMap::identity(f.dom()), f, f,
                             FinMap::identity(f.cod()));
    return {Tri::Yes, sq, "base member; identity covering square"};
  }

  auto sizes = fiber_sizes(f);
  if (auto cap = base.fiber_cap()) {
    for (std::size_t j = 0; j < sizes.size(); ++j)
      if (sizes[j] > *cap)
        return {Tri::No, std::nullopt,
                "fiber over " + f.cod().at(j).str() + " has " +
                    std::to_string(sizes[j]) +
                    " elements, exceeding the base fiber bound " +
                    std::to_string(*cap)};
  }
  if (base.requires_surjective()) {
    for (std::size_t j = 0; j < sizes.size(); ++j)
      if (sizes[j] == 0)
        return {Tri::No, std::nullopt,
                "empty fiber over " + f.cod().at(j).str() +
                    " cannot be covered by a nonempty base fiber"};
  }

  switch (base.kind()) {
    case MapClass::Kind::AllMaps:
    case MapClass::Kind::FiberBound:
    case MapClass::Kind::Monos:
    case MapClass::Kind::Isos:
      // For fiber-size-downward-closed kinds a covering square over f gives a
      // base member whose fibers dominate f's fibers, so f would already be a
      // base member.
      return {Tri::No, std::nullopt,
              "fibers of a covered map are cover images of base fibers; " +
                  std::string(direct.detail)};
    case MapClass::Kind::ProjFiber: {
      // Left leg is a constant-fiber projection over f.cod.
      for (std::size_t s : base.sizes()) {
        std::vector<Atom> elems;
        for (const auto& c : f.cod().elements())
          for (std::size_t i = 1; i <= s; ++i)
            elems.push_back(Atom::pair(c, Atom::integer(static_cast<int>(i))));
        FinObj z = FinObj::make("proj" + std::to_string(s), std::move(elems));
        FinMap left = FinMap::from_fn(
            z, f.cod(), [](const Atom& a) { return a.first(); });
        if (auto sq = complete_square(f, FinMap::identity(f.cod()), left))
          return {Tri::Yes, *sq,
                  "covered by the constant-fiber-" + std::to_string(s) +
                      " projection"};
      }
      return {Tri::No, std::nullopt,
              "no constant-fiber projection admitted by the base dominates "
              "the fibers; larger or merged bases cannot help"};
    }
    case MapClass::Kind::Extensional:
    case MapClass::Kind::Covered:
      break;
  }

  // Bounded search: bottoms are the identity plus covers from scope objects;
  // left legs are base members into the bottom's domain.
  bool unknown_seen = false;
  std::vector<FinMap> bottoms{FinMap::identity(f.cod())};
  for (const auto& b : scope.objects())
    for (auto& p : all_covers(b, f.cod())) bottoms.push_back(std::move(p));
  for (const auto& p : bottoms) {
    std::vector<FinMap> lefts;
    if (base.kind() == MapClass::Kind::Extensional) {
      for (const auto& g : base.listed())
        if (g.cod() == p.dom()) lefts.push_back(g);
    } else {
      for (const auto& z : scope.objects())
        for (auto& g : all_maps(z, p.dom())) {
          Tri v = member_tri(base, g, scope);
          if (v == Tri::Unknown) unknown_seen = true;
          if (v == Tri::Yes) lefts.push_back(std::move(g));
        }
    }
    for (const auto& g : lefts)
      if (auto sq = complete_square(f, p, g))
        return {Tri::Yes, *sq, "covering square found by search"};
  }
  if (unknown_seen)
    return {Tri::Unknown, std::nullopt,
            "base membership inconclusive during the search"};
  return {Tri::Unknown, std::nullopt,
          "no covering square within the search budget"};
}

}  // namespace

Membership member(const MapClass& cls, const FinMap& f, const Scope& scope) {
  switch (cls.kind()) {
    case MapClass::Kind::AllMaps:
      return {Tri::Yes, std::nullopt, ""};
    case MapClass::Kind::FiberBound: {
      std::size_t m = f.max_fiber_size();
      if (m <= cls.bound()) return {Tri::Yes, std::nullopt, ""};
      return {Tri::No, std::nullopt,
              "a fiber has " + std::to_string(m) + " elements > bound " +
                  std::to_string(cls.bound())};
    }
    case MapClass::Kind::Monos:
      if (f.is_injective()) return {Tri::Yes, std::nullopt, ""};
      return {Tri::No, std::nullopt, "not injective"};
    case MapClass::Kind::Isos:
      if (f.is_iso()) return {Tri::Yes, std::nullopt, ""};
      return {Tri::No, std::nullopt, "not an isomorphism"};
    case MapClass::Kind::ProjFiber: {
      auto sizes = fiber_sizes(f);
      if (sizes.empty()) return {Tri::Yes, std::nullopt, "empty codomain"};
      for (std::size_t s : sizes)
        if (s != sizes.front())
          return {Tri::No, std::nullopt, "fibers are not all the same size"};
      if (std::find(cls.sizes().begin(), cls.sizes().end(), sizes.front()) ==
          cls.sizes().end())
        return {Tri::No, std::nullopt,
                "constant fiber size " + std::to_string(sizes.front()) +
                    " is not admitted"};
      return {Tri::Yes, std::nullopt, ""};
    }
    case MapClass::Kind::Extensional:
      for (const auto& g : cls.listed())
        if (g == f) return {Tri::Yes, std::nullopt, ""};
      return {Tri::No, std::nullopt, "not among the listed members"};
    case MapClass::Kind::Covered:
      return member_covered(cls.base(), f, scope);
  }
  return {Tri::No, std::nullopt, "unknown kind"};
}

Tri member_tri(const MapClass& cls, const FinMap& f, const Scope& scope) {
  return member(cls, f, scope).verdict;
}

MapClass scov(const MapClass& cls, const Scope& scope) {
  std::string failed;
  for (const auto& rep : check_axioms(cls, scope, display_map_axioms()))
    if (rep.status == Status::Fail) {
      if (!failed.empty()) failed += ", ";
      failed += rep.axiom;
    }
  if (!failed.empty())
    throw CategoryError("not a class of display maps on this scope (fails " +
                        failed + ")");
  return MapClass::covered(cls);
}

PowerClass PowerClass::make(FinObj x, MapClass cls) {
  if (cls.kind() != MapClass::Kind::AllMaps &&
      cls.kind() != MapClass::Kind::FiberBound)
    throw CategoryError("power class objects ship for all/fiber:<k> only");
  PowerClass p;
  p.base_ = x;
  p.cls_ = cls;
  std::size_t n = x.size();
  std::vector<Atom> subsets;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<Atom> members;
    for (std::size_t i = 0; i < n; ++i)
      if ((bits >> i) & 1u) members.push_back(x.at(i));
    if (cls.kind() == MapClass::Kind::FiberBound &&
        members.size() > cls.bound())
      continue;
    subsets.push_back(Atom::set(std::move(members)));
  }
  p.object_ = FinObj::make("ps(" + x.id() + ")", std::move(subsets));
  p.ambient_ = product(x, p.object_).obj;
  p.memb_ = Subobject::of(
      p.ambient_, [&] {
        std::vector<bool> mask(p.ambient_.size());
        for (std::size_t i = 0; i < p.ambient_.size(); ++i) {
          const Atom& pr = p.ambient_.at(i);
          const auto& mem = pr.second().members();
          mask[i] = std::find(mem.begin(), mem.end(), pr.first()) != mem.end();
        }
        return mask;
      }());
  return p;
}

FinMap PowerClass::classify(const Subobject& rel, const FinObj& y) const {
  std::vector<std::vector<Atom>> fibers(y.size());
  for (std::size_t i = 0; i < rel.ambient().size(); ++i) {
    if (!rel.has(i)) continue;
    const Atom& pr = rel.ambient().at(i);
    auto j = y.index_of(pr.second());
    if (!j) throw CategoryError("relation is not over X x Y");
    fibers[*j].push_back(pr.first());
  }
  return FinMap::from_fn(y, object_, [&](const Atom& b) {
    Atom s = Atom::set(fibers[*y.index_of(b)]);
    if (!object_.contains(s))
      throw CategoryError("family is not displayed: fiber over " + b.str() +
                          " is not admitted");
    return s;
  });
}

FinMap PowerClass::unit() const {
  return FinMap::from_fn(base_, object_, [&](const Atom& a) {
    Atom s = Atom::set({a});
    if (!object_.contains(s))
      throw CategoryError("singletons are not admitted by the class");
    return s;
  });
}

FinMap PowerClass::mult() const {
  PowerClass outer = PowerClass::make(object_, cls_);
  return FinMap::from_fn(outer.object(), object_, [&](const Atom& ss) {
    std::vector<Atom> flat;
    for (const Atom& s : ss.members())
      for (const Atom& a : s.members()) flat.push_back(a);
    Atom u = Atom::set(std::move(flat));
    if (!object_.contains(u))
      throw CategoryError("union " + u.str() + " is not admitted");
    return u;
  });
}

FinMap power_image(const FinMap& f, const MapClass& cls) {
  PowerClass px = PowerClass::make(f.dom(), cls);
  PowerClass py = PowerClass::make(f.cod(), cls);
  return FinMap::from_fn(px.object(), py.object(), [&](const Atom& s) {
    std::vector<Atom> img;
    for (const Atom& a : s.members()) img.push_back(f.apply(a));
    return Atom::set(std::move(img));
  });
}

std::vector<Subobject> mvs_enumerate(const FinMap& phi) {
  std::vector<Subobject> out;
  for (const auto& p : all_subobjects(phi.dom()))
    if (exists_f(phi, p) == Subobject::top(phi.cod())) out.push_back(p);
  return out;
}

}  // namespace setcat
