#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "setcat/category.hpp"
#include "setcat/report.hpp"
#include "setcat/scope.hpp"

namespace setcat {

enum class Tri { Yes, No, Unknown };

// Decidable-within-budget membership predicate over FinMaps.
class MapClass {
 public:
  enum class Kind {
    AllMaps,
    FiberBound,
    Monos,
    Isos,
    ProjFiber,
    Extensional,
    Covered,
  };

  static MapClass all();
  static MapClass fiber_bound(std::size_t k);
  static MapClass monos();
  static MapClass isos();
  static MapClass proj_fiber(std::vector<std::size_t> sizes);
  static MapClass extensional(std::vector<FinMap> members);
  static MapClass covered(MapClass base);

  // Grammar: all | monos | isos | fiber:<k> | projfiber:<s1>,<s2>,... |
  // covered(<class>).
  static MapClass parse(const std::string& text);
  std::string str() const;

  Kind kind() const { return kind_; }
  std::size_t bound() const { return bound_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  const std::vector<FinMap>& listed() const { return listed_; }
  const MapClass& base() const;

  // Largest fiber size any member can have, when the kind bounds it.
  std::optional<std::size_t> fiber_cap() const;
  // Whether the kind forbids empty fibers of members.
  bool requires_surjective() const;

 private:
  MapClass() = default;
  Kind kind_ = Kind::AllMaps;
  std::size_t bound_ = 0;
  std::vector<std::size_t> sizes_;
  std::vector<FinMap> listed_;
  std::shared_ptr<MapClass> base_;
};

struct Membership {
  Tri verdict = Tri::No;
  // For Covered classes, a covering square with f on the right.
  std::optional<Square> witness;
  std::string detail;
};

Membership member(const MapClass& cls, const FinMap& f, const Scope& scope);
Tri member_tri(const MapClass& cls, const FinMap& f, const Scope& scope);

// Axiom checkers. Recognized ids: A1..A10, L1, L2, L3, M, NE, NS, PiE, PS.
AxiomReport check_axiom(const MapClass& cls, const Scope& scope,
                        const std::string& axiom);
std::vector<AxiomReport> check_axioms(const MapClass& cls, const Scope& scope,
                                      const std::vector<std::string>& which);

const std::vector<std::string>& small_map_axioms();    // A1..A9
const std::vector<std::string>& display_map_axioms();  // A1, A3..A5, A7..A10

// Smallest class of small maps containing a class of display maps: membership
// by covering-square search. Throws if the display axioms fail on scope.
MapClass scov(const MapClass& cls, const Scope& scope);

struct Representation {
  FinMap pi;  // E -> U
};

// The generic map with one fiber of each size 0..k.
Representation fiber_bound_representation(std::size_t k);

// Pass iff every class member in scope is covered by a pullback of pi:
// a double square with the left half covering and the right half a pullback.
AxiomReport check_representation(const Representation& pi, const MapClass& cls,
                                 const Scope& scope);

// The composition-closed representation pi': E' -> U' whose base indexes
// pairs (u, v) with a map p: E_v -> E_u x E_u whose image is an equivalence
// relation, and whose fiber over (u, v, p) is the quotient E_u / Im(p).
Representation universal_small_map(const Representation& pi,
                                   const MapClass& cls, const Scope& scope);

// Pass iff every class member in scope is a strict pullback of pi' after a
// cover on the base: both squares pullbacks, bottom a cover.
AxiomReport check_universal(const Representation& pi_prime,
                            const MapClass& cls, const Scope& scope);

class PowerClass {
 public:
  // cls must be AllMaps or FiberBound(k).
  static PowerClass make(FinObj x, MapClass cls);

  const FinObj& base() const { return base_; }
  const FinObj& object() const { return object_; }          // ps(X)
  const FinObj& memb_ambient() const { return ambient_; }   // X x ps(X)
  const Subobject& memb() const { return memb_; }
  const MapClass& cls() const { return cls_; }

  // rel is a subobject of product(X, Y); returns the unique rho: Y -> ps(X)
  // classifying it. Throws if some fiber over Y is not admitted.
  FinMap classify(const Subobject& rel, const FinObj& y) const;
  FinMap unit() const;  // X -> ps(X), singleton
  FinMap mult() const;  // ps(ps(X)) -> ps(X), union
 private:
  PowerClass() = default;
  FinObj base_;
  FinObj object_;
  FinObj ambient_;
  Subobject memb_;
  MapClass cls_ = MapClass::all();
};

// Direct image ps(X) -> ps(Y) along f: X -> Y.
FinMap power_image(const FinMap& f, const MapClass& cls);

// All multi-valued sections of phi: subobjects P of phi.dom whose image under
// phi is all of phi.cod, in mask order (which refines inclusion upward).
std::vector<Subobject> mvs_enumerate(const FinMap& phi);

// Fullness: phi: B -> A sits over X via a: A -> X. Searches for a cover
// q: X' ->> X, a class map y: Y -> X', and a displayed mvs P over Y that is
// generic: every displayed mvs Q over any z: Z -> X' in scope is refined by P
// after a cover of Z.
AxiomReport check_fullness(const FinMap& phi, const FinMap& a,
                           const MapClass& cls, const Scope& scope);

}  // namespace setcat
