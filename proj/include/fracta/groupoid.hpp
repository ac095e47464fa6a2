#pragma once

// Internal groupoids, functors and natural isomorphisms over a base category.
//
// Composition is diagrammatic throughout: f.g means "f, then g", and the
// composable pairs object is the pullback of c against d. A natural iso
// t: F => G between functors X -> Y has components t(x): F(x) -> G(x), and
// naturality reads F1(a).t(y) = t(x).G1(a) for a: x -> y.
//
// Everything is pointed: functors send the basepoint to the basepoint and the
// component of a natural iso at the basepoint is the identity.

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracta/base_category.hpp"
#include "fracta/finite_abelian.hpp"
#include "fracta/pointed_set.hpp"

namespace fracta {

struct Failure {
  std::string name;
  std::string detail;
};

struct ValidationReport {
  std::vector<Failure> failures;
  bool truncated = false;

  bool ok() const { return failures.empty(); }
  void add(std::string name, std::string detail = {}) { failures.push_back({std::move(name), std::move(detail)}); }
  bool has(const std::string& name) const {
    for (const auto& f : failures)
      if (f.name == name) return true;
    return false;
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& f : other.failures) add(prefix + f.name, f.detail);
    truncated = truncated || other.truncated;
  }
};

/// Element-level picture of a groupoid: structure tables plus hom lists and a
/// spanning arrow from each component root. Built without assuming the axioms.
struct GroupoidView {
  int n0 = 0;
  int n1 = 0;
  Table d, c, e, inv;
  std::vector<std::vector<int>> out;   // arrows with a given domain, ascending
  std::vector<int> out_pos;            // index of an arrow inside out[d[a]]
  std::vector<std::vector<int>> comp;  // comp[f][out_pos[g]] = f.g, or -1
  std::vector<std::vector<int>> homs;  // homs[x * n0 + y]
  std::vector<int> component;          // component index of each object
  std::vector<int> roots;              // least object of each component
  std::vector<int> spanning;           // spanning[y]: an arrow root -> y

  int compose(int f, int g) const { return comp[f][out_pos[g]]; }
  const std::vector<int>& hom(int x, int y) const { return homs[static_cast<std::size_t>(x) * n0 + y]; }
  int identity(int x) const { return e[x]; }
  int inverse(int f) const { return inv[f]; }
  int root_of(int x) const { return roots[component[x]]; }
};

GroupoidView make_view(int n0, int n1, Table d, Table c, Table e, Table inv,
                       const std::vector<std::array<int, 3>>& compositions);

template <BaseCategory C>
struct InternalGroupoid {
  using Object = typename C::Object;
  using Arrow = typename C::Arrow;

  Object A0;
  Object A1;
  Arrow d, c, e, i;
  Cone<C> composable;  // pullback of (c, d): p1 is the first arrow, p2 the second
  Arrow m;
  GroupoidView view;
  std::string name;
};

template <BaseCategory C>
using Groupoid = std::shared_ptr<const InternalGroupoid<C>>;

template <BaseCategory C>
struct InternalFunctor {
  Groupoid<C> src;
  Groupoid<C> dst;
  typename C::Arrow F0;
  typename C::Arrow F1;
  Table t0;
  Table t1;
  std::string name;
};

template <BaseCategory C>
struct NatIso {
  InternalFunctor<C> from;
  InternalFunctor<C> to;
  typename C::Arrow t;
  Table comp;
};

/// An iso square over the cospan (F: A -> B, G: C -> B): corner P with legs
/// Gp: P -> A and Fp: P -> C, and filler pi: Fp.G => Gp.F.
template <BaseCategory C>
struct IsoSquare {
  InternalFunctor<C> F;
  InternalFunctor<C> G;
  Groupoid<C> P;
  InternalFunctor<C> Gp;
  InternalFunctor<C> Fp;
  NatIso<C> pi;
};

template <BaseCategory C>
struct BikernelResult {
  Groupoid<C> K;
  InternalFunctor<C> KF;  // K -> A
  NatIso<C> kF;           // KF.F => 0
  IsoSquare<C> square;
};

template <BaseCategory C>
struct WeakEquivalenceReport {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  typename C::Arrow comparison;  // A1 -> (A0 x A0) x_{B0 x B0} B1
  typename C::Arrow eso;         // A0 x_{B0} B1 -> B0
  bool holds() const { return fully_faithful && essentially_surjective; }
};

struct Budget {
  std::size_t objects = 4;       // apex object bound
  std::size_t arrows = 24;       // apex arrow bound
  std::size_t cones = 4096;      // cones examined per apex
  std::size_t pairs = 1024;      // functor pairs examined per apex for BP2
  std::size_t functors = 4096;   // functors enumerated per hom-category
  std::size_t search = 200000;   // backtracking steps per mediator search
};

struct BipullbackReport {
  bool bp1 = true;
  bool bp2 = true;
  bool truncated = false;
  std::size_t apexes = 0;
  std::size_t cones = 0;
  std::size_t pairs = 0;
  std::vector<Failure> failures;
  bool passed() const { return failures.empty(); }
};

/// A BP1 mediator (T, gamma: T.Gp => H, delta: T.Fp => K) for a cone.
template <BaseCategory C>
struct Mediator {
  InternalFunctor<C> T;
  NatIso<C> gamma;
  NatIso<C> delta;
};

/// A cone over a cospan: apex X, legs H: X -> A and K: X -> C, mu: K.G => H.F.
template <BaseCategory C>
struct SquareCone {
  InternalFunctor<C> H;
  InternalFunctor<C> K;
  NatIso<C> mu;
};

template <BaseCategory C>
struct Grpd {
  using Object = typename C::Object;
  using Arrow = typename C::Arrow;
  using G = Groupoid<C>;
  using Functor = InternalFunctor<C>;
  using Iso = NatIso<C>;
  using Square = IsoSquare<C>;

  // --- groupoids -----------------------------------------------------------
  /// Builds a groupoid from structure arrows without checking the axioms.
  static G raw(Object A0, Object A1, Arrow d, Arrow c, Arrow e, Arrow m, Arrow i, Cone<C> composable,
               std::string name = {});
  /// Builds a groupoid from element tables and an element-level composition;
  /// inverses are searched for unless given. Throws MalformedInstance on failure.
  static G assemble(Object A0, Object A1, const Table& d, const Table& c, const Table& e,
                    const std::function<int(int, int)>& compose, std::string name = {},
                    const std::function<int(int)>& inverse = {});
  static ValidationReport validate(const InternalGroupoid<C>& g);
  static G zero();
  static G discrete(const Object& x, std::string name = {});
  static std::size_t arrow_count(const G& g) { return static_cast<std::size_t>(g->view.n1); }
  static std::size_t object_count(const G& g) { return static_cast<std::size_t>(g->view.n0); }

  // --- functors --------------------------------------------------------------
  static std::optional<Functor> try_functor(const G& src, const G& dst, Table t0, Table t1);
  static Functor functor(const G& src, const G& dst, Table t0, Table t1, std::string name = {});
  static Functor from_arrows(const G& src, const G& dst, Arrow F0, Arrow F1, std::string name = {});
  static ValidationReport validate_functor(const Functor& f);
  static Functor identity(const G& g);
  static Functor compose(const Functor& f, const Functor& g);
  static Functor zero_functor(const G& src, const G& dst);
  static bool same_functor(const Functor& f, const Functor& g);
  static bool same_groupoid(const G& a, const G& b);

  // --- natural isos ------------------------------------------------------------
  static std::optional<Iso> try_nat_iso(const Functor& from, const Functor& to, Table comp);
  static Iso nat_iso(const Functor& from, const Functor& to, Table comp);
  static ValidationReport validate_nat_iso(const Iso& a);
  static Iso identity_iso(const Functor& f);
  static Iso vcompose(const Iso& a, const Iso& b);
  static Iso inverse(const Iso& a);
  /// k.a for k: X -> src(a) (precomposition).
  static Iso whisker_left(const Functor& k, const Iso& a);
  /// a.h for h: dst(a) -> Y (postcomposition).
  static Iso whisker_right(const Iso& a, const Functor& h);
  static bool same_iso(const Iso& a, const Iso& b) { return a.comp == b.comp; }

  // --- enumeration -------------------------------------------------------------
  /// All pointed functors X -> Y; throws BudgetExceeded past `cap`.
  static std::vector<Functor> enumerate_functors(const G& x, const G& y, std::size_t cap);
  static std::vector<Iso> enumerate_nat_isos(const Functor& from, const Functor& to, std::size_t cap);

  // --- bipullbacks -------------------------------------------------------------
  static Square strong_h_pullback(const Functor& f, const Functor& g);
  static BikernelResult<C> bikernel(const Functor& f);
  static WeakEquivalenceReport<C> is_weak_equivalence(const Functor& f);
  /// An internal weak equivalence x -> y, preferring one that sends every object
  /// to a component root. Nothing when none exists within the default budget.
  static std::optional<Functor> find_equivalence(const G& x, const G& y);
  static ValidationReport validate_square(const Square& sq);
  /// Searches T, gamma, delta for a cone; absent if none exists within the step budget.
  static std::optional<Mediator<C>> find_mediator(const Square& sq, const SquareCone<C>& cone,
                                                  std::size_t step_budget, bool* exhausted = nullptr);
  static Mediator<C> canonical_mediator(const Square& hpb, const SquareCone<C>& cone);
  static std::vector<SquareCone<C>> enumerate_cones(const Square& sq, const G& apex, std::size_t cap,
                                                    bool* truncated = nullptr);
  static BipullbackReport check_bipullback(const Square& sq, const Budget& budget,
                                           const std::vector<G>& extra_apexes = {});
  static Square paste(const Square& left, const Square& right);
  static Square transpose(const Square& sq);
  /// Small apexes every bipullback check uses: zero, interval, one-object Z/2, discrete on two objects.
  static std::vector<G> canonical_apexes();
};

extern template struct Grpd<FinPtdSet>;
extern template struct Grpd<FinAb>;

// Free-function spellings of the main operations.
template <BaseCategory C>
ValidationReport validate_groupoid(const Groupoid<C>& g) {
  return Grpd<C>::validate(*g);
}
template <BaseCategory C>
IsoSquare<C> strong_h_pullback(const InternalFunctor<C>& f, const InternalFunctor<C>& g) {
  return Grpd<C>::strong_h_pullback(f, g);
}
template <BaseCategory C>
BikernelResult<C> bikernel(const InternalFunctor<C>& f) {
  return Grpd<C>::bikernel(f);
}
template <BaseCategory C>
WeakEquivalenceReport<C> is_weak_equivalence(const InternalFunctor<C>& f) {
  return Grpd<C>::is_weak_equivalence(f);
}
template <BaseCategory C>
BipullbackReport check_bipullback(const IsoSquare<C>& sq, const Budget& budget,
                                  const std::vector<Groupoid<C>>& extra = {}) {
  return Grpd<C>::check_bipullback(sq, budget, extra);
}
template <BaseCategory C>
IsoSquare<C> paste_squares(const IsoSquare<C>& left, const IsoSquare<C>& right) {
  return Grpd<C>::paste(left, right);
}

}  // namespace fracta
