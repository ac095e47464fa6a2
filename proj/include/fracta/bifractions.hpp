#pragma once

// Fractions of internal groupoids at the weak equivalences: spans (W, F) with
// W a weak equivalence, 2-cells as quadruples (U1, U2, alpha1, alpha2), the BF
// axioms on a finite sample, and bipullbacks of fractions.
//
// A quadruple from (W, F) to (V, G) has apex E, U1: E -> dom W, U2: E -> dom V,
// alpha1: U1.W => U2.V and alpha2: U1.F => U2.G.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fracta/fractions1d.hpp"
#include "fracta/groupoid.hpp"

namespace fracta {

/// A <-W- X -F-> B.
template <BaseCategory C>
struct FractionSpan {
  InternalFunctor<C> W;
  InternalFunctor<C> F;
};

template <BaseCategory C>
struct TwoCellQuadruple {
  FractionSpan<C> from;
  FractionSpan<C> to;
  InternalFunctor<C> U1;
  InternalFunctor<C> U2;
  NatIso<C> alpha1;
  NatIso<C> alpha2;
};

enum class Verdict { yes, no, undecided };

std::string to_string(Verdict v);

/// R1: K -> E, R2: K -> E', gamma1: R2.U1' => R1.U1, gamma2: R1.U2 => R2.U2'.
template <BaseCategory C>
struct QuadrupleWitness {
  InternalFunctor<C> R1;
  InternalFunctor<C> R2;
  NatIso<C> gamma1;
  NatIso<C> gamma2;
};

template <BaseCategory C>
struct QuadrupleEquivalence {
  Verdict verdict = Verdict::undecided;
  std::optional<QuadrupleWitness<C>> witness;
  std::string obstruction;  // set on "no"
  std::string searched;     // what was tried
};

/// Bipullback of a = (S, R): A -> B and b = (U, T): C -> B. The corner is the
/// strong h-pullback of (R, T) with T' = core.Gp, R' = core.Fp. The legs are
/// leg_a = (1, T'.S) and leg_c = (1, R'.U); the filler runs leg_c.b => leg_a.a.
template <BaseCategory C>
struct FractionSquare {
  FractionSpan<C> a;
  FractionSpan<C> b;
  IsoSquare<C> core;
  FractionSpan<C> leg_a;
  FractionSpan<C> leg_c;
  TwoCellQuadruple<C> filler;
};

/// A cone over (1, R), (1, T) with apex V: spans x = (X1, X2) into dom R and
/// y = (Y1, Y2) into dom T, and the quadruple (U1, U2, mu1, mu2) from
/// y.(1, T) to x.(1, R): mu1: U1.Y1 => U2.X1, mu2: U1.Y2.T => U2.X2.R.
template <BaseCategory C>
struct FractionCone {
  FractionSpan<C> x;
  FractionSpan<C> y;
  InternalFunctor<C> U1;
  InternalFunctor<C> U2;
  NatIso<C> mu1;
  NatIso<C> mu2;
};

/// m = (U1.Y1, L) with gamma_hat: m.(1, T') => x and delta_hat: m.(1, R') => y.
template <BaseCategory C>
struct FractionMediator {
  FractionSpan<C> m;
  TwoCellQuadruple<C> gamma_hat;
  TwoCellQuadruple<C> delta_hat;
  Mediator<C> core;
  bool compatible = false;
};

template <BaseCategory C>
struct BFSample {
  std::vector<Groupoid<C>> groupoids;
  std::vector<InternalFunctor<C>> functors;
};

struct BFReport {
  std::array<AxiomVerdict, 5> bf;
  bool all() const {
    for (const auto& v : bf)
      if (!v.holds) return false;
    return true;
  }
};

template <BaseCategory C>
struct Fract {
  using G = Groupoid<C>;
  using Functor = InternalFunctor<C>;
  using Iso = NatIso<C>;
  using Span = FractionSpan<C>;
  using Quad = TwoCellQuadruple<C>;
  using Square = FractionSquare<C>;
  using Cone = FractionCone<C>;

  static bool is_weq(const Functor& f);
  /// Throws NotAFraction unless W is a weak equivalence with the domain of F.
  static Span span(const Functor& W, const Functor& F);
  static Span identity_span(const G& g);
  /// (1, F).
  static Span p_sigma(const Functor& F);
  static G apex(const Span& s) { return s.W.src; }
  static bool same_span(const Span& a, const Span& b);

  /// The unique u: x -> y with W(u) = a, or -1.
  static int lift(const Functor& W, int x, int y, int a);
  /// R: X -> Y with sigma: R.V => U, built by choosing preimages up to iso and
  /// lifting arrows through V. Absent when V is not a weak equivalence or the
  /// chosen tables are not morphisms of the base.
  static std::optional<std::pair<Functor, Iso>> lift_through(const Functor& U, const Functor& V);
  /// The iso square whose corner is the apex of b after a.
  static IsoSquare<C> composition_square(const Span& a, const Span& b);
  /// b after a; throws BoundaryMismatch.
  static Span compose(const Span& a, const Span& b);

  static ValidationReport validate_quadruple(const Quad& q);
  static Quad quadruple(const Span& from, const Span& to, const Functor& U1, const Functor& U2, Table alpha1,
                        Table alpha2);
  static Quad identity_quadruple(const Span& s);
  /// (k, k, ...) whiskering of q by a span (1, h) on the right: spans become (W, F.h).
  static Quad whisker_p_sigma(const Quad& q, const Functor& h);
  /// Per object of the common source, an arrow of the common target that
  /// equivalent quadruples share.
  static Table two_cell_invariant(const Quad& q);
  static std::optional<QuadrupleWitness<C>> canonical_witness(const Quad& p, const Quad& q);
  static ValidationReport verify_witness(const Quad& p, const Quad& q, const QuadrupleWitness<C>& w);
  /// Throws BoundaryMismatch.
  static QuadrupleEquivalence<C> quadruple_equivalent(const Quad& p, const Quad& q, const Budget& budget = {});
  /// An invertible 2-cell a => b, if any. The apex is that of a when the left
  /// leg of b can be inverted up to iso, else the h-pullback of the left legs.
  static std::optional<Quad> find_span_iso(const Span& a, const Span& b, std::size_t cap = 4096);

  static BFReport check_bf_axioms(const BFSample<C>& sample, std::size_t cap = 4096);

  /// Throws BoundaryMismatch or NotAFraction.
  static Square bipullback_of_fractions(const Span& a, const Span& b);
  /// Legs and filler over a given iso square on (R, T).
  static Square square_from_core(const Span& a, const Span& b, const IsoSquare<C>& core);
  /// Precomposes the corner with K: Q -> P.
  static Square reindex_corner(const Square& sq, const Functor& K);
  static ValidationReport validate_fraction_square(const Square& sq);

  /// The square itself as a cone.
  static Cone cone_of(const Square& sq);
  /// (1, H), (1, K) with identity U's from a functor-level cone.
  static Cone cone_from_functors(const Square& sq, const SquareCone<C>& cone);
  static ValidationReport validate_cone(const Square& sq, const Cone& cone);
  /// Throws ConeMalformed; absent when the core search finds no mediator.
  static std::optional<FractionMediator<C>> mediate_bp1(const Square& sq, const Cone& cone,
                                                        std::size_t step_budget = 200000, bool* exhausted = nullptr);
  static std::vector<Cone> enumerate_cones(const Square& sq, const G& V, const std::vector<G>& sources,
                                           std::size_t cap, bool* truncated = nullptr);
  static BipullbackReport check_fraction_bipullback(const Square& sq, const Budget& budget,
                                                    const std::vector<G>& extra_apexes = {});
};

extern template struct Fract<FinPtdSet>;
extern template struct Fract<FinAb>;

template <BaseCategory C>
FractionSpan<C> compose_fraction_1cells(const FractionSpan<C>& a, const FractionSpan<C>& b) {
  return Fract<C>::compose(a, b);
}
template <BaseCategory C>
QuadrupleEquivalence<C> quadruple_equivalent(const TwoCellQuadruple<C>& p, const TwoCellQuadruple<C>& q,
                                             const Budget& budget = {}) {
  return Fract<C>::quadruple_equivalent(p, q, budget);
}
template <BaseCategory C>
FractionSquare<C> bipullback_of_fractions(const FractionSpan<C>& a, const FractionSpan<C>& b) {
  return Fract<C>::bipullback_of_fractions(a, b);
}
template <BaseCategory C>
BipullbackReport check_fraction_bipullback(const FractionSquare<C>& sq, const Budget& budget,
                                           const std::vector<Groupoid<C>>& extra = {}) {
  return Fract<C>::check_fraction_bipullback(sq, budget, extra);
}

}  // namespace fracta
