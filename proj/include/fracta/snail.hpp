#pragma once

// The six-term pi0-pi1 sequence of a functor and of a fraction, the exactness
// checker, and the fractor checker (pointed sets only).
//
// Node order: pi1(K), pi1(A), pi1(B), pi0(K), pi0(A), pi0(B), with K the
// bikernel. Arrows are composed left to right. The node pi1(B) is read as its
// underlying object of the base when exactness is checked against pi0(K).

#include <array>
#include <optional>
#include <string>

#include "fracta/bifractions.hpp"
#include "fracta/groupoid.hpp"
#include "fracta/homotopy.hpp"

namespace fracta {

inline constexpr std::array<const char*, 6> kSnailNodes{"pi1(K)", "pi1(A)", "pi1(B)",
                                                        "pi0(K)", "pi0(A)", "pi0(B)"};

template <BaseCategory C>
struct SixTermSequence {
  std::array<typename C::Object, 6> nodes;
  std::array<typename C::Arrow, 5> arrows;
  std::array<std::string, 5> provenance;
  std::array<std::optional<GroupTable>, 3> groups;  // absent on hand-built sequences

  /// Arrow i runs node i -> node i+1.
  ValidationReport well_formed() const;
  /// Index of the first adjacent pair whose composite is nonzero, or -1.
  int first_nonzero_composite() const;
};

/// Verdict at one interior node: the incoming arrow factors as epi then mono,
/// with mono the kernel of the outgoing arrow.
template <BaseCategory C>
struct NodeExactness {
  int node = 0;
  bool exact = false;
  std::optional<typename C::Arrow> epi;
  std::optional<typename C::Arrow> mono;
  std::string counterexample;
};

template <BaseCategory C>
struct ExactnessReport {
  std::array<NodeExactness<C>, 4> nodes;
  bool all() const {
    for (const auto& n : nodes)
      if (!n.exact) return false;
    return true;
  }
};

/// S': K(R) -> K(f) and the column isos pi1(S'), pi1(S), pi0(S'), pi0(S).
template <BaseCategory C>
struct ComparisonReport {
  InternalFunctor<C> S_prime;
  bool weak_equivalence = false;
  std::array<typename C::Arrow, 4> columns;
  ValidationReport checks;
  bool ok() const { return weak_equivalence && checks.ok(); }
};

template <BaseCategory C>
struct FractionSnail {
  SixTermSequence<C> sequence;   // over K(f), A, B
  SixTermSequence<C> tabulated;  // snail_sequence(R)
  FractionSquare<C> kernel;      // the fraction bipullback against 0 -> B
  ComparisonReport<C> comparison;
};

/// E with sigma: E -> A0 and rho: E -> B0; R with d, c: R -> E and
/// sigma_bar: R -> A1; the kernel pair of sigma with s1, s2 and rho_bar into B1.
template <BaseCategory C>
struct FractorData {
  Groupoid<C> A;
  Groupoid<C> B;
  typename C::Object E;
  typename C::Arrow sigma;
  typename C::Arrow rho;
  typename C::Object R;
  typename C::Arrow d;
  typename C::Arrow c;
  typename C::Arrow sigma_bar;
  typename C::Object kernel_pair;
  typename C::Arrow s1;
  typename C::Arrow s2;
  typename C::Arrow rho_bar;
};

template <BaseCategory C>
struct Snail {
  using Functor = InternalFunctor<C>;
  using Arrow = typename C::Arrow;
  using Sequence = SixTermSequence<C>;

  /// pi1(B) -> pi0(K): beta goes to the component of (basepoint, beta).
  static Arrow connecting_map(const Functor& F, const BikernelResult<C>& K);
  static Sequence snail_sequence(const Functor& F);
  static ExactnessReport<C> check_exact(const Sequence& seq);
  /// Recomputes each verdict from the stored factorization.
  static ValidationReport verify_exactness(const Sequence& seq, const ExactnessReport<C>& report);
  /// Throws NotAFraction.
  static FractionSnail<C> snail_sequence_fraction(const FractionSpan<C>& f);
};

extern template struct Snail<FinPtdSet>;
extern template struct Snail<FinAb>;

/// Failure names: "sigma regular epi with kernel pair", "rho coequalizes",
/// "discrete fibrations", and "shape" for mistyped data. Fibrations are
/// checked on the codomain side. Throws UnsupportedBackend on FinAb.
ValidationReport validate_fractor(const FractorData<FinPtdSet>& d);
ValidationReport validate_fractor(const FractorData<FinAb>& d);

/// E = A0 x_{B0} B1 over d, with R = A1 x_{A0} E acting by precomposition.
FractorData<FinPtdSet> canonical_fractor(const InternalFunctor<FinPtdSet>& F);

template <BaseCategory C>
typename C::Arrow connecting_map(const InternalFunctor<C>& F, const BikernelResult<C>& K) {
  return Snail<C>::connecting_map(F, K);
}
template <BaseCategory C>
SixTermSequence<C> snail_sequence(const InternalFunctor<C>& F) {
  return Snail<C>::snail_sequence(F);
}
template <BaseCategory C>
ExactnessReport<C> check_exact(const SixTermSequence<C>& seq) {
  return Snail<C>::check_exact(seq);
}
template <BaseCategory C>
FractionSnail<C> snail_sequence_fraction(const FractionSpan<C>& f) {
  return Snail<C>::snail_sequence_fraction(f);
}

}  // namespace fracta
