#pragma once

// Groupoids over finite abelian groups. Composition is never taken from
// input: it is forced to m(f,g) = f + g - e(c(f)).

#include <string>

#include "fracta/groupoid.hpp"

namespace fracta {

using AbGroupoid = Groupoid<FinAb>;
using AbFunctor = InternalFunctor<FinAb>;

struct AbelianGroupoidLoad {
  AbGroupoid groupoid;  // null when the axioms fail
  ValidationReport report;
};

AbelianGroupoidLoad load_abelian_groupoid(const FinAbGroup& A0, const FinAbGroup& A1, const FinAbHom& d,
                                          const FinAbHom& c, const FinAbHom& e, std::string name = {});
AbGroupoid abelian_groupoid(const FinAbGroup& A0, const FinAbGroup& A1, const FinAbHom& d, const FinAbHom& c,
                            const FinAbHom& e, std::string name = {});

/// The groupoid of a boundary map b: M -> N: objects N, arrows N + M with
/// d(n,m) = n, c(n,m) = n + b(m), e(n) = (n,0).
AbGroupoid boundary_groupoid(const FinAbHom& boundary, std::string name = {});

/// Functor between boundary groupoids induced by a commuting square
/// (fN: N -> N', fM: M -> M'), acting as fN on objects and fN + fM on arrows.
AbFunctor boundary_functor(const AbGroupoid& src, const AbGroupoid& dst, const FinAbHom& fN, const FinAbHom& fM);

}  // namespace fracta
