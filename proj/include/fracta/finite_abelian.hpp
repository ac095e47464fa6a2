#pragma once

// FinAb: finite abelian groups in invariant-factor form, homomorphisms as
// integer matrices. Kernels, cokernels and pullbacks go through Smith normal
// form.
//
// Matrix convention: a hom G -> H has an (H.rank() x G.rank()) matrix whose
// column j is the image of the j-th generator of G. Entries are stored reduced
// modulo the corresponding invariant factor of H.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracta/base_category.hpp"
#include "fracta/smith_normal_form.hpp"

namespace fracta {

class FinAbGroup {
 public:
  static constexpr std::int64_t default_order_bound = 1'000'000;

  FinAbGroup() = default;
  /// Factors equal to 1 are dropped; the rest must form a divisibility chain.
  explicit FinAbGroup(std::vector<std::int64_t> invariant_factors,
                      std::int64_t order_bound = default_order_bound);

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::size_t order() const { return order_; }

  std::vector<std::int64_t> decode(int index) const;
  /// Residues are reduced before encoding.
  int encode(std::span<const std::int64_t> residues) const;
  std::string label(int index) const;
  int add(int x, int y) const;
  int negate(int x) const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<std::int64_t> factors_;
  std::size_t order_ = 1;
};

class FinAbHom {
 public:
  FinAbHom() = default;
  /// Validates dimensions and well-definedness; throws MalformedHom otherwise.
  FinAbHom(FinAbGroup src, FinAbGroup dst, IntMatrix matrix);

  /// Skips the well-definedness check (dimensions are still required to match).
  static FinAbHom unchecked(FinAbGroup src, FinAbGroup dst, IntMatrix matrix);

  const FinAbGroup& src() const { return src_; }
  const FinAbGroup& dst() const { return dst_; }
  const IntMatrix& matrix() const { return matrix_; }

  bool well_defined() const;
  int apply(int x) const;
  Table table() const;

 private:
  FinAbGroup src_;
  FinAbGroup dst_;
  IntMatrix matrix_;
};

/// Z^n modulo the column span of `relations`, in invariant-factor form.
/// `projection` maps Z^n coordinates to group coordinates and `section` maps
/// group generators back to Z^n.
struct QuotientPresentation {
  FinAbGroup group;
  IntMatrix projection;
  BigMatrix section;
};

/// A subgroup of the product of cyclic groups Z/moduli[i], with its inclusion
/// matrix into those raw coordinates.
struct SubgroupPresentation {
  FinAbGroup group;
  IntMatrix inclusion;
};

/// Basis (as columns) of the integer kernel of A.
BigMatrix integer_kernel(const BigMatrix& a);
QuotientPresentation quotient_presentation(const BigMatrix& relations);
SubgroupPresentation subgroup_presentation(const std::vector<std::int64_t>& moduli,
                                           const IntMatrix& generators);
SubgroupPresentation kernel_presentation(const std::vector<std::int64_t>& src_moduli, const IntMatrix& m,
                                         const std::vector<std::int64_t>& dst_moduli);

FinAbHom add(const FinAbHom& f, const FinAbHom& g);
FinAbHom negate(const FinAbHom& f);
FinAbHom subtract(const FinAbHom& f, const FinAbHom& g);

struct FinAb {
  using Object = FinAbGroup;
  using Arrow = FinAbHom;
  static constexpr const char* name = "abelian";

  static std::size_t size(const Object& x) { return x.order(); }
  static const Object& src(const Arrow& f) { return f.src(); }
  static const Object& dst(const Arrow& f) { return f.dst(); }
  static int apply(const Arrow& f, int x) { return f.apply(x); }
  static Table table(const Arrow& f) { return f.table(); }

  static Arrow identity(const Object& x);
  static Arrow compose(const Arrow& f, const Arrow& g);
  static bool equal(const Arrow& f, const Arrow& g);
  static bool same_object(const Object& x, const Object& y) { return x == y; }

  static Object zero_object() { return FinAbGroup{}; }
  static Arrow zero_arrow(const Object& x, const Object& y);

  static PullbackCone<Object, Arrow> product(const Object& x, const Object& y);
  static PullbackCone<Object, Arrow> pullback(const Arrow& f, const Arrow& g);
  static KernelResult<Object, Arrow> kernel(const Arrow& f);
  static CoequalizerResult<Object, Arrow> coequalizer(const Arrow& f, const Arrow& g);

  static bool is_regular_epi(const Arrow& f);
  static bool is_mono(const Arrow& f);
  static std::optional<Arrow> factor_through_mono(const Arrow& f, const Arrow& k);

  static std::optional<Arrow> from_table(const Object& x, const Object& y, Table table);
  static std::optional<TupleObject<Object, Arrow>> tuple_subobject(const std::vector<Object>& factors,
                                                                   std::vector<std::vector<int>> tuples);
  static std::vector<Arrow> enumerate_arrows(const Object& x, const Object& y, std::size_t limit);
  static std::string element_label(const Object& x, int e) { return x.label(e); }

  static bool well_formed(const Arrow& f) { return f.well_defined(); }
};

static_assert(BaseCategory<FinAb>);

/// ab_kernel / ab_coequalizer under their module names.
inline KernelResult<FinAbGroup, FinAbHom> ab_kernel(const FinAbHom& f) { return FinAb::kernel(f); }
inline CoequalizerResult<FinAbGroup, FinAbHom> ab_coequalizer(const FinAbHom& f, const FinAbHom& g) {
  return FinAb::coequalizer(f, g);
}

}  // namespace fracta
