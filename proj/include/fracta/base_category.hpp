#pragma once

// Executable interface of a finite pointed exact base category.
//
// Every instance is concrete: objects have finitely many elements indexed
// 0..size-1 with the basepoint (zero element) at index 0, and arrows are
// determined by their element tables. Limits and colimits are supplied by the
// instance; arrows between constructed objects are usually computed on
// elements and lifted back with `from_table`, which rejects tables that are not
// morphisms of the instance.

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fracta/error.hpp"

namespace fracta {

using Table = std::vector<int>;

template <class Obj, class Arr>
struct PullbackCone {
  Obj apex;
  Arr p1;
  Arr p2;
};

template <class Obj, class Arr>
struct KernelResult {
  Obj object;
  Arr mono;
};

template <class Obj, class Arr>
struct CoequalizerResult {
  Obj object;
  Arr quotient;
};

/// Subobject of a finite product, described by the tuples it contains.
template <class Obj, class Arr>
struct TupleObject {
  Obj object;
  std::vector<Arr> projections;
};

template <class C>
concept BaseCategory = requires(const typename C::Object& x, const typename C::Arrow& f,
                                const std::vector<typename C::Object>& factors,
                                std::vector<std::vector<int>> tuples, Table table, int e) {
  { C::name } -> std::convertible_to<const char*>;
  { C::size(x) } -> std::convertible_to<std::size_t>;
  { C::src(f) } -> std::convertible_to<typename C::Object>;
  { C::dst(f) } -> std::convertible_to<typename C::Object>;
  { C::apply(f, e) } -> std::convertible_to<int>;
  { C::table(f) } -> std::convertible_to<Table>;
  { C::identity(x) } -> std::same_as<typename C::Arrow>;
  { C::compose(f, f) } -> std::same_as<typename C::Arrow>;
  { C::equal(f, f) } -> std::convertible_to<bool>;
  { C::same_object(x, x) } -> std::convertible_to<bool>;
  { C::zero_object() } -> std::same_as<typename C::Object>;
  { C::zero_arrow(x, x) } -> std::same_as<typename C::Arrow>;
  { C::product(x, x) } -> std::same_as<PullbackCone<typename C::Object, typename C::Arrow>>;
  { C::pullback(f, f) } -> std::same_as<PullbackCone<typename C::Object, typename C::Arrow>>;
  { C::kernel(f) } -> std::same_as<KernelResult<typename C::Object, typename C::Arrow>>;
  { C::coequalizer(f, f) } -> std::same_as<CoequalizerResult<typename C::Object, typename C::Arrow>>;
  { C::is_regular_epi(f) } -> std::convertible_to<bool>;
  { C::is_mono(f) } -> std::convertible_to<bool>;
  { C::factor_through_mono(f, f) } -> std::same_as<std::optional<typename C::Arrow>>;
  { C::from_table(x, x, table) } -> std::same_as<std::optional<typename C::Arrow>>;
  { C::tuple_subobject(factors, tuples) }
      -> std::same_as<std::optional<TupleObject<typename C::Object, typename C::Arrow>>>;
  { C::enumerate_arrows(x, x, std::size_t{}) } -> std::same_as<std::vector<typename C::Arrow>>;
  { C::element_label(x, e) } -> std::convertible_to<std::string>;
};

template <class C>
using Cone = PullbackCone<typename C::Object, typename C::Arrow>;

// ---------------------------------------------------------------------------
// Element-level helpers shared by every instance.

template <BaseCategory C>
typename C::Arrow lift_or_throw(const typename C::Object& src, const typename C::Object& dst,
                                Table table, const char* what) {
  auto lifted = C::from_table(src, dst, std::move(table));
  if (!lifted) fail(ErrorKind::Internal, std::string("table is not a morphism: ") + what);
  return *lifted;
}

/// Looks up elements of an object by the tuple of their images under a family of arrows.
class TupleIndex {
 public:
  TupleIndex() = default;

  template <BaseCategory C>
  static TupleIndex build(std::size_t size, std::span<const typename C::Arrow> projections) {
    TupleIndex index;
    index.arity_ = projections.size();
    std::vector<Table> tables;
    for (const auto& p : projections) tables.push_back(C::table(p));
    index.tuples_.reserve(size);
    for (std::size_t x = 0; x < size; ++x) {
      std::vector<int> key(index.arity_);
      for (std::size_t k = 0; k < index.arity_; ++k) key[k] = tables[k][x];
      index.map_.emplace(key, static_cast<int>(x));
      index.tuples_.push_back(std::move(key));
    }
    return index;
  }

  int find(const std::vector<int>& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? -1 : it->second;
  }
  int at(const std::vector<int>& key) const {
    int v = find(key);
    if (v < 0) fail(ErrorKind::Internal, "tuple not present in limit object");
    return v;
  }
  const std::vector<int>& tuple(int x) const { return tuples_[x]; }
  std::size_t size() const { return tuples_.size(); }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
      return h;
    }
  };
  std::size_t arity_ = 0;
  std::unordered_map<std::vector<int>, int, Hash> map_;
  std::vector<std::vector<int>> tuples_;
};

/// The unique u: W -> P with u.p1 = h1 and u.p2 = h2.
template <BaseCategory C>
typename C::Arrow mediate_pullback(const Cone<C>& cone, const typename C::Arrow& h1,
                                   const typename C::Arrow& h2) {
  if (!C::same_object(C::src(h1), C::src(h2)))
    fail(ErrorKind::ConeMalformed, "cone legs have different domains");
  std::vector<typename C::Arrow> legs{cone.p1, cone.p2};
  auto index = TupleIndex::build<C>(C::size(cone.apex), legs);
  auto t1 = C::table(h1);
  auto t2 = C::table(h2);
  Table out(t1.size());
  for (std::size_t w = 0; w < t1.size(); ++w) {
    int p = index.find({t1[w], t2[w]});
    if (p < 0) fail(ErrorKind::ConeMalformed, "cone does not commute over the cospan");
    out[w] = p;
  }
  return lift_or_throw<C>(C::src(h1), cone.apex, std::move(out), "pullback mediator");
}

/// The unique u with u.k = h, for k a mono through which h factors.
template <BaseCategory C>
typename C::Arrow mediate_kernel(const typename C::Arrow& k, const typename C::Arrow& h) {
  auto u = C::factor_through_mono(h, k);
  if (!u) fail(ErrorKind::NoInducedMap, "arrow does not factor through the kernel");
  return *u;
}

/// The unique u with q.u = h, for q a regular epi that h coequalizes along.
template <BaseCategory C>
typename C::Arrow mediate_coequalizer(const typename C::Arrow& q, const typename C::Arrow& h) {
  auto tq = C::table(q);
  auto th = C::table(h);
  Table out(C::size(C::dst(q)), -1);
  for (std::size_t x = 0; x < tq.size(); ++x) {
    int& slot = out[tq[x]];
    if (slot < 0) {
      slot = th[x];
    } else if (slot != th[x]) {
      fail(ErrorKind::NoInducedMap, "arrow does not coequalize the kernel pair of the quotient");
    }
  }
  for (int v : out)
    if (v < 0) fail(ErrorKind::NoInducedMap, "quotient is not surjective");
  auto lifted = C::from_table(C::dst(q), C::dst(h), std::move(out));
  if (!lifted) fail(ErrorKind::NoInducedMap, "induced map is not a morphism");
  return *lifted;
}

template <BaseCategory C>
bool is_iso(const typename C::Arrow& f) {
  return C::is_mono(f) && C::is_regular_epi(f);
}

template <BaseCategory C>
typename C::Arrow inverse(const typename C::Arrow& f) {
  if (!is_iso<C>(f)) fail(ErrorKind::Internal, "inverse of a non-isomorphism");
  auto t = C::table(f);
  Table inv(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) inv[t[x]] = static_cast<int>(x);
  return lift_or_throw<C>(C::dst(f), C::src(f), std::move(inv), "inverse");
}

template <BaseCategory C>
bool is_zero_arrow(const typename C::Arrow& f) {
  for (int v : C::table(f))
    if (v != 0) return false;
  return true;
}

/// The pairing <f, g> : X -> Y x Z into the instance's product.
template <BaseCategory C>
typename C::Arrow pairing(const Cone<C>& product, const typename C::Arrow& f,
                          const typename C::Arrow& g) {
  return mediate_pullback<C>(product, f, g);
}

/// All arrows u: W -> P with u.p_k = legs_k for every k, enumerated through the
/// element-wise candidates and filtered to morphisms. Returns the count,
/// capped at `cap`.
template <BaseCategory C>
std::size_t count_mediators(const typename C::Object& w, const typename C::Object& p,
                            std::span<const typename C::Arrow> projections,
                            std::span<const typename C::Arrow> legs, std::size_t cap = 2) {
  const std::size_t nw = C::size(w);
  const std::size_t np = C::size(p);
  std::vector<Table> proj;
  for (const auto& a : projections) proj.push_back(C::table(a));
  std::vector<Table> leg;
  for (const auto& a : legs) leg.push_back(C::table(a));
  std::vector<std::vector<int>> candidates(nw);
  for (std::size_t x = 0; x < nw; ++x) {
    for (std::size_t y = 0; y < np; ++y) {
      bool ok = true;
      for (std::size_t k = 0; k < proj.size() && ok; ++k) ok = proj[k][y] == leg[k][x];
      if (ok) candidates[x].push_back(static_cast<int>(y));
    }
    if (candidates[x].empty()) return 0;
  }
  std::size_t found = 0;
  Table current(nw);
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (found >= cap) return;
    if (x == nw) {
      if (C::from_table(w, p, current)) ++found;
      return;
    }
    for (int y : candidates[x]) {
      current[x] = y;
      rec(x + 1);
      if (found >= cap) return;
    }
  };
  rec(0);
  return found;
}

}  // namespace fracta
