#pragma once

// pi0 (coequalizer of d, c) and pi1 (kernel of <d, c>) of an internal
// groupoid, and the maps they induce on functors.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracta/groupoid.hpp"

namespace fracta {

/// A finite group by multiplication table; element 0 is the identity.
struct GroupTable {
  std::vector<std::vector<int>> mul;
  std::vector<std::string> labels;

  std::size_t order() const { return mul.size(); }
  bool is_group() const;
  int inverse(int x) const;
  friend bool operator==(const GroupTable& a, const GroupTable& b) { return a.mul == b.mul; }
};

/// A bijection a -> b respecting multiplication, if any. Exhaustive; groups
/// above `max_order` elements raise BudgetExceeded.
std::optional<std::vector<int>> group_isomorphism(const GroupTable& a, const GroupTable& b, std::size_t max_order = 64);
bool is_homomorphism(const GroupTable& a, const GroupTable& b, const Table& f);

template <BaseCategory C>
struct Pi0Result {
  typename C::Object object;
  typename C::Arrow eta;  // A0 -> pi0
};

template <BaseCategory C>
struct Pi1Result {
  typename C::Object object;
  typename C::Arrow epsilon;  // pi1 -> A1
  GroupTable group;           // restriction of m
};

template <BaseCategory C>
Pi0Result<C> pi0(const InternalGroupoid<C>& g) {
  auto q = C::coequalizer(g.d, g.c);
  return {q.object, q.quotient};
}

template <BaseCategory C>
Pi1Result<C> pi1(const InternalGroupoid<C>& g) {
  auto prod = C::product(g.A0, g.A0);
  auto dc = pairing<C>(prod, g.d, g.c);
  auto k = C::kernel(dc);
  Pi1Result<C> r{k.object, k.mono, {}};
  auto eps = C::table(k.mono);
  const std::size_t n = eps.size();
  std::vector<int> back(g.view.n1, -1);
  for (std::size_t x = 0; x < n; ++x) back[eps[x]] = static_cast<int>(x);
  r.group.mul.assign(n, std::vector<int>(n));
  for (std::size_t x = 0; x < n; ++x) {
    r.group.labels.push_back(C::element_label(g.A1, eps[x]));
    for (std::size_t y = 0; y < n; ++y) {
      int z = back[g.view.compose(eps[x], eps[y])];
      if (z < 0) fail(ErrorKind::Internal, "basepoint automorphisms not closed under composition");
      r.group.mul[x][y] = z;
    }
  }
  return r;
}

/// The unique u with eta_A.u = F0.eta_B.
template <BaseCategory C>
typename C::Arrow pi0_map(const InternalFunctor<C>& f) {
  auto a = pi0(*f.src);
  auto b = pi0(*f.dst);
  return mediate_coequalizer<C>(a.eta, C::compose(f.F0, b.eta));
}

/// The unique v with v.eps_B = eps_A.F1.
template <BaseCategory C>
typename C::Arrow pi1_map(const InternalFunctor<C>& f) {
  auto a = pi1(*f.src);
  auto b = pi1(*f.dst);
  return mediate_kernel<C>(b.epsilon, C::compose(a.epsilon, f.F1));
}

template <BaseCategory C>
struct HomotopyMaps {
  typename C::Arrow on_pi0;
  typename C::Arrow on_pi1;
  bool pi0_iso = false;
  bool pi1_iso = false;  // bijective homomorphism
};

template <BaseCategory C>
HomotopyMaps<C> homotopy_maps(const InternalFunctor<C>& f) {
  HomotopyMaps<C> h{pi0_map(f), pi1_map(f)};
  h.pi0_iso = is_iso<C>(h.on_pi0);
  auto a = pi1(*f.src);
  auto b = pi1(*f.dst);
  h.pi1_iso = is_iso<C>(h.on_pi1) && is_homomorphism(a.group, b.group, C::table(h.on_pi1));
  return h;
}

/// 2-isomorphic functors induce the same maps on pi0 and pi1.
template <BaseCategory C>
bool same_induced_maps(const NatIso<C>& a) {
  return C::equal(pi0_map(a.from), pi0_map(a.to)) && C::equal(pi1_map(a.from), pi1_map(a.to));
}

}  // namespace fracta
