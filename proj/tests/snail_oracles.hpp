#pragma once

// Hand-rolled references for homotopy kernels and fibrations, plus a random
// pointed groupoid generator. Independent of the library's limit code.

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fracta/pointed_groupoid.hpp"

namespace oracle {

using namespace fracta;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(int a, int b) { parent[find(a)] = find(b); }
  std::size_t classes() {
    std::set<int> r;
    for (std::size_t x = 0; x < parent.size(); ++x) r.insert(find(static_cast<int>(x)));
    return r.size();
  }
};

// The homotopy kernel of F: A -> B by hand: objects (a, beta: F a -> *), an
// arrow alpha: a -> a' joins (a, F(alpha).beta') to (a', beta').
struct KernelOracle {
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> objects;
  std::size_t pi0 = 0;
  std::size_t pi1 = 0;
  std::vector<int> component;

  template <BaseCategory C>
  explicit KernelOracle(const InternalFunctor<C>& F) {
    const auto& av = F.src->view;
    const auto& bv = F.dst->view;
    for (int a = 0; a < av.n0; ++a)
      for (int b = 0; b < bv.n1; ++b)
        if (bv.d[b] == F.t0[a] && bv.c[b] == 0) {
          index[{a, b}] = static_cast<int>(objects.size());
          objects.push_back({a, b});
        }
    UnionFind uf(objects.size());
    for (int alpha = 0; alpha < av.n1; ++alpha)
      for (const auto& [a2, b2] : objects) {
        if (a2 != av.c[alpha]) continue;
        uf.join(index.at({av.d[alpha], bv.compose(F.t1[alpha], b2)}), index.at({a2, b2}));
      }
    pi0 = uf.classes();
    for (std::size_t x = 0; x < objects.size(); ++x) component.push_back(uf.find(static_cast<int>(x)));
    for (int alpha = 0; alpha < av.n1; ++alpha)
      if (av.d[alpha] == 0 && av.c[alpha] == 0 && F.t1[alpha] == bv.e[0]) ++pi1;
  }
  int component_of(int a, int beta) const { return component[index.at({a, beta})]; }
};

inline bool is_fibration(const InternalFunctor<FinPtdSet>& F) {
  const auto& av = F.src->view;
  const auto& bv = F.dst->view;
  for (int a = 0; a < av.n0; ++a)
    for (int b = 0; b < bv.n1; ++b) {
      if (bv.d[b] != F.t0[a]) continue;
      bool lifted = false;
      for (int alpha = 0; alpha < av.n1 && !lifted; ++alpha) lifted = av.d[alpha] == a && F.t1[alpha] == b;
      if (!lifted) return false;
    }
  return true;
}

// Components of the strict fibre over the basepoint.
inline std::size_t strict_fibre_components(const InternalFunctor<FinPtdSet>& F) {
  const auto& av = F.src->view;
  const auto& bv = F.dst->view;
  UnionFind uf(av.n0);
  std::vector<char> in(av.n0, 0);
  for (int a = 0; a < av.n0; ++a) in[a] = F.t0[a] == 0;
  for (int alpha = 0; alpha < av.n1; ++alpha)
    if (F.t1[alpha] == bv.e[0]) uf.join(av.d[alpha], av.c[alpha]);
  std::set<int> roots;
  for (int a = 0; a < av.n0; ++a)
    if (in[a]) roots.insert(uf.find(a));
  return roots.size();
}

inline std::vector<std::vector<int>> random_group(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0: return {{0}};
    case 1: return cyclic_group(2);
    case 2: return cyclic_group(3);
    default: return klein_group();
  }
}

inline PtdGroupoid random_pointed_groupoid(std::mt19937& rng, int id) {
  int budget = 1 + static_cast<int>(rng() % 5);
  std::vector<ConnectedPiece> pieces;
  while (budget > 0) {
    int n = 1 + static_cast<int>(rng() % budget);
    pieces.push_back(ConnectedPiece{n, random_group(rng)});
    budget -= n;
  }
  return pieces_groupoid(pieces, "random" + std::to_string(id));
}

}  // namespace oracle
