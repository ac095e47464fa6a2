#pragma once

// Definitions of Grpd<C>; included only by the explicit-instantiation unit.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fracta/abelian_groupoid.hpp"
#include "fracta/groupoid.hpp"
#include "fracta/pointed_groupoid.hpp"

namespace fracta {

namespace grpd_detail {

template <BaseCategory C>
bool well_formed(const typename C::Arrow& f) {
  return C::well_formed(f);
}

inline std::string elem(int x) { return "#" + std::to_string(x); }

template <BaseCategory C>
std::vector<std::array<int, 3>> composition_triples(const Cone<C>& composable, const typename C::Arrow& m) {
  auto p1 = C::table(composable.p1);
  auto p2 = C::table(composable.p2);
  auto mt = C::table(m);
  std::vector<std::array<int, 3>> out(p1.size());
  for (std::size_t z = 0; z < p1.size(); ++z) out[z] = {p1[z], p2[z], mt[z]};
  return out;
}

// Mixed-radix odometer over per-slot choice counts; false when exhausted.
inline bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& sizes) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (++idx[k] < sizes[k]) return true;
    idx[k] = 0;
  }
  return false;
}

}  // namespace grpd_detail

// ---------------------------------------------------------------------------
// Groupoids

template <BaseCategory C>
Groupoid<C> Grpd<C>::raw(Object A0, Object A1, Arrow d, Arrow c, Arrow e, Arrow m, Arrow i, Cone<C> composable,
                         std::string name) {
  auto g = std::make_shared<InternalGroupoid<C>>();
  const int n0 = static_cast<int>(C::size(A0));
  const int n1 = static_cast<int>(C::size(A1));
  g->view = make_view(n0, n1, C::table(d), C::table(c), C::table(e), C::table(i),
                      grpd_detail::composition_triples<C>(composable, m));
  g->A0 = std::move(A0);
  g->A1 = std::move(A1);
  g->d = std::move(d);
  g->c = std::move(c);
  g->e = std::move(e);
  g->i = std::move(i);
  g->m = std::move(m);
  g->composable = std::move(composable);
  g->name = std::move(name);
  return g;
}

template <BaseCategory C>
Groupoid<C> Grpd<C>::assemble(Object A0, Object A1, const Table& d, const Table& c, const Table& e,
                              const std::function<int(int, int)>& compose, std::string name,
                              const std::function<int(int)>& inverse) {
  auto lift = [&](const Object& x, const Object& y, Table t, const char* what) {
    auto a = C::from_table(x, y, std::move(t));
    if (!a) fail(ErrorKind::MalformedInstance, std::string("structure map is not a morphism: ") + what);
    return *a;
  };
  Arrow da = lift(A1, A0, d, "d");
  Arrow ca = lift(A1, A0, c, "c");
  Arrow ea = lift(A0, A1, e, "e");
  Cone<C> composable = C::pullback(ca, da);
  auto p1 = C::table(composable.p1);
  auto p2 = C::table(composable.p2);
  Table mt(p1.size());
  for (std::size_t z = 0; z < p1.size(); ++z) mt[z] = compose(p1[z], p2[z]);
  Arrow ma = lift(composable.apex, A1, std::move(mt), "m");

  const int n1 = static_cast<int>(C::size(A1));
  Table it(n1, -1);
  if (inverse) {
    for (int f = 0; f < n1; ++f) it[f] = inverse(f);
  } else {
    std::vector<std::vector<int>> by_ends(C::size(A0) * C::size(A0));
    const std::size_t n0 = C::size(A0);
    for (int g = 0; g < n1; ++g) by_ends[d[g] * n0 + c[g]].push_back(g);
    for (int f = 0; f < n1; ++f) {
      for (int g : by_ends[c[f] * n0 + d[f]]) {
        if (compose(f, g) == e[d[f]]) {
          it[f] = g;
          break;
        }
      }
      if (it[f] < 0) fail(ErrorKind::MalformedInstance, "arrow without inverse");
    }
  }
  Arrow ia = lift(A1, A1, std::move(it), "i");
  return raw(std::move(A0), std::move(A1), std::move(da), std::move(ca), std::move(ea), std::move(ma),
             std::move(ia), std::move(composable), std::move(name));
}

template <BaseCategory C>
ValidationReport Grpd<C>::validate(const InternalGroupoid<C>& g) {
  auto elem = [&](int f) { return C::element_label(g.A1, f); };
  auto obj = [&](int x) { return C::element_label(g.A0, x); };
  ValidationReport r;
  const auto& v = g.view;
  const std::array<std::pair<const Arrow*, const char*>, 5> maps{
      {{&g.d, "d"}, {&g.c, "c"}, {&g.e, "e"}, {&g.i, "i"}, {&g.m, "m"}}};
  for (auto [arrow, label] : maps)
    if (!grpd_detail::well_formed<C>(*arrow)) r.add("morphism", std::string(label) + " is not a morphism");
  if (!C::same_object(C::dst(g.composable.p1), g.A1) || !C::same_object(C::src(g.m), g.composable.apex))
    r.add("composable pairs", "composable pairs object does not match m");

  // The composable object must be exactly the pairs (f, g) with c f = d g.
  {
    std::size_t expected = 0;
    for (int f = 0; f < v.n1; ++f) expected += v.out[v.c[f]].size();
    auto p1 = C::table(g.composable.p1);
    auto p2 = C::table(g.composable.p2);
    std::set<std::pair<int, int>> seen;
    bool ok = p1.size() == expected;
    for (std::size_t z = 0; z < p1.size() && ok; ++z)
      ok = v.c[p1[z]] == v.d[p2[z]] && seen.insert({p1[z], p2[z]}).second;
    if (!ok) r.add("composable pairs", "not the pullback of c against d");
  }

  for (int x = 0; x < v.n0; ++x) {
    if (v.d[v.e[x]] != x) r.add("e.d = id", "object " + obj(x));
    if (v.c[v.e[x]] != x) r.add("e.c = id", "object " + obj(x));
  }
  bool composition_typed = true;
  for (int f = 0; f < v.n1; ++f) {
    for (int gg : v.out[v.c[f]]) {
      int h = v.compose(f, gg);
      if (h < 0) {
        r.add("composition total", "no composite for " + elem(f) + "," + elem(gg));
        composition_typed = false;
        continue;
      }
      if (v.d[h] != v.d[f]) {
        r.add("m.d = p1.d", elem(f) + "," + elem(gg));
        composition_typed = false;
      }
      if (v.c[h] != v.c[gg]) {
        r.add("m.c = p2.c", elem(f) + "," + elem(gg));
        composition_typed = false;
      }
    }
  }
  auto safe = [&](int f, int gg) { return v.c[f] == v.d[gg] ? v.compose(f, gg) : -1; };
  for (int f = 0; f < v.n1; ++f) {
    if (safe(v.e[v.d[f]], f) != f) r.add("left unit", "arrow " + elem(f));
    if (safe(f, v.e[v.c[f]]) != f) r.add("right unit", "arrow " + elem(f));
  }
  if (composition_typed) {
    bool reported = false;
    for (int f = 0; f < v.n1 && !reported; ++f)
      for (int gg : v.out[v.c[f]]) {
        if (reported) break;
        for (int h : v.out[v.c[gg]]) {
          if (v.compose(v.compose(f, gg), h) != v.compose(f, v.compose(gg, h))) {
            r.add("associativity", elem(f) + "," + elem(gg) + "," + elem(h));
            reported = true;
            break;
          }
        }
      }
  }
  for (int f = 0; f < v.n1; ++f) {
    int fi = v.inv[f];
    if (v.d[fi] != v.c[f]) r.add("i.d = c", "arrow " + elem(f));
    if (v.c[fi] != v.d[f]) r.add("i.c = d", "arrow " + elem(f));
    if (safe(f, fi) != v.e[v.d[f]]) r.add("f.i(f) = e(d f)", "arrow " + elem(f));
    if (safe(fi, f) != v.e[v.c[f]]) r.add("i(f).f = e(c f)", "arrow " + elem(f));
  }
  return r;
}

template <BaseCategory C>
Groupoid<C> Grpd<C>::zero() {
  static const G z = [] {
    Object o = C::zero_object();
    Arrow id = C::identity(o);
    auto composable = C::pullback(id, id);
    Arrow m = composable.p1;
    return raw(o, o, id, id, id, m, id, composable, "0");
  }();
  return z;
}

template <BaseCategory C>
Groupoid<C> Grpd<C>::discrete(const Object& x, std::string name) {
  Arrow id = C::identity(x);
  auto composable = C::pullback(id, id);
  Arrow m = composable.p1;
  return raw(x, x, id, id, id, m, id, composable, std::move(name));
}

template <BaseCategory C>
bool Grpd<C>::same_groupoid(const G& a, const G& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return C::same_object(a->A0, b->A0) && C::same_object(a->A1, b->A1) && a->view.d == b->view.d &&
         a->view.c == b->view.c && a->view.e == b->view.e && a->view.comp == b->view.comp;
}

// ---------------------------------------------------------------------------
// Functors

template <BaseCategory C>
ValidationReport Grpd<C>::validate_functor(const Functor& f) {
  using grpd_detail::elem;
  ValidationReport r;
  const auto& a = f.src->view;
  const auto& b = f.dst->view;
  if (!grpd_detail::well_formed<C>(f.F0)) r.add("morphism", "F0 is not a morphism");
  if (!grpd_detail::well_formed<C>(f.F1)) r.add("morphism", "F1 is not a morphism");
  if (!r.ok()) return r;
  for (int x = 0; x < a.n1; ++x) {
    if (b.d[f.t1[x]] != f.t0[a.d[x]]) r.add("F1.d = d.F0", "arrow " + elem(x));
    if (b.c[f.t1[x]] != f.t0[a.c[x]]) r.add("F1.c = c.F0", "arrow " + elem(x));
  }
  if (!r.ok()) return r;
  for (int x = 0; x < a.n0; ++x)
    if (f.t1[a.e[x]] != b.e[f.t0[x]]) r.add("e.F1 = F0.e", "object " + elem(x));
  for (int x = 0; x < a.n1; ++x) {
    for (int y : a.out[a.c[x]])
      if (f.t1[a.compose(x, y)] != b.compose(f.t1[x], f.t1[y])) {
        r.add("F1 respects m", elem(x) + "," + elem(y));
        break;
      }
    if (f.t1[a.inv[x]] != b.inv[f.t1[x]]) r.add("F1 respects i", "arrow " + elem(x));
  }
  return r;
}

template <BaseCategory C>
std::optional<InternalFunctor<C>> Grpd<C>::try_functor(const G& src, const G& dst, Table t0, Table t1) {
  auto F0 = C::from_table(src->A0, dst->A0, t0);
  if (!F0) return std::nullopt;
  auto F1 = C::from_table(src->A1, dst->A1, t1);
  if (!F1) return std::nullopt;
  Functor f{src, dst, std::move(*F0), std::move(*F1), std::move(t0), std::move(t1), {}};
  if (!validate_functor(f).ok()) return std::nullopt;
  return f;
}

template <BaseCategory C>
InternalFunctor<C> Grpd<C>::functor(const G& src, const G& dst, Table t0, Table t1, std::string name) {
  auto f = try_functor(src, dst, std::move(t0), std::move(t1));
  if (!f) fail(ErrorKind::MalformedInstance, "tables do not define an internal functor");
  f->name = std::move(name);
  return *f;
}

template <BaseCategory C>
InternalFunctor<C> Grpd<C>::from_arrows(const G& src, const G& dst, Arrow F0, Arrow F1, std::string name) {
  Table t0 = C::table(F0);
  Table t1 = C::table(F1);
  return Functor{src, dst, std::move(F0), std::move(F1), std::move(t0), std::move(t1), std::move(name)};
}

template <BaseCategory C>
InternalFunctor<C> Grpd<C>::identity(const G& g) {
  return from_arrows(g, g, C::identity(g->A0), C::identity(g->A1), "id");
}

template <BaseCategory C>
InternalFunctor<C> Grpd<C>::compose(const Functor& f, const Functor& g) {
  if (!same_groupoid(f.dst, g.src)) fail(ErrorKind::CodomainMismatch, "composite of non-composable functors");
  Functor h;
  h.src = f.src;
  h.dst = g.dst;
  h.F0 = C::compose(f.F0, g.F0);
  h.F1 = C::compose(f.F1, g.F1);
  h.t0.resize(f.t0.size());
  for (std::size_t x = 0; x < f.t0.size(); ++x) h.t0[x] = g.t0[f.t0[x]];
  h.t1.resize(f.t1.size());
  for (std::size_t x = 0; x < f.t1.size(); ++x) h.t1[x] = g.t1[f.t1[x]];
  if (!f.name.empty() && !g.name.empty()) h.name = f.name + "." + g.name;
  return h;
}

template <BaseCategory C>
InternalFunctor<C> Grpd<C>::zero_functor(const G& src, const G& dst) {
  return from_arrows(src, dst, C::zero_arrow(src->A0, dst->A0), C::zero_arrow(src->A1, dst->A1), "0");
}

template <BaseCategory C>
bool Grpd<C>::same_functor(const Functor& f, const Functor& g) {
  return same_groupoid(f.src, g.src) && same_groupoid(f.dst, g.dst) && f.t0 == g.t0 && f.t1 == g.t1;
}

// ---------------------------------------------------------------------------
// Natural isos

template <BaseCategory C>
ValidationReport Grpd<C>::validate_nat_iso(const Iso& a) {
  using grpd_detail::elem;
  ValidationReport r;
  if (!same_groupoid(a.from.src, a.to.src) || !same_groupoid(a.from.dst, a.to.dst)) {
    r.add("parallel", "functors are not parallel");
    return r;
  }
  if (!grpd_detail::well_formed<C>(a.t)) r.add("morphism", "component map is not a morphism");
  const auto& x = a.from.src->view;
  const auto& y = a.from.dst->view;
  for (int o = 0; o < x.n0; ++o) {
    if (y.d[a.comp[o]] != a.from.t0[o]) r.add("t.d = F0", "object " + elem(o));
    if (y.c[a.comp[o]] != a.to.t0[o]) r.add("t.c = G0", "object " + elem(o));
  }
  if (!r.ok()) return r;
  for (int f = 0; f < x.n1; ++f) {
    if (y.compose(a.from.t1[f], a.comp[x.c[f]]) != y.compose(a.comp[x.d[f]], a.to.t1[f])) {
      r.add("naturality", "arrow " + elem(f));
      break;
    }
  }
  return r;
}

template <BaseCategory C>
std::optional<NatIso<C>> Grpd<C>::try_nat_iso(const Functor& from, const Functor& to, Table comp) {
  auto t = C::from_table(from.src->A0, from.dst->A1, comp);
  if (!t) return std::nullopt;
  Iso a{from, to, std::move(*t), std::move(comp)};
  if (!validate_nat_iso(a).ok()) return std::nullopt;
  return a;
}

template <BaseCategory C>
NatIso<C> Grpd<C>::nat_iso(const Functor& from, const Functor& to, Table comp) {
  auto a = try_nat_iso(from, to, std::move(comp));
  if (!a) fail(ErrorKind::MalformedInstance, "components do not define a natural isomorphism");
  return *a;
}

template <BaseCategory C>
NatIso<C> Grpd<C>::identity_iso(const Functor& f) {
  Table comp(f.t0.size());
  for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = f.dst->view.e[f.t0[x]];
  return Iso{f, f, C::compose(f.F0, f.dst->e), std::move(comp)};
}

template <BaseCategory C>
NatIso<C> Grpd<C>::vcompose(const Iso& a, const Iso& b) {
  if (!same_functor(a.to, b.from)) fail(ErrorKind::BoundaryMismatch, "vertical composite of non-matching 2-cells");
  const auto& y = a.from.dst->view;
  Table comp(a.comp.size());
  for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = y.compose(a.comp[x], b.comp[x]);
  auto t = lift_or_throw<C>(a.from.src->A0, a.from.dst->A1, comp, "vertical composite");
  return Iso{a.from, b.to, std::move(t), std::move(comp)};
}

template <BaseCategory C>
NatIso<C> Grpd<C>::inverse(const Iso& a) {
  const auto& y = a.from.dst->view;
  Table comp(a.comp.size());
  for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = y.inv[a.comp[x]];
  return Iso{a.to, a.from, C::compose(a.t, a.from.dst->i), std::move(comp)};
}

template <BaseCategory C>
NatIso<C> Grpd<C>::whisker_left(const Functor& k, const Iso& a) {
  if (!same_groupoid(k.dst, a.from.src)) fail(ErrorKind::BoundaryMismatch, "whiskering along a non-composable functor");
  Table comp(k.t0.size());
  for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = a.comp[k.t0[x]];
  return Iso{compose(k, a.from), compose(k, a.to), C::compose(k.F0, a.t), std::move(comp)};
}

template <BaseCategory C>
NatIso<C> Grpd<C>::whisker_right(const Iso& a, const Functor& h) {
  if (!same_groupoid(a.from.dst, h.src)) fail(ErrorKind::BoundaryMismatch, "whiskering along a non-composable functor");
  Table comp(a.comp.size());
  for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = h.t1[a.comp[x]];
  return Iso{compose(a.from, h), compose(a.to, h), C::compose(a.t, h.F1), std::move(comp)};
}

// ---------------------------------------------------------------------------
// Enumeration

template <BaseCategory C>
std::vector<InternalFunctor<C>> Grpd<C>::enumerate_functors(const G& xg, const G& yg, std::size_t cap) {
  const auto& x = xg->view;
  const auto& y = yg->view;
  const std::size_t ncomp = x.roots.size();

  // Per component: members, and the vertex group at the root.
  std::vector<std::vector<int>> members(ncomp);
  for (int o = 0; o < x.n0; ++o) members[x.component[o]].push_back(o);

  struct Local {
    int target_root;
    std::vector<int> hom;  // indexed by position in vertex group
    std::vector<int> star; // image of spanning arrow, per member
  };
  // Homomorphisms Aut(r) -> Aut(t) by backtracking.
  auto vertex_homs = [&](int r, int t) {
    const auto& src = x.hom(r, r);
    const auto& dst = y.hom(t, t);
    std::vector<std::vector<int>> out;
    std::vector<int> pos(x.n1, -1);
    for (std::size_t k = 0; k < src.size(); ++k) pos[src[k]] = static_cast<int>(k);
    std::vector<int> img(src.size(), -1);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == src.size()) {
        for (std::size_t a = 0; a < src.size(); ++a)
          for (std::size_t b = 0; b < src.size(); ++b)
            if (img[pos[x.compose(src[a], src[b])]] != y.compose(img[a], img[b])) return;
        out.push_back(img);
        return;
      }
      for (int cand : dst) {
        if (src[k] == x.e[r] && cand != y.e[t]) continue;
        img[k] = cand;
        bool ok = true;
        for (std::size_t j = 0; j <= k && ok; ++j) {
          for (auto [a, b] : {std::pair{j, k}, std::pair{k, j}}) {
            int prod = pos[x.compose(src[a], src[b])];
            if (prod >= 0 && static_cast<std::size_t>(prod) <= k && img[prod] != y.compose(img[a], img[b])) {
              ok = false;
              break;
            }
          }
        }
        if (ok) rec(k + 1);
        img[k] = -1;
      }
    };
    rec(0);
    return out;
  };

  std::vector<std::vector<Local>> choices(ncomp);
  for (std::size_t k = 0; k < ncomp; ++k) {
    const int r = x.roots[k];
    std::vector<int> targets;
    if (r == 0) {
      targets = {0};
    } else {
      targets.resize(y.n0);
      std::iota(targets.begin(), targets.end(), 0);
    }
    for (int t : targets) {
      for (auto& h : vertex_homs(r, t)) {
        // Star images: every non-root member independently picks an arrow out of t.
        const auto& mem = members[k];
        std::vector<std::size_t> idx(mem.size(), 0), sizes(mem.size(), 1);
        for (std::size_t j = 0; j < mem.size(); ++j)
          if (mem[j] != r) sizes[j] = y.out[t].size();
        do {
          Local l{t, h, std::vector<int>(mem.size())};
          for (std::size_t j = 0; j < mem.size(); ++j) l.star[j] = mem[j] == r ? y.e[t] : y.out[t][idx[j]];
          choices[k].push_back(std::move(l));
          if (choices[k].size() > cap) fail(ErrorKind::BudgetExceeded, "functor enumeration limit reached");
        } while (grpd_detail::advance(idx, sizes));
      }
    }
  }

  std::vector<int> member_pos(x.n0);
  for (std::size_t k = 0; k < ncomp; ++k)
    for (std::size_t j = 0; j < members[k].size(); ++j) member_pos[members[k][j]] = static_cast<int>(j);
  std::vector<std::vector<int>> vpos(ncomp, std::vector<int>(x.n1, -1));
  for (std::size_t k = 0; k < ncomp; ++k) {
    const auto& vg = x.hom(x.roots[k], x.roots[k]);
    for (std::size_t j = 0; j < vg.size(); ++j) vpos[k][vg[j]] = static_cast<int>(j);
  }

  std::vector<Functor> out;
  std::vector<std::size_t> idx(ncomp, 0), sizes(ncomp);
  for (std::size_t k = 0; k < ncomp; ++k) sizes[k] = choices[k].size();
  for (auto s : sizes)
    if (s == 0) return out;
  do {
    Table t0(x.n0), t1(x.n1);
    auto star_of = [&](int o) -> int {
      const auto& l = choices[x.component[o]][idx[x.component[o]]];
      return l.star[member_pos[o]];
    };
    for (int o = 0; o < x.n0; ++o) t0[o] = y.c[star_of(o)];
    for (int f = 0; f < x.n1; ++f) {
      const int k = x.component[x.d[f]];
      const auto& l = choices[k][idx[k]];
      // f = s_x^-1 . (s_x f s_y^-1) . s_y with the middle term in the vertex group.
      int sx = x.spanning[x.d[f]], sy = x.spanning[x.c[f]];
      int mid = x.compose(x.compose(sx, f), x.inv[sy]);
      int img = l.hom[vpos[k][mid]];
      t1[f] = y.compose(y.compose(y.inv[star_of(x.d[f])], img), star_of(x.c[f]));
    }
    if (auto fn = try_functor(xg, yg, std::move(t0), std::move(t1))) {
      out.push_back(std::move(*fn));
      if (out.size() > cap) fail(ErrorKind::BudgetExceeded, "functor enumeration limit reached");
    }
  } while (grpd_detail::advance(idx, sizes));
  return out;
}

template <BaseCategory C>
std::vector<NatIso<C>> Grpd<C>::enumerate_nat_isos(const Functor& from, const Functor& to, std::size_t cap) {
  const auto& x = from.src->view;
  const auto& y = from.dst->view;
  const std::size_t ncomp = x.roots.size();
  std::vector<std::vector<int>> root_choices(ncomp);
  for (std::size_t k = 0; k < ncomp; ++k) {
    int r = x.roots[k];
    if (r == 0)
      root_choices[k] = {y.e[from.t0[0]]};
    else
      root_choices[k] = y.hom(from.t0[r], to.t0[r]);
  }
  std::vector<Iso> out;
  std::vector<std::size_t> idx(ncomp, 0), sizes(ncomp);
  for (std::size_t k = 0; k < ncomp; ++k) {
    sizes[k] = root_choices[k].size();
    if (sizes[k] == 0) return out;
  }
  do {
    Table comp(x.n0);
    for (int o = 0; o < x.n0; ++o) {
      int k = x.component[o];
      int s = x.spanning[o];
      comp[o] = y.compose(y.compose(y.inv[from.t1[s]], root_choices[k][idx[k]]), to.t1[s]);
    }
    if (auto a = try_nat_iso(from, to, std::move(comp))) {
      out.push_back(std::move(*a));
      if (out.size() > cap) fail(ErrorKind::BudgetExceeded, "natural iso enumeration limit reached");
    }
  } while (grpd_detail::advance(idx, sizes));
  return out;
}

// ---------------------------------------------------------------------------
// Strong h-pullbacks

template <BaseCategory C>
IsoSquare<C> Grpd<C>::strong_h_pullback(const Functor& F, const Functor& Gf) {
  if (!same_groupoid(F.dst, Gf.dst)) fail(ErrorKind::CodomainMismatch, "cospan functors have different codomains");
  const auto& A = *F.src;
  const auto& B = *F.dst;
  const auto& Cg = *Gf.src;
  const auto& bv = B.view;
  const auto& av = A.view;
  const auto& cv = Cg.view;

  // Objects (a, beta, c) with beta: F0 a -> G0 c.
  auto X = C::pullback(F.F0, B.d);
  auto P0 = C::pullback(C::compose(X.p2, B.c), Gf.F0);
  std::vector<Arrow> obj_proj{C::compose(P0.p1, X.p1), C::compose(P0.p1, X.p2), P0.p2};
  // Arrows (alpha, beta, gamma) with beta: F0 d(alpha) -> G0 d(gamma).
  auto Y = C::pullback(C::compose(A.d, F.F0), B.d);
  auto P1 = C::pullback(C::compose(Y.p2, B.c), C::compose(Cg.d, Gf.F0));
  std::vector<Arrow> arr_proj{C::compose(P1.p1, Y.p1), C::compose(P1.p1, Y.p2), P1.p2};

  auto objs = TupleIndex::build<C>(C::size(P0.apex), obj_proj);
  auto arrs = TupleIndex::build<C>(C::size(P1.apex), arr_proj);
  const int n0 = static_cast<int>(objs.size());
  const int n1 = static_cast<int>(arrs.size());

  auto target_beta = [&](int alpha, int beta, int gamma) {
    return bv.compose(bv.compose(bv.inv[F.t1[alpha]], beta), Gf.t1[gamma]);
  };
  Table d(n1), c(n1), e(n0);
  for (int z = 0; z < n1; ++z) {
    const auto& t = arrs.tuple(z);
    d[z] = objs.at({av.d[t[0]], t[1], cv.d[t[2]]});
    c[z] = objs.at({av.c[t[0]], target_beta(t[0], t[1], t[2]), cv.c[t[2]]});
  }
  for (int p = 0; p < n0; ++p) {
    const auto& t = objs.tuple(p);
    e[p] = arrs.at({av.e[t[0]], t[1], cv.e[t[2]]});
  }
  auto compose_fn = [&](int f, int g) {
    const auto& a = arrs.tuple(f);
    const auto& b = arrs.tuple(g);
    return arrs.at({av.compose(a[0], b[0]), a[1], cv.compose(a[2], b[2])});
  };
  auto inverse_fn = [&](int f) {
    const auto& a = arrs.tuple(f);
    return arrs.at({av.inv[a[0]], target_beta(a[0], a[1], a[2]), cv.inv[a[2]]});
  };
  std::string name = "hpb(" + (F.name.empty() ? "F" : F.name) + "," + (Gf.name.empty() ? "G" : Gf.name) + ")";
  auto P = assemble(P0.apex, P1.apex, d, c, e, compose_fn, name, inverse_fn);

  Square sq;
  sq.F = F;
  sq.G = Gf;
  sq.P = P;
  sq.Gp = from_arrows(P, F.src, obj_proj[0], arr_proj[0], "G'");
  sq.Fp = from_arrows(P, Gf.src, obj_proj[2], arr_proj[2], "F'");
  Table pi(n0);
  for (int p = 0; p < n0; ++p) pi[p] = bv.inv[objs.tuple(p)[1]];
  sq.pi = nat_iso(compose(sq.Fp, Gf), compose(sq.Gp, F), std::move(pi));
  return sq;
}

template <BaseCategory C>
BikernelResult<C> Grpd<C>::bikernel(const Functor& F) {
  auto z = zero();
  auto sq = strong_h_pullback(F, zero_functor(z, F.dst));
  BikernelResult<C> out;
  out.K = sq.P;
  out.KF = sq.Gp;
  out.kF = inverse(sq.pi);
  out.square = std::move(sq);
  return out;
}

template <BaseCategory C>
WeakEquivalenceReport<C> Grpd<C>::is_weak_equivalence(const Functor& F) {
  const auto& A = *F.src;
  const auto& B = *F.dst;
  auto prodA = C::product(A.A0, A.A0);
  auto prodB = C::product(B.A0, B.A0);
  auto FxF = mediate_pullback<C>(prodB, C::compose(prodA.p1, F.F0), C::compose(prodA.p2, F.F0));
  auto dcB = pairing<C>(prodB, B.d, B.c);
  auto Q = C::pullback(FxF, dcB);
  auto dcA = pairing<C>(prodA, A.d, A.c);
  WeakEquivalenceReport<C> r;
  r.comparison = mediate_pullback<C>(Q, dcA, F.F1);
  r.fully_faithful = is_iso<C>(r.comparison);
  auto E = C::pullback(F.F0, B.d);
  r.eso = C::compose(E.p2, B.c);
  r.essentially_surjective = C::is_regular_epi(r.eso);
  return r;
}

template <BaseCategory C>
ValidationReport Grpd<C>::validate_square(const Square& sq) {
  ValidationReport r;
  if (!same_groupoid(sq.F.dst, sq.G.dst)) r.add("cospan", "functors do not share a codomain");
  if (!same_groupoid(sq.Gp.src, sq.P) || !same_groupoid(sq.Fp.src, sq.P)) r.add("legs", "legs do not start at P");
  if (!same_groupoid(sq.Gp.dst, sq.F.src) || !same_groupoid(sq.Fp.dst, sq.G.src))
    r.add("legs", "legs do not land on the cospan");
  if (!r.ok()) return r;
  r.merge(validate(*sq.P), "P: ");
  r.merge(validate_functor(sq.Gp), "G': ");
  r.merge(validate_functor(sq.Fp), "F': ");
  if (!same_functor(sq.pi.from, compose(sq.Fp, sq.G)) || !same_functor(sq.pi.to, compose(sq.Gp, sq.F)))
    r.add("filler boundary", "pi is not F'.G => G'.F");
  else
    r.merge(validate_nat_iso(sq.pi), "pi: ");
  return r;
}

// ---------------------------------------------------------------------------
// Bipullback certification

template <BaseCategory C>
Mediator<C> Grpd<C>::canonical_mediator(const Square& hpb, const SquareCone<C>& cone) {
  // T(x) = (H x, mu(x)^-1, K x), T(f) = (H f, ., K f); gamma and delta are identities.
  const auto& P = hpb.P->view;
  const auto& bv = hpb.F.dst->view;
  const auto& xv = cone.H.src->view;
  // Locate P objects and arrows by their projections.
  std::map<std::array<int, 3>, int> objs;
  for (int p = 0; p < P.n0; ++p) objs[{hpb.Gp.t0[p], bv.inv[hpb.pi.comp[p]], hpb.Fp.t0[p]}] = p;
  std::map<std::array<int, 3>, int> arrs;
  for (int z = 0; z < P.n1; ++z) arrs[{hpb.Gp.t1[z], P.d[z], hpb.Fp.t1[z]}] = z;
  Table t0(xv.n0), t1(xv.n1);
  for (int x = 0; x < xv.n0; ++x) {
    auto it = objs.find({cone.H.t0[x], bv.inv[cone.mu.comp[x]], cone.K.t0[x]});
    if (it == objs.end()) fail(ErrorKind::ConeMalformed, "cone is not over the h-pullback's cospan");
    t0[x] = it->second;
  }
  for (int f = 0; f < xv.n1; ++f) t1[f] = arrs.at({cone.H.t1[f], t0[xv.d[f]], cone.K.t1[f]});
  auto T = functor(cone.H.src, hpb.P, std::move(t0), std::move(t1), "T");
  return {T, identity_iso(compose(T, hpb.Gp)), identity_iso(compose(T, hpb.Fp))};
}

template <BaseCategory C>
std::optional<Mediator<C>> Grpd<C>::find_mediator(const Square& sq, const SquareCone<C>& cone,
                                                  std::size_t step_budget, bool* exhausted) {
  if (exhausted) *exhausted = false;
  const auto& xv = cone.H.src->view;
  const auto& pv = sq.P->view;
  const auto& av = sq.F.src->view;
  const auto& cv = sq.G.src->view;
  const auto& bv = sq.F.dst->view;
  if (!same_groupoid(cone.H.dst, sq.F.src) || !same_groupoid(cone.K.dst, sq.G.src))
    fail(ErrorKind::ConeMalformed, "cone legs do not land on the cospan");

  struct Cand {
    int p, g, dl;
  };
  // Object candidates (p, gamma_x, delta_x) with G1(delta).mu = pi_p.F1(gamma).
  std::vector<std::vector<Cand>> cands(xv.n0);
  for (int x = 0; x < xv.n0; ++x) {
    for (int p = 0; p < pv.n0; ++p) {
      if (x == 0 && p != 0) continue;
      for (int g : av.hom(sq.Gp.t0[p], cone.H.t0[x])) {
        if (x == 0 && g != av.e[cone.H.t0[0]]) continue;
        for (int dl : cv.hom(sq.Fp.t0[p], cone.K.t0[x])) {
          if (x == 0 && dl != cv.e[cone.K.t0[0]]) continue;
          if (bv.compose(sq.G.t1[dl], cone.mu.comp[x]) == bv.compose(sq.pi.comp[p], sq.F.t1[g]))
            cands[x].push_back({p, g, dl});
        }
      }
    }
    // Identity components first, so canonical mediators are found immediately.
    std::stable_sort(cands[x].begin(), cands[x].end(), [&](const Cand& a, const Cand& b) {
      auto key = [&](const Cand& k) { return (av.d[k.g] == av.c[k.g] && k.g == av.e[av.d[k.g]] ? 0 : 1) +
                                             (cv.d[k.dl] == cv.c[k.dl] && k.dl == cv.e[cv.d[k.dl]] ? 0 : 1); };
      return key(a) < key(b);
    });
    if (cands[x].empty()) return std::nullopt;
  }

  std::vector<Cand> chosen(xv.n0);
  std::size_t steps = 0;
  std::optional<Mediator<C>> found;

  auto arrow_cands = [&](int f) {
    const Cand& a = chosen[xv.d[f]];
    const Cand& b = chosen[xv.c[f]];
    int want_a = av.compose(av.compose(a.g, cone.H.t1[f]), av.inv[b.g]);
    int want_c = cv.compose(cv.compose(a.dl, cone.K.t1[f]), cv.inv[b.dl]);
    std::vector<int> out;
    if (f == xv.e[xv.d[f]]) {
      out.push_back(pv.e[a.p]);
      return out;
    }
    for (int t : pv.hom(a.p, b.p))
      if (sq.Gp.t1[t] == want_a && sq.Fp.t1[t] == want_c) out.push_back(t);
    return out;
  };

  std::function<bool(int)> assign_objects;
  std::function<bool(int, Table&)> assign_arrows = [&](int f, Table& t1) -> bool {
    if (++steps > step_budget) return false;
    if (f == xv.n1) {
      Table t0(xv.n0), gt(xv.n0), dt(xv.n0);
      for (int x = 0; x < xv.n0; ++x) {
        t0[x] = chosen[x].p;
        gt[x] = chosen[x].g;
        dt[x] = chosen[x].dl;
      }
      auto T = try_functor(cone.H.src, sq.P, std::move(t0), t1);
      if (!T) return false;
      auto gamma = try_nat_iso(compose(*T, sq.Gp), cone.H, std::move(gt));
      if (!gamma) return false;
      auto delta = try_nat_iso(compose(*T, sq.Fp), cone.K, std::move(dt));
      if (!delta) return false;
      found = Mediator<C>{std::move(*T), std::move(*gamma), std::move(*delta)};
      return true;
    }
    for (int t : arrow_cands(f)) {
      t1[f] = t;
      // Functoriality against already chosen arrows.
      bool ok = true;
      for (int g = 0; g <= f && ok; ++g) {
        if (xv.c[g] == xv.d[f]) {
          int h = xv.compose(g, f);
          if (h <= f && t1[h] != pv.compose(t1[g], t)) ok = false;
        }
        if (xv.c[f] == xv.d[g] && g <= f) {
          int h = xv.compose(f, g);
          if (h <= f && t1[h] != pv.compose(t, t1[g])) ok = false;
        }
      }
      if (ok && assign_arrows(f + 1, t1)) return true;
      if (steps > step_budget) return false;
    }
    return false;
  };
  assign_objects = [&](int x) -> bool {
    if (++steps > step_budget) return false;
    if (x == xv.n0) {
      Table t1(xv.n1, -1);
      return assign_arrows(0, t1);
    }
    for (const auto& cand : cands[x]) {
      chosen[x] = cand;
      bool ok = true;
      for (int f : xv.out[x]) {
        if (xv.c[f] <= x && arrow_cands(f).empty()) {
          ok = false;
          break;
        }
      }
      for (int y = 0; y < x && ok; ++y)
        for (int f : xv.hom(y, x))
          if (arrow_cands(f).empty()) {
            ok = false;
            break;
          }
      if (ok && assign_objects(x + 1)) return true;
      if (steps > step_budget) return false;
    }
    return false;
  };
  assign_objects(0);
  if (!found && steps > step_budget && exhausted) *exhausted = true;
  return found;
}

template <BaseCategory C>
std::vector<SquareCone<C>> Grpd<C>::enumerate_cones(const Square& sq, const G& apex, std::size_t cap,
                                                    bool* truncated) {
  if (truncated) *truncated = false;
  std::vector<SquareCone<C>> out;
  auto Hs = enumerate_functors(apex, sq.F.src, cap);
  auto Ks = enumerate_functors(apex, sq.G.src, cap);
  for (const auto& H : Hs) {
    auto HF = compose(H, sq.F);
    for (const auto& K : Ks) {
      auto KG = compose(K, sq.G);
      for (auto& mu : enumerate_nat_isos(KG, HF, cap)) {
        if (out.size() >= cap) {
          if (truncated) *truncated = true;
          return out;
        }
        out.push_back({H, K, std::move(mu)});
      }
    }
  }
  return out;
}

namespace grpd_detail {

// Checks BP2 for one pair (T, S): the whiskering map phi -> (phi.F', phi.G')
// must be a bijection onto the compatible pairs (alpha, beta).
template <BaseCategory C>
std::optional<std::string> check_bp2_pair(const IsoSquare<C>& sq, const InternalFunctor<C>& T,
                                          const InternalFunctor<C>& S, std::size_t cap) {
  using Gr = Grpd<C>;
  auto TF = Gr::compose(T, sq.Fp), SF = Gr::compose(S, sq.Fp);
  auto TG = Gr::compose(T, sq.Gp), SG = Gr::compose(S, sq.Gp);
  auto alphas = Gr::enumerate_nat_isos(TF, SF, cap);
  if (alphas.empty()) return std::nullopt;
  auto betas = Gr::enumerate_nat_isos(TG, SG, cap);
  if (betas.empty()) return std::nullopt;
  const auto& bv = sq.F.dst->view;
  const int n = static_cast<int>(T.t0.size());
  std::set<std::pair<Table, Table>> compatible;
  for (const auto& a : alphas)
    for (const auto& b : betas) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x)
        ok = bv.compose(sq.G.t1[a.comp[x]], sq.pi.comp[S.t0[x]]) == bv.compose(sq.pi.comp[T.t0[x]], sq.F.t1[b.comp[x]]);
      if (ok) compatible.insert({a.comp, b.comp});
    }
  std::map<std::pair<Table, Table>, int> hits;
  for (const auto& phi : Gr::enumerate_nat_isos(T, S, cap)) {
    Table a(n), b(n);
    for (int x = 0; x < n; ++x) {
      a[x] = sq.Fp.t1[phi.comp[x]];
      b[x] = sq.Gp.t1[phi.comp[x]];
    }
    auto key = std::make_pair(std::move(a), std::move(b));
    if (!compatible.count(key)) return std::string("whiskered 2-cell is not compatible with the filler");
    ++hits[key];
  }
  for (const auto& k : compatible) {
    auto it = hits.find(k);
    if (it == hits.end()) return std::string("existence: compatible pair without a 2-cell");
    if (it->second > 1) return std::string("uniqueness: " + std::to_string(it->second) + " 2-cells over one pair");
  }
  return std::nullopt;
}

}  // namespace grpd_detail

template <BaseCategory C>
BipullbackReport Grpd<C>::check_bipullback(const Square& sq, const Budget& budget, const std::vector<G>& extra) {
  BipullbackReport rep;
  auto boundary = validate_square(sq);
  if (!boundary.ok()) {
    rep.bp1 = rep.bp2 = false;
    for (const auto& f : boundary.failures) rep.failures.push_back({"boundary: " + f.name, f.detail});
    return rep;
  }
  std::vector<G> apexes = canonical_apexes();
  for (const auto& g : extra) apexes.push_back(g);
  for (const auto& X : apexes) {
    if (object_count(X) > budget.objects || arrow_count(X) > budget.arrows) continue;
    ++rep.apexes;
    const std::string apex_name = X->name.empty() ? "apex" : X->name;
    bool truncated = false;
    std::vector<SquareCone<C>> cones;
    try {
      cones = enumerate_cones(sq, X, budget.cones, &truncated);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      truncated = true;
    }
    rep.truncated = rep.truncated || truncated;
    for (std::size_t k = 0; k < cones.size(); ++k) {
      ++rep.cones;
      bool exhausted = false;
      auto med = find_mediator(sq, cones[k], budget.search, &exhausted);
      if (!med) {
        if (exhausted) {
          rep.truncated = true;
        } else {
          rep.bp1 = false;
          rep.failures.push_back({"BP1", "apex " + apex_name + ", cone " + std::to_string(k) + ": no mediator"});
        }
      }
    }
    std::vector<Functor> Ts;
    try {
      Ts = enumerate_functors(X, sq.P, budget.functors);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      rep.truncated = true;
      continue;
    }
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < Ts.size() && pairs < budget.pairs; ++a) {
      for (std::size_t b = 0; b < Ts.size(); ++b) {
        if (pairs >= budget.pairs) {
          rep.truncated = true;
          break;
        }
        ++pairs;
        ++rep.pairs;
        auto problem = grpd_detail::check_bp2_pair<C>(sq, Ts[a], Ts[b], budget.functors);
        if (problem) {
          rep.bp2 = false;
          rep.failures.push_back(
              {"BP2", "apex " + apex_name + ", pair (" + std::to_string(a) + "," + std::to_string(b) + "): " + *problem});
        }
      }
    }
  }
  return rep;
}

template <BaseCategory C>
IsoSquare<C> Grpd<C>::paste(const Square& left, const Square& right) {
  if (!same_functor(left.F, right.Fp))
    fail(ErrorKind::BoundaryMismatch, "left square is not over the right square's leg");
  Square out;
  out.F = right.F;
  out.G = compose(left.G, right.G);
  out.P = left.P;
  out.Gp = compose(left.Gp, right.Gp);
  out.Fp = left.Fp;
  out.pi = vcompose(whisker_right(left.pi, right.G), whisker_left(left.Gp, right.pi));
  // Re-associate the boundary functors so they compare equal to composites of the legs.
  out.pi.from = compose(out.Fp, out.G);
  out.pi.to = compose(out.Gp, out.F);
  return out;
}

template <BaseCategory C>
IsoSquare<C> Grpd<C>::transpose(const Square& sq) {
  Square out;
  out.F = sq.G;
  out.G = sq.F;
  out.P = sq.P;
  out.Gp = sq.Fp;
  out.Fp = sq.Gp;
  out.pi = inverse(sq.pi);
  return out;
}

template <BaseCategory C>
std::vector<typename Grpd<C>::G> Grpd<C>::canonical_apexes() {
  if constexpr (std::is_same_v<C, FinPtdSet>) {
    return {zero(), interval_groupoid(), cyclic_groupoid(2), discrete_groupoid(2)};
  } else {
    FinAbGroup z2({2});
    auto interval = boundary_groupoid(FinAb::identity(z2), "interval");
    auto loop = boundary_groupoid(FinAb::zero_arrow(z2, FinAb::zero_object()), "Z/2");
    return {zero(), interval, loop, discrete(z2, "discrete(2)")};
  }
}

template <BaseCategory C>
std::optional<InternalFunctor<C>> Grpd<C>::find_equivalence(const G& xg, const G& yg) {
  const auto& x = xg->view;
  const auto& y = yg->view;
  const std::size_t n = x.roots.size();
  if (n != y.roots.size()) return std::nullopt;
  if (same_groupoid(xg, yg)) {
    auto F = identity(xg);
    F.dst = yg;
    F.name = "equivalence";
    return F;
  }

  // A bijective homomorphism Aut(r) -> Aut(t), listed by position in x.hom(r, r).
  auto vertex_iso = [&](int r, int t) -> std::optional<std::vector<int>> {
    const auto& src = x.hom(r, r);
    const auto& dst = y.hom(t, t);
    if (src.size() != dst.size()) return std::nullopt;
    std::vector<int> pos(x.n1, -1);
    for (std::size_t k = 0; k < src.size(); ++k) pos[src[k]] = static_cast<int>(k);
    std::vector<int> img(src.size(), -1);
    std::set<int> used;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) {
      if (k == src.size()) return true;
      for (int cand : dst) {
        if (used.count(cand) || (src[k] == x.e[r]) != (cand == y.e[t])) continue;
        img[k] = cand;
        bool ok = true;
        for (std::size_t j = 0; j <= k && ok; ++j)
          for (auto [a, b] : {std::pair{j, k}, std::pair{k, j}}) {
            int prod = pos[x.compose(src[a], src[b])];
            if (prod >= 0 && static_cast<std::size_t>(prod) <= k && img[prod] != y.compose(img[a], img[b])) ok = false;
          }
        if (!ok) continue;
        used.insert(cand);
        if (rec(k + 1)) return true;
        used.erase(cand);
      }
      img[k] = -1;
      return false;
    };
    if (!rec(0)) return std::nullopt;
    return img;
  };

  std::vector<int> target(n, -1);
  std::vector<std::vector<int>> iso(n);
  std::vector<char> taken(n, 0);
  std::function<bool(std::size_t)> assign = [&](std::size_t k) {
    if (k == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (taken[t]) continue;
      // the basepoint component goes to the basepoint component
      if ((x.roots[k] == 0) != (y.roots[t] == 0)) continue;
      auto h = vertex_iso(x.roots[k], y.roots[t]);
      if (!h) continue;
      taken[t] = 1;
      target[k] = static_cast<int>(t);
      iso[k] = std::move(*h);
      if (assign(k + 1)) return true;
      taken[t] = 0;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  std::vector<std::vector<int>> vpos(n, std::vector<int>(x.n1, -1));
  for (std::size_t k = 0; k < n; ++k) {
    const auto& vg = x.hom(x.roots[k], x.roots[k]);
    for (std::size_t j = 0; j < vg.size(); ++j) vpos[k][vg[j]] = static_cast<int>(j);
  }
  Table t0(x.n0), t1(x.n1);
  for (int o = 0; o < x.n0; ++o) t0[o] = y.roots[target[x.component[o]]];
  for (int f = 0; f < x.n1; ++f) {
    const int k = x.component[x.d[f]];
    int mid = x.compose(x.compose(x.spanning[x.d[f]], f), x.inv[x.spanning[x.c[f]]]);
    t1[f] = iso[k][vpos[k][mid]];
  }
  if (auto F = try_functor(xg, yg, std::move(t0), std::move(t1))) {
    if (!is_weak_equivalence(*F).holds()) fail(ErrorKind::Internal, "component matching is not an equivalence");
    F->name = "equivalence";
    return F;
  }
  // The object-wise choice need not be a morphism in the base; search the internal functors instead.
  Budget b;
  std::vector<Functor> all;
  try {
    all = enumerate_functors(xg, yg, b.functors);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    return std::nullopt;
  }
  for (auto& F : all)
    if (is_weak_equivalence(F).holds()) {
      F.name = "equivalence";
      return F;
    }
  return std::nullopt;
}

}  // namespace fracta
