#pragma once

// Definitions of Fract<C>; included only by the explicit-instantiation unit.

#include <map>

#include "fracta/bifractions.hpp"

namespace fracta {

namespace bif_detail {

inline void note(AxiomVerdict& v, std::string w) {
  ++v.checked;
  if (v.witnesses.size() < 8) v.witnesses.push_back(std::move(w));
}

inline void refute(AxiomVerdict& v, std::string c) {
  ++v.checked;
  if (!v.holds) return;
  v.holds = false;
  v.counterexample = std::move(c);
}

template <BaseCategory C>
std::string describe(const InternalFunctor<C>& f) {
  auto name = [](const Groupoid<C>& g) { return g->name.empty() ? std::string("?") : g->name; };
  return (f.name.empty() ? std::string("functor") : f.name) + ": " + name(f.src) + " -> " + name(f.dst);
}

template <BaseCategory C>
std::vector<InternalFunctor<C>> weqs(const Groupoid<C>& e, const Groupoid<C>& v, std::size_t cap) {
  auto fs = Grpd<C>::enumerate_functors(e, v, cap);
  std::erase_if(fs, [](const auto& f) { return !Fract<C>::is_weq(f); });
  return fs;
}

}  // namespace bif_detail

template <BaseCategory C>
bool Fract<C>::is_weq(const Functor& f) {
  return Grpd<C>::is_weak_equivalence(f).holds();
}

template <BaseCategory C>
FractionSpan<C> Fract<C>::span(const Functor& W, const Functor& F) {
  if (!Grpd<C>::same_groupoid(W.src, F.src)) fail(ErrorKind::NotAFraction, "legs do not share a domain");
  if (!is_weq(W)) fail(ErrorKind::NotAFraction, "left leg is not a weak equivalence");
  return {W, F};
}

template <BaseCategory C>
FractionSpan<C> Fract<C>::identity_span(const G& g) {
  auto id = Grpd<C>::identity(g);
  return {id, id};
}

template <BaseCategory C>
FractionSpan<C> Fract<C>::p_sigma(const Functor& F) {
  return {Grpd<C>::identity(F.src), F};
}

template <BaseCategory C>
bool Fract<C>::same_span(const Span& a, const Span& b) {
  return Grpd<C>::same_functor(a.W, b.W) && Grpd<C>::same_functor(a.F, b.F);
}

template <BaseCategory C>
int Fract<C>::lift(const Functor& W, int x, int y, int a) {
  for (int u : W.src->view.hom(x, y))
    if (W.t1[u] == a) return u;
  return -1;
}

template <BaseCategory C>
std::optional<std::pair<InternalFunctor<C>, NatIso<C>>> Fract<C>::lift_through(const Functor& U, const Functor& V) {
  using Gr = Grpd<C>;
  const auto& xv = U.src->view;
  const auto& yv = V.src->view;
  const auto& zv = U.dst->view;
  Table t0(xv.n0), sigma(xv.n0), t1(xv.n1);
  for (int x = 0; x < xv.n0; ++x) {
    t0[x] = -1;
    if (x == 0) {
      if (V.t0[0] != U.t0[0]) return std::nullopt;
      t0[0] = 0;
      sigma[0] = zv.e[U.t0[0]];
      continue;
    }
    for (int y = 0; y < yv.n0 && t0[x] < 0; ++y) {
      const auto& h = zv.hom(V.t0[y], U.t0[x]);
      if (h.empty()) continue;
      t0[x] = y;
      sigma[x] = h.front();
    }
    if (t0[x] < 0) return std::nullopt;
  }
  for (int f = 0; f < xv.n1; ++f) {
    int x = xv.d[f], x2 = xv.c[f];
    t1[f] = lift(V, t0[x], t0[x2], zv.compose(zv.compose(sigma[x], U.t1[f]), zv.inv[sigma[x2]]));
    if (t1[f] < 0) return std::nullopt;
  }
  auto R = Gr::try_functor(U.src, V.src, std::move(t0), std::move(t1));
  if (!R) return std::nullopt;
  auto s = Gr::try_nat_iso(Gr::compose(*R, V), U, std::move(sigma));
  if (!s) return std::nullopt;
  return std::make_pair(std::move(*R), std::move(*s));
}

template <BaseCategory C>
IsoSquare<C> Fract<C>::composition_square(const Span& a, const Span& b) {
  if (!Grpd<C>::same_groupoid(a.F.dst, b.W.dst)) fail(ErrorKind::BoundaryMismatch, "spans are not consecutive");
  return Grpd<C>::strong_h_pullback(a.F, b.W);
}

template <BaseCategory C>
FractionSpan<C> Fract<C>::compose(const Span& a, const Span& b) {
  auto sq = composition_square(a, b);
  return span(Grpd<C>::compose(sq.Gp, a.W), Grpd<C>::compose(sq.Fp, b.F));
}

// ---------------------------------------------------------------------------
// Quadruples

template <BaseCategory C>
ValidationReport Fract<C>::validate_quadruple(const Quad& q) {
  using Gr = Grpd<C>;
  ValidationReport r;
  if (!Gr::same_groupoid(q.from.W.dst, q.to.W.dst) || !Gr::same_groupoid(q.from.F.dst, q.to.F.dst))
    r.add("boundary", "spans are not parallel");
  if (!Gr::same_groupoid(q.U1.src, q.U2.src)) r.add("apex", "U1 and U2 have different domains");
  if (!Gr::same_groupoid(q.U1.dst, q.from.W.src)) r.add("apex", "U1 does not land on the source apex");
  if (!Gr::same_groupoid(q.U2.dst, q.to.W.src)) r.add("apex", "U2 does not land on the target apex");
  if (!r.ok()) return r;
  auto check = [&](const Iso& a, const Functor& from, const Functor& to, const std::string& name) {
    if (!Gr::same_functor(a.from, from) || !Gr::same_functor(a.to, to)) {
      r.add(name, "wrong source or target functor");
      return;
    }
    auto v = Gr::validate_nat_iso(a);
    if (!v.ok()) r.add(name, v.failures.front().name);
  };
  check(q.alpha1, Gr::compose(q.U1, q.from.W), Gr::compose(q.U2, q.to.W), "alpha1 boundary");
  check(q.alpha2, Gr::compose(q.U1, q.from.F), Gr::compose(q.U2, q.to.F), "alpha2 boundary");
  if (!is_weq(Gr::compose(q.U1, q.from.W))) r.add("U1.W in Sigma");
  return r;
}

template <BaseCategory C>
TwoCellQuadruple<C> Fract<C>::quadruple(const Span& from, const Span& to, const Functor& U1, const Functor& U2,
                                        Table alpha1, Table alpha2) {
  using Gr = Grpd<C>;
  return {from,
          to,
          U1,
          U2,
          Gr::nat_iso(Gr::compose(U1, from.W), Gr::compose(U2, to.W), std::move(alpha1)),
          Gr::nat_iso(Gr::compose(U1, from.F), Gr::compose(U2, to.F), std::move(alpha2))};
}

template <BaseCategory C>
TwoCellQuadruple<C> Fract<C>::identity_quadruple(const Span& s) {
  using Gr = Grpd<C>;
  auto id = Gr::identity(s.W.src);
  return {s, s, id, id, Gr::identity_iso(Gr::compose(id, s.W)), Gr::identity_iso(Gr::compose(id, s.F))};
}

template <BaseCategory C>
TwoCellQuadruple<C> Fract<C>::whisker_p_sigma(const Quad& q, const Functor& h) {
  using Gr = Grpd<C>;
  Quad out = q;
  out.from.F = Gr::compose(q.from.F, h);
  out.to.F = Gr::compose(q.to.F, h);
  out.alpha2 = Gr::whisker_right(q.alpha2, h);
  return out;
}

template <BaseCategory C>
Table Fract<C>::two_cell_invariant(const Quad& q) {
  const auto& W = q.from.W;
  const auto& V = q.to.W;
  const auto& av = W.dst->view;
  const auto& bv = q.from.F.dst->view;
  const auto& ev = q.U1.src->view;
  auto first_over = [&](const Functor& f, int n, int a) -> std::pair<int, int> {
    for (int x = 0; x < n; ++x) {
      const auto& h = av.hom(f.t0[x], a);
      if (!h.empty()) return {x, h.front()};
    }
    fail(ErrorKind::NotAFraction, "left leg is not essentially surjective");
  };
  auto U1W = Grpd<C>::compose(q.U1, W);
  Table phi(av.n0);
  for (int a = 0; a < av.n0; ++a) {
    auto [c, w] = first_over(W, W.src->view.n0, a);
    auto [d, v] = first_over(V, V.src->view.n0, a);
    auto [e, omega] = first_over(U1W, ev.n0, a);
    int u = lift(W, c, q.U1.t0[e], av.compose(w, av.inv[omega]));
    int t = lift(V, d, q.U2.t0[e], av.compose(av.compose(v, av.inv[omega]), q.alpha1.comp[e]));
    if (u < 0 || t < 0) fail(ErrorKind::NotAFraction, "left leg is not fully faithful");
    phi[a] = bv.compose(bv.compose(q.from.F.t1[u], q.alpha2.comp[e]), bv.inv[q.to.F.t1[t]]);
  }
  return phi;
}

template <BaseCategory C>
std::optional<QuadrupleWitness<C>> Fract<C>::canonical_witness(const Quad& p, const Quad& q) {
  using Gr = Grpd<C>;
  const auto& av = p.from.W.dst->view;
  // R1 = 1 and (R2, gamma1) a lift of U1 through U1'; gamma2 is then forced
  // by the first diagram.
  if (auto lifted = lift_through(p.U1, q.U1)) {
    auto id = Gr::identity(p.U1.src);
    const auto& [R2, gamma1] = *lifted;
    const int n = p.U1.src->view.n0;
    Table g2(n);
    for (int e = 0; e < n; ++e) {
      int a = av.compose(av.compose(av.inv[p.alpha1.comp[e]], av.inv[p.from.W.t1[gamma1.comp[e]]]),
                         q.alpha1.comp[R2.t0[e]]);
      g2[e] = lift(p.to.W, p.U2.t0[e], q.U2.t0[R2.t0[e]], a);
      if (g2[e] < 0) return std::nullopt;
    }
    auto gamma2 = Gr::try_nat_iso(Gr::compose(id, p.U2), Gr::compose(R2, q.U2), std::move(g2));
    if (!gamma2) return std::nullopt;
    auto g1 = Gr::nat_iso(Gr::compose(R2, q.U1), Gr::compose(id, p.U1), gamma1.comp);
    return QuadrupleWitness<C>{id, R2, std::move(g1), std::move(*gamma2)};
  }
  // Otherwise over the h-pullback of U1.W and U1'.W.
  auto H = Gr::strong_h_pullback(Gr::compose(p.U1, p.from.W), Gr::compose(q.U1, q.from.W));
  const auto& R1 = H.Gp;
  const auto& R2 = H.Fp;
  const int n = H.P->view.n0;
  Table g1(n), g2(n);
  for (int h = 0; h < n; ++h) {
    int e1 = R1.t0[h], e2 = R2.t0[h];
    g1[h] = lift(p.from.W, q.U1.t0[e2], p.U1.t0[e1], H.pi.comp[h]);
    int a = av.compose(av.compose(av.inv[p.alpha1.comp[e1]], av.inv[H.pi.comp[h]]), q.alpha1.comp[e2]);
    g2[h] = lift(p.to.W, p.U2.t0[e1], q.U2.t0[e2], a);
    if (g1[h] < 0 || g2[h] < 0) return std::nullopt;
  }
  auto gamma1 = Gr::try_nat_iso(Gr::compose(R2, q.U1), Gr::compose(R1, p.U1), std::move(g1));
  auto gamma2 = Gr::try_nat_iso(Gr::compose(R1, p.U2), Gr::compose(R2, q.U2), std::move(g2));
  if (!gamma1 || !gamma2) return std::nullopt;
  return QuadrupleWitness<C>{R1, R2, std::move(*gamma1), std::move(*gamma2)};
}

template <BaseCategory C>
ValidationReport Fract<C>::verify_witness(const Quad& p, const Quad& q, const QuadrupleWitness<C>& w) {
  using Gr = Grpd<C>;
  ValidationReport r;
  if (!Gr::same_functor(w.gamma1.from, Gr::compose(w.R2, q.U1)) || !Gr::same_functor(w.gamma1.to, Gr::compose(w.R1, p.U1)))
    r.add("gamma1 boundary");
  if (!Gr::same_functor(w.gamma2.from, Gr::compose(w.R1, p.U2)) || !Gr::same_functor(w.gamma2.to, Gr::compose(w.R2, q.U2)))
    r.add("gamma2 boundary");
  if (!r.ok()) return r;
  if (!is_weq(Gr::compose(Gr::compose(w.R1, p.U1), p.from.W))) r.add("R1.U1.W in Sigma");
  auto side = [&](const Iso& a, const Iso& b, const Functor& left, const Functor& right) {
    auto lhs = Gr::vcompose(Gr::vcompose(Gr::whisker_right(w.gamma1, left), Gr::whisker_left(w.R1, a)),
                            Gr::whisker_right(w.gamma2, right));
    return Gr::same_iso(lhs, Gr::whisker_left(w.R2, b));
  };
  if (!side(p.alpha1, q.alpha1, p.from.W, p.to.W)) r.add("first diagram");
  if (!side(p.alpha2, q.alpha2, p.from.F, p.to.F)) r.add("second diagram");
  return r;
}

template <BaseCategory C>
QuadrupleEquivalence<C> Fract<C>::quadruple_equivalent(const Quad& p, const Quad& q, const Budget& budget) {
  using Gr = Grpd<C>;
  if (!same_span(p.from, q.from) || !same_span(p.to, q.to))
    fail(ErrorKind::BoundaryMismatch, "quadruples are not between the same spans");
  QuadrupleEquivalence<C> out;
  if (Gr::same_groupoid(p.U1.src, q.U1.src) && Gr::same_functor(p.U1, q.U1) && Gr::same_functor(p.U2, q.U2) &&
      Gr::same_iso(p.alpha1, q.alpha1) && Gr::same_iso(p.alpha2, q.alpha2)) {
    auto id = Gr::identity(p.U1.src);
    out.verdict = Verdict::yes;
    out.witness = QuadrupleWitness<C>{id, id, Gr::identity_iso(Gr::compose(id, p.U1)),
                                      Gr::identity_iso(Gr::compose(id, p.U2))};
    out.searched = "identical";
    return out;
  }
  auto phi_p = two_cell_invariant(p);
  auto phi_q = two_cell_invariant(q);
  for (std::size_t a = 0; a < phi_p.size(); ++a)
    if (phi_p[a] != phi_q[a]) {
      out.verdict = Verdict::no;
      out.obstruction = "two-cell invariant differs at object #" + std::to_string(a);
      out.searched = "invariant";
      return out;
    }
  if (auto w = canonical_witness(p, q); w && verify_witness(p, q, *w).ok()) {
    out.verdict = Verdict::yes;
    out.witness = std::move(w);
    out.searched = "canonical witness";
    return out;
  }
  // Fallback: R1 = 1 on the first apex, R2 and the gammas enumerated.
  auto id = Gr::identity(p.U1.src);
  std::size_t examined = 0;
  try {
    for (const auto& R2 : Gr::enumerate_functors(p.U1.src, q.U1.src, budget.functors)) {
      ++examined;
      for (const auto& g1 : Gr::enumerate_nat_isos(Gr::compose(R2, q.U1), Gr::compose(id, p.U1), budget.functors))
        for (const auto& g2 : Gr::enumerate_nat_isos(Gr::compose(id, p.U2), Gr::compose(R2, q.U2), budget.functors)) {
          QuadrupleWitness<C> w{id, R2, g1, g2};
          if (verify_witness(p, q, w).ok()) {
            out.verdict = Verdict::yes;
            out.witness = std::move(w);
            out.searched = "functors between the apexes";
            return out;
          }
        }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  out.searched = "canonical witness; " + std::to_string(examined) + " functors between the apexes";
  return out;
}

template <BaseCategory C>
std::optional<TwoCellQuadruple<C>> Fract<C>::find_span_iso(const Span& a, const Span& b, std::size_t cap) {
  using Gr = Grpd<C>;
  if (!Gr::same_groupoid(a.W.dst, b.W.dst) || !Gr::same_groupoid(a.F.dst, b.F.dst))
    fail(ErrorKind::BoundaryMismatch, "spans are not parallel");
  if (auto lifted = lift_through(a.W, b.W)) {
    auto id = Gr::identity(a.W.src);
    const auto& [U2, sigma] = *lifted;
    auto alpha1 = Gr::nat_iso(Gr::compose(id, a.W), Gr::compose(U2, b.W), Gr::inverse(sigma).comp);
    auto alphas = Gr::enumerate_nat_isos(Gr::compose(id, a.F), Gr::compose(U2, b.F), cap);
    if (alphas.empty()) return std::nullopt;
    return Quad{a, b, id, U2, alpha1, alphas.front()};
  }
  auto H = Gr::strong_h_pullback(a.W, b.W);
  auto alpha1 = Gr::inverse(H.pi);
  auto alphas = Gr::enumerate_nat_isos(Gr::compose(H.Gp, a.F), Gr::compose(H.Fp, b.F), cap);
  if (alphas.empty()) return std::nullopt;
  return Quad{a, b, H.Gp, H.Fp, alpha1, alphas.front()};
}

// ---------------------------------------------------------------------------
// BF axioms

template <BaseCategory C>
BFReport Fract<C>::check_bf_axioms(const BFSample<C>& sample, std::size_t cap) {
  using Gr = Grpd<C>;
  using bif_detail::describe;
  using bif_detail::note;
  using bif_detail::refute;
  BFReport r;
  const auto& fs = sample.functors;
  std::vector<bool> weq(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) weq[k] = is_weq(fs[k]);
  auto parallel = [](const Functor& f, const Functor& g) {
    return Gr::same_groupoid(f.src, g.src) && Gr::same_groupoid(f.dst, g.dst);
  };
  auto isomorphic = [&](const Functor& f, const Functor& g) { return !Gr::enumerate_nat_isos(f, g, cap).empty(); };

  // BF1: identities, and every sampled functor with a pseudo-inverse in the sample.
  auto& bf1 = r.bf[0];
  for (const auto& g : sample.groupoids) {
    if (is_weq(Gr::identity(g)))
      note(bf1, "identity of " + g->name);
    else
      refute(bf1, "identity of " + g->name + " is not a weak equivalence");
  }
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto& f = fs[k];
    for (const auto& h : fs) {
      if (!Gr::same_groupoid(h.src, f.dst) || !Gr::same_groupoid(h.dst, f.src)) continue;
      if (!isomorphic(Gr::compose(f, h), Gr::identity(f.src)) || !isomorphic(Gr::compose(h, f), Gr::identity(f.dst)))
        continue;
      if (weq[k])
        note(bf1, describe(f));
      else
        refute(bf1, describe(f) + " is an equivalence but not a weak equivalence");
      break;
    }
  }

  // BF2
  auto& bf2 = r.bf[1];
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (!weq[i] || !weq[j] || !Gr::same_groupoid(fs[i].dst, fs[j].src)) continue;
      if (is_weq(Gr::compose(fs[i], fs[j])))
        note(bf2, describe(fs[i]) + " then " + describe(fs[j]));
      else
        refute(bf2, describe(fs[i]) + " then " + describe(fs[j]));
    }

  // BF3: the strong h-pullback is the filler; its leg opposite S must be in Sigma.
  auto& bf3 = r.bf[2];
  for (std::size_t i = 0; i < fs.size() && bf3.checked < cap; ++i)
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (!weq[j] || !Gr::same_groupoid(fs[i].dst, fs[j].dst)) continue;
      auto sq = Gr::strong_h_pullback(fs[i], fs[j]);
      std::string what = "F = " + describe(fs[i]) + ", S = " + describe(fs[j]);
      if (Gr::validate_square(sq).ok() && is_weq(sq.Gp))
        note(bf3, what);
      else
        refute(bf3, what);
    }

  // BF4: V = 1 and beta the lift of alpha through W. Any other (V', beta')
  // sampled must be V'.beta.
  auto& bf4 = r.bf[3];
  for (std::size_t k = 0; k < fs.size() && bf4.checked < cap; ++k) {
    if (!weq[k]) continue;
    const auto& W = fs[k];
    for (const auto& X : sample.groupoids) {
      if (bf4.checked >= cap) break;
      auto Fs = Gr::enumerate_functors(X, W.src, cap);
      std::vector<Functor> Vs;
      for (const auto& Y : sample.groupoids) {
        if (Y->view.n0 > X->view.n0 + 1) continue;
        for (auto& v : bif_detail::weqs<C>(Y, X, cap)) Vs.push_back(std::move(v));
      }
      for (const auto& F : Fs)
        for (const auto& Gf : Fs)
          for (const auto& alpha : Gr::enumerate_nat_isos(Gr::compose(F, W), Gr::compose(Gf, W), cap)) {
            std::string what = "W = " + describe(W) + " over " + X->name;
            Table comp(X->view.n0);
            bool lifted = true;
            for (int x = 0; x < X->view.n0 && lifted; ++x) {
              comp[x] = lift(W, F.t0[x], Gf.t0[x], alpha.comp[x]);
              lifted = comp[x] >= 0;
            }
            auto beta = lifted ? Gr::try_nat_iso(F, Gf, comp) : std::nullopt;
            if (!beta || !Gr::same_iso(Gr::whisker_right(*beta, W), alpha)) {
              refute(bf4, what + ": no beta with beta.W = alpha");
              continue;
            }
            bool unique = true;
            for (const auto& V : Vs) {
              auto Valpha = Gr::whisker_left(V, alpha);
              auto Vbeta = Gr::whisker_left(V, *beta);
              for (const auto& b2 : Gr::enumerate_nat_isos(Gr::compose(V, F), Gr::compose(V, Gf), cap))
                if (Gr::same_iso(Gr::whisker_right(b2, W), Valpha) && !Gr::same_iso(b2, Vbeta)) unique = false;
            }
            if (unique)
              note(bf4, what);
            else
              refute(bf4, what + ": a second solution is not V'.beta");
          }
    }
  }

  // BF5
  auto& bf5 = r.bf[4];
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      if (!parallel(fs[i], fs[j]) || !isomorphic(fs[i], fs[j])) continue;
      if (weq[i] == weq[j])
        note(bf5, describe(fs[i]) + " ~ " + describe(fs[j]));
      else
        refute(bf5, describe(fs[i]) + " ~ " + describe(fs[j]));
    }
  return r;
}

// ---------------------------------------------------------------------------
// Bipullbacks

template <BaseCategory C>
FractionSquare<C> Fract<C>::bipullback_of_fractions(const Span& a, const Span& b) {
  if (!Grpd<C>::same_groupoid(a.F.dst, b.F.dst)) fail(ErrorKind::BoundaryMismatch, "spans do not share a target");
  if (!is_weq(a.W) || !is_weq(b.W)) fail(ErrorKind::NotAFraction, "left leg is not a weak equivalence");
  return square_from_core(a, b, Grpd<C>::strong_h_pullback(a.F, b.F));
}

template <BaseCategory C>
FractionSquare<C> Fract<C>::square_from_core(const Span& a, const Span& b, const IsoSquare<C>& core) {
  using Gr = Grpd<C>;
  const auto& Tp = core.Gp;
  const auto& Rp = core.Fp;
  auto id = Gr::identity(core.P);
  Square sq;
  sq.a = a;
  sq.b = b;
  sq.core = core;
  sq.leg_a = {id, Gr::compose(Tp, a.W)};
  sq.leg_c = {id, Gr::compose(Rp, b.W)};
  // Sections of the two composite apexes over P.
  auto h1 = composition_square(sq.leg_c, b);
  auto h2 = composition_square(sq.leg_a, a);
  auto U1 = Gr::canonical_mediator(h1, {id, Rp, Gr::identity_iso(Gr::compose(Rp, b.W))}).T;
  auto U2 = Gr::canonical_mediator(h2, {id, Tp, Gr::identity_iso(Gr::compose(Tp, a.W))}).T;
  Span from{Gr::compose(h1.Gp, id), Gr::compose(h1.Fp, b.F)};
  Span to{Gr::compose(h2.Gp, id), Gr::compose(h2.Fp, a.F)};
  sq.filler = quadruple(from, to, U1, U2, Gr::identity_iso(id).comp, core.pi.comp);
  return sq;
}

template <BaseCategory C>
FractionSquare<C> Fract<C>::reindex_corner(const Square& sq, const Functor& K) {
  using Gr = Grpd<C>;
  IsoSquare<C> core;
  core.F = sq.core.F;
  core.G = sq.core.G;
  core.P = K.src;
  core.Gp = Gr::compose(K, sq.core.Gp);
  core.Fp = Gr::compose(K, sq.core.Fp);
  core.pi = Gr::whisker_left(K, sq.core.pi);
  return square_from_core(sq.a, sq.b, core);
}

template <BaseCategory C>
ValidationReport Fract<C>::validate_fraction_square(const Square& sq) {
  using Gr = Grpd<C>;
  ValidationReport r;
  if (!is_weq(sq.a.W)) r.add("leg not in Sigma", "left leg of the first span");
  if (!is_weq(sq.b.W)) r.add("leg not in Sigma", "left leg of the second span");
  if (!Gr::same_functor(sq.core.F, sq.a.F) || !Gr::same_functor(sq.core.G, sq.b.F))
    r.add("boundary", "corner square is not over the right legs");
  r.merge(Gr::validate_square(sq.core), "boundary: ");
  r.merge(validate_quadruple(sq.filler), "filler: ");
  return r;
}

template <BaseCategory C>
FractionCone<C> Fract<C>::cone_of(const Square& sq) {
  using Gr = Grpd<C>;
  auto id = Gr::identity(sq.core.P);
  return {{id, sq.core.Gp}, {id, sq.core.Fp}, id, id, Gr::identity_iso(Gr::compose(id, id)), sq.core.pi};
}

template <BaseCategory C>
FractionCone<C> Fract<C>::cone_from_functors(const Square& sq, const SquareCone<C>& cone) {
  using Gr = Grpd<C>;
  (void)sq;
  auto id = Gr::identity(cone.H.src);
  return {{id, cone.H}, {id, cone.K}, id, id, Gr::identity_iso(Gr::compose(id, id)), cone.mu};
}

template <BaseCategory C>
ValidationReport Fract<C>::validate_cone(const Square& sq, const Cone& k) {
  using Gr = Grpd<C>;
  ValidationReport r;
  if (!Gr::same_groupoid(k.x.W.dst, k.y.W.dst)) r.add("apex", "spans start at different groupoids");
  if (!Gr::same_groupoid(k.x.W.src, k.x.F.src) || !Gr::same_groupoid(k.y.W.src, k.y.F.src))
    r.add("apex", "span legs do not share a domain");
  if (!Gr::same_groupoid(k.U1.src, k.U2.src) || !Gr::same_groupoid(k.U1.dst, k.y.W.src) ||
      !Gr::same_groupoid(k.U2.dst, k.x.W.src))
    r.add("apex", "U1, U2 do not land on the span apexes");
  if (!Gr::same_groupoid(k.x.F.dst, sq.core.F.src) || !Gr::same_groupoid(k.y.F.dst, sq.core.G.src))
    r.add("legs", "spans do not land on the cospan");
  if (!r.ok()) return r;
  if (!is_weq(k.x.W) || !is_weq(k.y.W) || !is_weq(Gr::compose(k.U1, k.y.W))) r.add("Sigma", "a left leg is not a weak equivalence");
  if (!Gr::same_functor(k.mu1.from, Gr::compose(k.U1, k.y.W)) || !Gr::same_functor(k.mu1.to, Gr::compose(k.U2, k.x.W)) ||
      !Gr::validate_nat_iso(k.mu1).ok())
    r.add("mu1");
  if (!Gr::same_functor(k.mu2.from, Gr::compose(Gr::compose(k.U1, k.y.F), sq.core.G)) ||
      !Gr::same_functor(k.mu2.to, Gr::compose(Gr::compose(k.U2, k.x.F), sq.core.F)) ||
      !Gr::validate_nat_iso(k.mu2).ok())
    r.add("mu2");
  return r;
}

template <BaseCategory C>
std::optional<FractionMediator<C>> Fract<C>::mediate_bp1(const Square& sq, const Cone& k, std::size_t step_budget,
                                                         bool* exhausted) {
  using Gr = Grpd<C>;
  auto v = validate_cone(sq, k);
  if (!v.ok()) fail(ErrorKind::ConeMalformed, v.failures.front().name + ": " + v.failures.front().detail);
  auto H = Gr::compose(k.U2, k.x.F);
  auto K = Gr::compose(k.U1, k.y.F);
  auto med = Gr::find_mediator(sq.core, {H, K, k.mu2}, step_budget, exhausted);
  if (!med) return std::nullopt;
  const auto& L = med->T;
  const auto& Tp = sq.core.Gp;
  const auto& Rp = sq.core.Fp;
  auto idE = Gr::identity(k.U1.src);
  FractionMediator<C> out;
  out.m = {Gr::compose(k.U1, k.y.W), L};
  out.gamma_hat = {{out.m.W, Gr::compose(L, Tp)}, k.x, idE, k.U2, k.mu1, med->gamma};
  out.delta_hat = {{out.m.W, Gr::compose(L, Rp)}, k.y, idE, k.U1, Gr::identity_iso(out.m.W), med->delta};
  auto lhs = Gr::vcompose(Gr::whisker_right(med->delta, sq.core.G), k.mu2);
  auto rhs = Gr::vcompose(Gr::whisker_left(L, sq.core.pi), Gr::whisker_right(med->gamma, sq.core.F));
  out.compatible = Gr::same_iso(lhs, rhs);
  out.core = std::move(*med);
  return out;
}

template <BaseCategory C>
std::vector<FractionCone<C>> Fract<C>::enumerate_cones(const Square& sq, const G& V, const std::vector<G>& sources,
                                                       std::size_t cap, bool* truncated) {
  using Gr = Grpd<C>;
  if (truncated) *truncated = false;
  std::vector<Cone> out;
  const auto& R = sq.core.F;
  const auto& T = sq.core.G;
  for (const auto& E : sources) {
    auto ws = bif_detail::weqs<C>(E, V, cap);
    if (ws.empty()) continue;
    auto hs = Gr::enumerate_functors(E, R.src, cap);
    auto ks = Gr::enumerate_functors(E, T.src, cap);
    auto idE = Gr::identity(E);
    for (const auto& w : ws)
      for (const auto& w2 : ws)
        for (const auto& mu1 : Gr::enumerate_nat_isos(w, w2, cap))
          for (const auto& h : hs)
            for (const auto& kk : ks)
              for (const auto& nu : Gr::enumerate_nat_isos(Gr::compose(kk, T), Gr::compose(h, R), cap)) {
                if (out.size() >= cap) {
                  if (truncated) *truncated = true;
                  return out;
                }
                out.push_back({{w2, h}, {w, kk}, idE, idE, mu1, nu});
              }
  }
  return out;
}

namespace bif_detail {

// BP2 for 1-cells (w, H1), (w, H2) into the corner: the 2-cell built from a
// compatible pair must whisker back to it, and any other candidate whose
// whiskerings are equivalent to the pair must be equivalent to it.
template <BaseCategory C>
std::optional<std::string> check_fraction_bp2_pair(const FractionSquare<C>& sq, const InternalFunctor<C>& w,
                                                   const InternalFunctor<C>& H1, const InternalFunctor<C>& H2,
                                                   const Budget& budget) {
  using Gr = Grpd<C>;
  using Fr = Fract<C>;
  const auto& core = sq.core;
  const auto& Tp = core.Gp;
  const auto& Rp = core.Fp;
  auto alphas = Gr::enumerate_nat_isos(Gr::compose(H1, Rp), Gr::compose(H2, Rp), budget.functors);
  if (alphas.empty()) return std::nullopt;
  auto betas = Gr::enumerate_nat_isos(Gr::compose(H1, Tp), Gr::compose(H2, Tp), budget.functors);
  if (betas.empty()) return std::nullopt;
  auto psis = Gr::enumerate_nat_isos(H1, H2, budget.functors);
  const auto& bv = core.F.dst->view;
  const int n = H1.src->view.n0;
  auto idE = Gr::identity(H1.src);
  auto quad = [&](const InternalFunctor<C>& f1, const InternalFunctor<C>& f2, const NatIso<C>& a2) {
    return TwoCellQuadruple<C>{{w, f1}, {w, f2}, idE, idE, Gr::identity_iso(Gr::compose(idE, w)), a2};
  };
  for (const auto& a : alphas)
    for (const auto& b : betas) {
      bool compatible = true;
      for (int x = 0; x < n && compatible; ++x)
        compatible = bv.compose(core.G.t1[a.comp[x]], core.pi.comp[H2.t0[x]]) ==
                     bv.compose(core.pi.comp[H1.t0[x]], core.F.t1[b.comp[x]]);
      if (!compatible) continue;
      const NatIso<C>* delta = nullptr;
      for (const auto& psi : psis)
        if (Gr::same_iso(Gr::whisker_right(psi, Rp), a) && Gr::same_iso(Gr::whisker_right(psi, Tp), b)) {
          delta = &psi;
          break;
        }
      if (!delta) return std::string("existence: compatible pair without a 2-cell");
      auto phi = quad(H1, H2, *delta);
      auto qa = quad(Gr::compose(H1, Rp), Gr::compose(H2, Rp), a);
      auto qb = quad(Gr::compose(H1, Tp), Gr::compose(H2, Tp), b);
      if (Fr::quadruple_equivalent(Fr::whisker_p_sigma(phi, Rp), qa, budget).verdict != Verdict::yes ||
          Fr::quadruple_equivalent(Fr::whisker_p_sigma(phi, Tp), qb, budget).verdict != Verdict::yes)
        return std::string("whiskered 2-cell is not equivalent to the given pair");
      for (const auto& psi : psis) {
        if (&psi == delta) continue;
        auto cand = quad(H1, H2, psi);
        if (Fr::quadruple_equivalent(Fr::whisker_p_sigma(cand, Rp), qa, budget).verdict != Verdict::yes) continue;
        if (Fr::quadruple_equivalent(Fr::whisker_p_sigma(cand, Tp), qb, budget).verdict != Verdict::yes) continue;
        if (Fr::quadruple_equivalent(cand, phi, budget).verdict != Verdict::yes)
          return std::string("uniqueness: a second 2-cell over the pair");
      }
    }
  return std::nullopt;
}

}  // namespace bif_detail

template <BaseCategory C>
BipullbackReport Fract<C>::check_fraction_bipullback(const Square& sq, const Budget& budget,
                                                     const std::vector<G>& extra) {
  using Gr = Grpd<C>;
  BipullbackReport rep;
  auto boundary = validate_fraction_square(sq);
  if (!boundary.ok()) {
    rep.bp1 = rep.bp2 = false;
    for (const auto& f : boundary.failures) {
      std::string name = f.name.rfind("filler", 0) == 0 ? "filler" : f.name;
      rep.failures.push_back({name, f.detail});
    }
    return rep;
  }
  std::vector<G> apexes;
  for (const auto& g : Gr::canonical_apexes()) apexes.push_back(g);
  for (const auto& g : extra) apexes.push_back(g);
  std::erase_if(apexes, [&](const G& g) {
    return Gr::object_count(g) > budget.objects || Gr::arrow_count(g) > budget.arrows;
  });
  for (const auto& V : apexes) {
    ++rep.apexes;
    const std::string vname = V->name.empty() ? "apex" : V->name;
    bool truncated = false;
    std::vector<Cone> cones;
    try {
      cones = enumerate_cones(sq, V, apexes, budget.cones, &truncated);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      truncated = true;
    }
    rep.truncated = rep.truncated || truncated;
    for (std::size_t k = 0; k < cones.size(); ++k) {
      ++rep.cones;
      bool exhausted = false;
      auto med = mediate_bp1(sq, cones[k], budget.search, &exhausted);
      std::string where = "apex " + vname + ", cone " + std::to_string(k);
      if (!med) {
        if (exhausted) {
          rep.truncated = true;
        } else {
          rep.bp1 = false;
          rep.failures.push_back({"BP1", where + ": no mediator"});
        }
      } else if (!med->compatible || !validate_quadruple(med->gamma_hat).ok() ||
                 !validate_quadruple(med->delta_hat).ok()) {
        rep.bp1 = false;
        rep.failures.push_back({"BP1", where + ": mediating 2-cells do not check"});
      }
    }
    std::size_t pairs = 0;
    for (const auto& E : apexes) {
      std::vector<Functor> ws, Hs;
      try {
        ws = bif_detail::weqs<C>(E, V, budget.functors);
        if (ws.empty()) continue;
        Hs = Gr::enumerate_functors(E, sq.core.P, budget.functors);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        rep.truncated = true;
        continue;
      }
      for (const auto& w : ws)
        for (std::size_t i = 0; i < Hs.size(); ++i)
          for (std::size_t j = 0; j < Hs.size(); ++j) {
            if (pairs >= budget.pairs) {
              rep.truncated = true;
              goto next_apex;
            }
            ++pairs;
            ++rep.pairs;
            if (auto problem = bif_detail::check_fraction_bp2_pair<C>(sq, w, Hs[i], Hs[j], budget)) {
              rep.bp2 = false;
              rep.failures.push_back({"BP2", "apex " + vname + " via " + (E->name.empty() ? "apex" : E->name) +
                                                 ", pair (" + std::to_string(i) + "," + std::to_string(j) + "): " +
                                                 *problem});
            }
          }
    }
  next_apex:;
  }
  return rep;
}

}  // namespace fracta
