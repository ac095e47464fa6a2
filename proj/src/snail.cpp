#include "fracta/snail.hpp"

#include <map>

namespace fracta {

namespace {

template <BaseCategory C>
std::string label(const typename C::Object& x, int e) {
  return C::element_label(x, e);
}

// Element of `x` outside the image of f, or -1.
template <BaseCategory C>
int missed(const typename C::Arrow& f) {
  std::vector<char> hit(C::size(C::dst(f)), 0);
  for (int v : C::table(f)) hit[v] = 1;
  for (std::size_t y = 0; y < hit.size(); ++y)
    if (!hit[y]) return static_cast<int>(y);
  return -1;
}

}  // namespace

template <BaseCategory C>
ValidationReport SixTermSequence<C>::well_formed() const {
  ValidationReport r;
  for (std::size_t i = 0; i < 5; ++i) {
    if (!C::same_object(C::src(arrows[i]), nodes[i]) || !C::same_object(C::dst(arrows[i]), nodes[i + 1]))
      r.add("arrow " + std::to_string(i), std::string("does not run ") + kSnailNodes[i] + " -> " + kSnailNodes[i + 1]);
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (groups[i] && groups[i]->order() != C::size(nodes[i]))
      r.add("group " + std::to_string(i), "table order differs from the node");
  return r;
}

template <BaseCategory C>
int SixTermSequence<C>::first_nonzero_composite() const {
  for (int i = 0; i + 1 < 5; ++i)
    if (!is_zero_arrow<C>(C::compose(arrows[i], arrows[i + 1]))) return i;
  return -1;
}

template <BaseCategory C>
typename C::Arrow Snail<C>::connecting_map(const Functor& F, const BikernelResult<C>& K) {
  const auto& A = *F.src;
  const auto& B = *F.dst;
  // Same limits as the bikernel's object part: (a, beta, z) with beta: F a -> 0.
  auto X = C::pullback(F.F0, B.d);
  const auto& zero = *K.square.G.src;
  auto P0 = C::pullback(C::compose(X.p2, B.c), K.square.G.F0);
  if (!C::same_object(P0.apex, K.K->A0)) fail(ErrorKind::Internal, "bikernel objects are not the expected limit");
  auto loops = pi1(B);
  auto x = mediate_pullback<C>(X, C::zero_arrow(loops.object, A.A0), loops.epsilon);
  auto p = mediate_pullback<C>(P0, x, C::zero_arrow(loops.object, zero.A0));
  return C::compose(p, pi0(*K.K).eta);
}

template <BaseCategory C>
SixTermSequence<C> Snail<C>::snail_sequence(const Functor& F) {
  auto K = Grpd<C>::bikernel(F);
  auto pK = pi1(*K.K);
  auto pA = pi1(*F.src);
  auto pB = pi1(*F.dst);
  Sequence s;
  s.nodes = {pK.object, pA.object, pB.object, pi0(*K.K).object, pi0(*F.src).object, pi0(*F.dst).object};
  s.arrows = {pi1_map(K.KF), pi1_map(F), connecting_map(F, K), pi0_map(K.KF), pi0_map(F)};
  s.provenance = {"pi1_map(K(F) -> A)", "pi1_map(F)", "connecting", "pi0_map(K(F) -> A)", "pi0_map(F)"};
  s.groups = {std::move(pK.group), std::move(pA.group), std::move(pB.group)};
  return s;
}

template <BaseCategory C>
ExactnessReport<C> Snail<C>::check_exact(const Sequence& seq) {
  ExactnessReport<C> report;
  for (int i = 1; i <= 4; ++i) {
    const auto& in = seq.arrows[i - 1];
    const auto& out = seq.arrows[i];
    const auto& node = seq.nodes[i];
    auto& v = report.nodes[i - 1];
    v.node = i;
    auto k = C::kernel(out);
    v.mono = k.mono;
    auto u = C::factor_through_mono(in, k.mono);
    if (!u) {
      auto t = C::table(in);
      for (std::size_t x = 0; x < t.size(); ++x) {
        if (C::apply(out, t[x]) == 0) continue;
        v.counterexample = label<C>(C::src(in), static_cast<int>(x)) + " maps to " + label<C>(node, t[x]) +
                           ", outside the kernel at " + kSnailNodes[i];
        break;
      }
      continue;
    }
    v.epi = *u;
    if (C::is_regular_epi(*u)) {
      v.exact = true;
      continue;
    }
    int z = missed<C>(*u);
    v.counterexample = "kernel element " + label<C>(node, z < 0 ? 0 : C::apply(k.mono, z)) + " at " +
                       kSnailNodes[i] + " is not in the image";
  }
  return report;
}

template <BaseCategory C>
ValidationReport Snail<C>::verify_exactness(const Sequence& seq, const ExactnessReport<C>& report) {
  ValidationReport r;
  for (const auto& v : report.nodes) {
    if (v.node < 1 || v.node > 4) {
      r.add("node", "index out of range");
      continue;
    }
    const std::string name = kSnailNodes[v.node];
    const auto& in = seq.arrows[v.node - 1];
    const auto& out = seq.arrows[v.node];
    bool kernel_ok = false;
    if (v.mono) {
      std::size_t zeros = 0;
      for (int y : C::table(out)) zeros += (y == 0);
      kernel_ok = C::is_mono(*v.mono) && is_zero_arrow<C>(C::compose(*v.mono, out)) &&
                  C::size(C::src(*v.mono)) == zeros;
    }
    bool factors = v.epi && v.mono && C::equal(C::compose(*v.epi, *v.mono), in);
    bool exact = kernel_ok && factors && C::is_regular_epi(*v.epi);
    if (!kernel_ok) r.add(name, "stored mono is not the kernel of the outgoing arrow");
    if (exact != v.exact) r.add(name, "stored verdict does not follow from the witnesses");
    if (!v.exact && v.counterexample.empty()) r.add(name, "failure without a counterexample");
  }
  return r;
}

template <BaseCategory C>
FractionSnail<C> Snail<C>::snail_sequence_fraction(const FractionSpan<C>& f) {
  auto span = Fract<C>::span(f.W, f.F);
  const auto& S = span.W;
  const auto& R = span.F;
  FractionSnail<C> out;
  auto z = Grpd<C>::zero_functor(Grpd<C>::zero(), R.dst);
  out.kernel = Fract<C>::bipullback_of_fractions(span, Fract<C>::p_sigma(z));
  const auto& core = out.kernel.core;
  auto KR = Grpd<C>::bikernel(R);
  out.tabulated = snail_sequence(R);
  const auto& T = out.tabulated;

  auto& cmp = out.comparison;
  cmp.S_prime = Grpd<C>::canonical_mediator(core, SquareCone<C>{KR.square.Gp, KR.square.Fp, KR.square.pi}).T;
  cmp.weak_equivalence = Grpd<C>::is_weak_equivalence(cmp.S_prime).holds();
  cmp.columns = {pi1_map(cmp.S_prime), pi1_map(S), pi0_map(cmp.S_prime), pi0_map(S)};
  static constexpr std::array<const char*, 4> column_names{"pi1(S')", "pi1(S)", "pi0(S')", "pi0(S)"};
  bool invertible = true;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!is_iso<C>(cmp.columns[i])) {
      cmp.checks.add(std::string("column ") + column_names[i], "not an isomorphism");
      invertible = false;
    }
  }
  auto pP = pi1(*core.P);
  auto pA = pi1(*S.dst);
  if (invertible) {
    if (!is_homomorphism(*T.groups[0], pP.group, C::table(cmp.columns[0])))
      cmp.checks.add("column pi1(S')", "not a homomorphism");
    if (!is_homomorphism(*T.groups[1], pA.group, C::table(cmp.columns[1])))
      cmp.checks.add("column pi1(S)", "not a homomorphism");
  }

  auto& s = out.sequence;
  if (!invertible) {
    s = T;
    return out;
  }
  const auto& [c1K, c1A, c0K, c0A] = cmp.columns;
  s.nodes = {pP.object, pA.object, T.nodes[2], pi0(*core.P).object, pi0(*S.dst).object, T.nodes[5]};
  s.arrows = {C::compose(inverse<C>(c1K), C::compose(T.arrows[0], c1A)),
              C::compose(inverse<C>(c1A), T.arrows[1]),
              C::compose(T.arrows[2], c0K),
              C::compose(inverse<C>(c0K), C::compose(T.arrows[3], c0A)),
              C::compose(inverse<C>(c0A), T.arrows[4])};
  s.provenance = {"pi1(S')^-1 . pi1_map(K(R) -> X) . pi1(S)", "pi1(S)^-1 . pi1_map(R)", "connecting(R) . pi0(S')",
                  "pi0(S')^-1 . pi0_map(K(R) -> X) . pi0(S)", "pi0(S)^-1 . pi0_map(R)"};
  s.groups = {pP.group, pA.group, T.groups[2]};

  // The kernel leg of the fraction square, read directly.
  const auto& leg = out.kernel.leg_a.F;
  if (!C::equal(s.arrows[0], pi1_map(leg))) cmp.checks.add("pi1 column square", "transport differs from the leg");
  if (!C::equal(s.arrows[3], pi0_map(leg))) cmp.checks.add("pi0 column square", "transport differs from the leg");
  auto lhs = Grpd<C>::compose(cmp.S_prime, leg);
  auto rhs = Grpd<C>::compose(KR.KF, S);
  if (!Grpd<C>::same_functor(lhs, rhs)) {
    bool iso = false;
    try {
      iso = !Grpd<C>::enumerate_nat_isos(lhs, rhs, 64).empty();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      iso = true;
    }
    if (!iso) cmp.checks.add("S' square", "S'.leg is not isomorphic to K(R).S");
  }
  BikernelResult<C> direct{core.P, core.Gp, Grpd<C>::inverse(core.pi), core};
  if (!C::equal(s.arrows[2], connecting_map(R, direct)))
    cmp.checks.add("connecting column", "transport differs from the connecting map of the corner");
  return out;
}

template struct SixTermSequence<FinPtdSet>;
template struct SixTermSequence<FinAb>;
template struct Snail<FinPtdSet>;
template struct Snail<FinAb>;

// ---------------------------------------------------------------------------
// Fractors over pointed sets.

ValidationReport validate_fractor(const FractorData<FinAb>&) {
  fail(ErrorKind::UnsupportedBackend, "fractor validation is implemented for pointed sets only");
}

ValidationReport validate_fractor(const FractorData<FinPtdSet>& f) {
  using C = FinPtdSet;
  ValidationReport r;
  const auto& A = *f.A;
  const auto& B = *f.B;
  const auto& av = A.view;
  const auto& bv = B.view;
  auto typed = [&](const PointedMap& m, const PointedSet& x, const PointedSet& y, const char* what) {
    if (!(m.src == x) || !(m.dst == y) || !C::well_formed(m)) r.add("shape", std::string(what) + " is mistyped");
  };
  typed(f.sigma, f.E, A.A0, "sigma");
  typed(f.rho, f.E, B.A0, "rho");
  typed(f.d, f.R, f.E, "d");
  typed(f.c, f.R, f.E, "c");
  typed(f.sigma_bar, f.R, A.A1, "sigma_bar");
  typed(f.s1, f.kernel_pair, f.E, "s1");
  typed(f.s2, f.kernel_pair, f.E, "s2");
  typed(f.rho_bar, f.kernel_pair, B.A1, "rho_bar");
  if (!r.ok()) return r;

  const auto& sg = f.sigma.table;
  const auto& rh = f.rho.table;
  const int nE = static_cast<int>(f.E.size());
  const int nR = static_cast<int>(f.R.size());
  const int nK = static_cast<int>(f.kernel_pair.size());
  auto E = [&](int e) { return f.E.label(e); };

  const std::string b1 = "sigma regular epi with kernel pair";
  if (int a = missed<C>(f.sigma); a >= 0) r.add(b1, "object " + A.A0.label(a) + " is not hit by sigma");
  std::map<std::pair<int, int>, int> over;
  for (int x = 0; x < nK; ++x) {
    int e = f.s1.table[x], e2 = f.s2.table[x];
    if (sg[e] != sg[e2]) {
      r.add(b1, "kernel pair element " + f.kernel_pair.label(x) + " joins " + E(e) + " and " + E(e2));
      break;
    }
    ++over[{e, e2}];
  }
  for (int e = 0; e < nE; ++e)
    for (int e2 = 0; e2 < nE; ++e2) {
      if (sg[e] != sg[e2]) continue;
      auto it = over.find({e, e2});
      int n = it == over.end() ? 0 : it->second;
      if (n != 1) r.add(b1, "pair (" + E(e) + ", " + E(e2) + ") has " + std::to_string(n) + " elements over it");
    }

  for (int x = 0; x < nR; ++x)
    if (rh[f.d.table[x]] != rh[f.c.table[x]]) {
      r.add("rho coequalizes", "R element " + f.R.label(x) + " joins " + E(f.d.table[x]) + " and " +
                                   E(f.c.table[x]) + " in different fibres");
      break;
    }

  // (top, bottom) over (src_d, src_c) and (dst_d, dst_c): squares, then unique
  // lifting of (e, g) with dst_c(g) = bottom(e) along src_c.
  const std::string b3 = "discrete fibrations";
  auto fibration = [&](const char* name, const PointedSet& top_obj, const Table& top, const Table& bottom,
                       const Table& sd, const Table& sc, const GroupoidView& v, const PointedSet& arrows) {
    const int n = static_cast<int>(top.size());
    for (int x = 0; x < n; ++x)
      if (v.d[top[x]] != bottom[sd[x]] || v.c[top[x]] != bottom[sc[x]]) {
        r.add(b3, std::string(name) + ": square fails at " + top_obj.label(x));
        return;
      }
    std::map<std::pair<int, int>, std::vector<int>> lifts;
    for (int x = 0; x < n; ++x) lifts[{sc[x], top[x]}].push_back(x);
    for (int e = 0; e < nE; ++e)
      for (int g = 0; g < v.n1; ++g) {
        if (v.c[g] != bottom[e]) continue;
        auto it = lifts.find({e, g});
        if (it == lifts.end()) {
          r.add(b3, std::string(name) + ": no lift of (" + E(e) + ", " + arrows.label(g) + ")");
          return;
        }
        if (it->second.size() > 1) {
          r.add(b3, std::string(name) + ": lifts " + top_obj.label(it->second[0]) + " and " +
                        top_obj.label(it->second[1]) + " of (" + E(e) + ", " + arrows.label(g) + ")");
          return;
        }
      }
  };
  fibration("(sigma_bar, sigma)", f.R, f.sigma_bar.table, sg, f.d.table, f.c.table, av, A.A1);
  fibration("(rho_bar, rho)", f.kernel_pair, f.rho_bar.table, rh, f.s1.table, f.s2.table, bv, B.A1);
  return r;
}

FractorData<FinPtdSet> canonical_fractor(const InternalFunctor<FinPtdSet>& F) {
  using C = FinPtdSet;
  const auto& A = *F.src;
  const auto& B = *F.dst;
  const auto& av = A.view;
  const auto& bv = B.view;
  FractorData<C> out;
  out.A = F.src;
  out.B = F.dst;
  // E: (a, beta) with beta: F a -> b.
  auto Ec = C::pullback(F.F0, B.d);
  out.E = Ec.apex;
  out.sigma = Ec.p1;
  out.rho = C::compose(Ec.p2, B.c);
  std::vector<PointedMap> eproj{Ec.p1, Ec.p2};
  auto eidx = TupleIndex::build<C>(out.E.size(), eproj);
  // R: (alpha, e) with c(alpha) = sigma(e), from (a, F(alpha).beta) to e.
  auto Rc = C::pullback(A.c, out.sigma);
  out.R = Rc.apex;
  out.sigma_bar = Rc.p1;
  out.c = Rc.p2;
  Table d(out.R.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    int alpha = Rc.p1.table[x];
    int e = Rc.p2.table[x];
    int beta = Ec.p2.table[e];
    d[x] = eidx.find({av.d[alpha], bv.compose(F.t1[alpha], beta)});
  }
  out.d = lift_or_throw<C>(out.R, out.E, std::move(d), "fractor d");
  // R[sigma] with rho_bar(e1, e2) = beta1^-1.beta2.
  auto Kc = C::pullback(out.sigma, out.sigma);
  out.kernel_pair = Kc.apex;
  out.s1 = Kc.p1;
  out.s2 = Kc.p2;
  Table rb(out.kernel_pair.size());
  for (std::size_t x = 0; x < rb.size(); ++x)
    rb[x] = bv.compose(bv.inv[Ec.p2.table[Kc.p1.table[x]]], Ec.p2.table[Kc.p2.table[x]]);
  out.rho_bar = lift_or_throw<C>(out.kernel_pair, B.A1, std::move(rb), "fractor rho_bar");
  return out;
}

}  // namespace fracta
