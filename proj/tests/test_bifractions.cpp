#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "fracta/abelian_groupoid.hpp"
#include "fracta/bifractions.hpp"
#include "groupoid_oracles.hpp"

using namespace fracta;

namespace {

using Gr = Grpd<FinPtdSet>;
using Fr = Fract<FinPtdSet>;
using Span = FractionSpan<FinPtdSet>;
using Quad = TwoCellQuadruple<FinPtdSet>;
using Functor = InternalFunctor<FinPtdSet>;

PtdGroupoid interval_z2() { return pieces_groupoid({ConnectedPiece{2, cyclic_group(2)}}, "interval x Z/2"); }

// basepoint trivial, second object with vertex group Z/2
PtdGroupoid one_plus_z2() { return pieces_groupoid({ConnectedPiece{1, {{0}}}, ConnectedPiece{1, cyclic_group(2)}}, "1+Z/2"); }

Functor first_weq(const PtdGroupoid& x, const PtdGroupoid& y) {
  for (const auto& f : Gr::enumerate_functors(x, y, 4096))
    if (Fr::is_weq(f)) return f;
  FAIL("no weak equivalence");
  return {};
}

Table after(const Table& first, const Table& second) {
  Table out(first.size());
  for (std::size_t k = 0; k < first.size(); ++k) out[k] = second[first[k]];
  return out;
}

// Exhaustive witness search over the given apexes, with the two diagrams
// checked component by component.
bool brute_force_equivalent(const Quad& p, const Quad& q, const std::vector<PtdGroupoid>& apexes) {
  const auto& ep = p.U1.src->view;
  const auto& eq = q.U1.src->view;
  const auto& av = p.from.W.dst->view;
  const auto& bv = p.from.F.dst->view;
  const auto& xv = p.from.W.src->view;
  const auto& yv = p.to.W.src->view;
  for (const auto& K : apexes) {
    const auto& kv = K->view;
    auto r1s = oracle::functors(kv, ep);
    auto r2s = oracle::functors(kv, eq);
    for (const auto& [r10, r11] : r1s) {
      auto u1w0 = after(after(r10, p.U1.t0), p.from.W.t0);
      auto u1w1 = after(after(r11, p.U1.t1), p.from.W.t1);
      if (!oracle::weak_equivalence(kv, av, u1w0, u1w1)) continue;
      for (const auto& [r20, r21] : r2s) {
        auto g1s = oracle::nat_isos(kv, xv, after(r20, q.U1.t0), after(r21, q.U1.t1), after(r10, p.U1.t0),
                                    after(r11, p.U1.t1));
        auto g2s = oracle::nat_isos(kv, yv, after(r10, p.U2.t0), after(r11, p.U2.t1), after(r20, q.U2.t0),
                                    after(r21, q.U2.t1));
        for (const auto& g1 : g1s)
          for (const auto& g2 : g2s) {
            bool ok = true;
            for (int k = 0; k < kv.n0 && ok; ++k) {
              int a = av.compose(av.compose(p.from.W.t1[g1[k]], p.alpha1.comp[r10[k]]), p.to.W.t1[g2[k]]);
              int b = bv.compose(bv.compose(p.from.F.t1[g1[k]], p.alpha2.comp[r10[k]]), p.to.F.t1[g2[k]]);
              ok = a == q.alpha1.comp[r20[k]] && b == q.alpha2.comp[r20[k]];
            }
            if (ok) return true;
          }
      }
    }
  }
  return false;
}

Quad precompose(const Quad& q, const Functor& R) {
  return {q.from, q.to, Gr::compose(R, q.U1), Gr::compose(R, q.U2), Gr::whisker_left(R, q.alpha1),
          Gr::whisker_left(R, q.alpha2)};
}

}  // namespace

TEST_CASE("fraction spans and their composition") {
  auto ixz = interval_z2();
  auto z2 = cyclic_groupoid(2);
  auto S = first_weq(ixz, z2);
  auto a = Fr::span(S, Gr::zero_functor(ixz, z2));
  CHECK_THROWS_AS(Fr::span(Gr::zero_functor(Gr::zero(), z2), Gr::zero_functor(Gr::zero(), z2)), Error);
  try {
    Fr::span(Gr::zero_functor(ixz, z2), S);
    FAIL("expected NotAFraction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAFraction);
  }

  // unit laws up to an invertible 2-cell
  auto left = Fr::compose(Fr::identity_span(z2), a);
  auto right = Fr::compose(a, Fr::identity_span(z2));
  CHECK(Fr::is_weq(left.W));
  auto il = Fr::find_span_iso(left, a);
  auto ir = Fr::find_span_iso(right, a);
  REQUIRE(il);
  REQUIRE(ir);
  CHECK(Fr::validate_quadruple(*il).ok());
  CHECK(Fr::validate_quadruple(*ir).ok());

  CHECK_THROWS_AS(Fr::compose(a, Fr::identity_span(ixz)), Error);

  // two nontrivial left legs
  auto b = Fr::span(S, S);
  auto ab = Fr::compose(Fr::span(first_weq(interval_groupoid(), Gr::zero()), Gr::zero_functor(interval_groupoid(), z2)), b);
  CHECK(Fr::is_weq(ab.W));
  CHECK(oracle::weak_equivalence(ab.W.src->view, ab.W.dst->view, ab.W.t0, ab.W.t1));
}

TEST_CASE("P_Sigma respects composition up to 2-iso") {
  auto gs = fixtures::small_groupoids();
  std::vector<PtdGroupoid> pick{gs[0], gs[2], gs[3], gs[5]};
  std::size_t checked = 0;
  for (const auto& x : pick)
    for (const auto& y : pick)
      for (const auto& z : pick)
        for (const auto& f : Gr::enumerate_functors(x, y, 4096))
          for (const auto& g : Gr::enumerate_functors(y, z, 4096)) {
            auto lhs = Fr::compose(Fr::p_sigma(f), Fr::p_sigma(g));
            auto rhs = Fr::p_sigma(Gr::compose(f, g));
            auto iso = Fr::find_span_iso(lhs, rhs);
            REQUIRE(iso);
            CHECK(Fr::validate_quadruple(*iso).ok());
            ++checked;
          }
  CHECK(checked > 20);
}

TEST_CASE("composition of fractions is associative up to 2-iso") {
  auto z2 = cyclic_groupoid(2);
  auto ixz = interval_z2();
  auto S = first_weq(ixz, z2);
  std::vector<Span> spans{Fr::identity_span(z2), Fr::span(S, S), Fr::span(S, Gr::zero_functor(ixz, z2)),
                          Fr::p_sigma(Gr::zero_functor(z2, z2))};
  // at most one nontrivial left leg per triple keeps the apexes small
  auto trivial = [](const Span& s) { return s.W.src->view.n1 == 2; };
  for (const auto& a : spans)
    for (const auto& b : spans)
      for (const auto& c : spans) {
        if (!trivial(a) + !trivial(b) + !trivial(c) > 1) continue;
        auto l = Fr::compose(Fr::compose(a, b), c);
        auto r = Fr::compose(a, Fr::compose(b, c));
        auto iso = Fr::find_span_iso(l, r);
        REQUIRE(iso);
        CHECK(Fr::validate_quadruple(*iso).ok());
      }
}

TEST_CASE("quadruple equivalence") {
  auto g = one_plus_z2();
  auto s = Fr::identity_span(g);
  auto id = Gr::identity(g);
  std::vector<Quad> quads;
  for (const auto& a2 : Gr::enumerate_nat_isos(Gr::compose(id, id), Gr::compose(id, id), 64))
    quads.push_back({s, s, id, id, Gr::identity_iso(Gr::compose(id, id)), a2});
  REQUIRE(quads.size() == 2);

  auto same = Fr::quadruple_equivalent(quads[0], quads[0]);
  CHECK(same.verdict == Verdict::yes);
  REQUIRE(same.witness);
  CHECK(Fr::verify_witness(quads[0], quads[0], *same.witness).ok());

  auto differ = Fr::quadruple_equivalent(quads[0], quads[1]);
  CHECK(differ.verdict == Verdict::no);
  CHECK_FALSE(differ.obstruction.empty());
  std::vector<PtdGroupoid> apexes{Gr::zero(), interval_groupoid(), cyclic_groupoid(2), discrete_groupoid(2), g};
  CHECK_FALSE(brute_force_equivalent(quads[0], quads[1], apexes));

  // precomposing with a weak equivalence gives an equivalent quadruple
  auto big = pieces_groupoid({ConnectedPiece{1, {{0}}}, ConnectedPiece{2, cyclic_group(2)}}, "1+interval x Z/2");
  auto R = first_weq(big, g);
  for (const auto& q : quads) {
    auto q2 = precompose(q, R);
    CHECK(Fr::validate_quadruple(q2).ok());
    auto e = Fr::quadruple_equivalent(q, q2);
    CHECK(e.verdict == Verdict::yes);
    REQUIRE(e.witness);
    CHECK(Fr::verify_witness(q, q2, *e.witness).ok());
    CHECK(brute_force_equivalent(q, q2, {g, big}));
  }
  CHECK(Fr::quadruple_equivalent(precompose(quads[1], R), quads[0]).verdict == Verdict::no);

  auto other = Fr::identity_span(cyclic_groupoid(2));
  CHECK_THROWS_AS(Fr::quadruple_equivalent(quads[0], Fr::identity_quadruple(other)), Error);
}

TEST_CASE("quadruple verdicts agree with exhaustive witness search") {
  // all quadruples between two fixed spans with apex drawn from small groupoids
  auto g = one_plus_z2();
  auto z2 = cyclic_groupoid(2);
  auto ixz = interval_z2();
  auto S = first_weq(ixz, z2);
  std::vector<std::pair<Span, Span>> boundaries{{Fr::identity_span(g), Fr::identity_span(g)},
                                                {Fr::span(S, S), Fr::identity_span(z2)},
                                                {Fr::span(S, Gr::zero_functor(ixz, z2)), Fr::p_sigma(Gr::zero_functor(z2, z2))}};
  std::vector<PtdGroupoid> apexes{Gr::zero(), interval_groupoid(), z2, g, ixz};
  std::size_t yes = 0, no = 0;
  for (const auto& [from, to] : boundaries) {
    std::vector<Quad> quads;
    for (const auto& E : apexes)
      for (const auto& U1 : Gr::enumerate_functors(E, from.W.src, 4096)) {
        if (!Fr::is_weq(Gr::compose(U1, from.W))) continue;
        for (const auto& U2 : Gr::enumerate_functors(E, to.W.src, 4096))
          for (const auto& a1 : Gr::enumerate_nat_isos(Gr::compose(U1, from.W), Gr::compose(U2, to.W), 64))
            for (const auto& a2 : Gr::enumerate_nat_isos(Gr::compose(U1, from.F), Gr::compose(U2, to.F), 64))
              quads.push_back({from, to, U1, U2, a1, a2});
      }
    REQUIRE(!quads.empty());
    if (quads.size() > 24) quads.resize(24);
    for (const auto& p : quads) {
      CHECK(Fr::validate_quadruple(p).ok());
      for (const auto& q : quads) {
        auto e = Fr::quadruple_equivalent(p, q);
        CHECK(e.verdict != Verdict::undecided);
        if (e.verdict == Verdict::yes) {
          ++yes;
          REQUIRE(e.witness);
          CHECK(Fr::verify_witness(p, q, *e.witness).ok());
        } else {
          ++no;
          CHECK_FALSE(brute_force_equivalent(p, q, {p.U1.src, q.U1.src, Gr::zero(), interval_groupoid()}));
        }
      }
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("BF axioms on a sample") {
  auto gs = fixtures::small_groupoids();
  BFSample<FinPtdSet> sample;
  sample.groupoids = {gs[0], gs[2], gs[3], gs[5]};
  for (const auto& x : sample.groupoids)
    for (const auto& y : sample.groupoids)
      for (auto& f : Gr::enumerate_functors(x, y, 4096)) sample.functors.push_back(std::move(f));
  auto r = Fr::check_bf_axioms(sample);
  for (int k = 0; k < 5; ++k) {
    CAPTURE(k);
    CHECK(r.bf[k].holds);
    CHECK(r.bf[k].checked > 0);
  }
  CHECK(r.all());
}

TEST_CASE("bipullback of P_Sigma images has the h-pullback corner") {
  auto gs = fixtures::small_groupoids();
  Budget budget;
  std::vector<std::pair<Functor, Functor>> cospans{
      {Gr::zero_functor(interval_groupoid(), cyclic_groupoid(2)), Gr::zero_functor(Gr::zero(), cyclic_groupoid(2))},
      {Gr::identity(cyclic_groupoid(2)), Gr::identity(cyclic_groupoid(2))},
      {Gr::zero_functor(discrete_groupoid(2), Gr::zero()), Gr::zero_functor(interval_groupoid(), Gr::zero())}};
  for (const auto& [F, G] : cospans) {
    auto sq = Fr::bipullback_of_fractions(Fr::p_sigma(F), Fr::p_sigma(G));
    auto h = Gr::strong_h_pullback(F, G);
    CHECK(Gr::same_groupoid(sq.core.P, h.P));
    CHECK(Fr::validate_fraction_square(sq).ok());
    auto rep = Fr::check_fraction_bipullback(sq, budget);
    CHECK(rep.passed());
    CHECK(rep.cones > 0);
    CHECK(rep.pairs > 0);
  }
}

TEST_CASE("bipullback of identity spans") {
  auto z3 = cyclic_groupoid(3);
  auto sq = Fr::bipullback_of_fractions(Fr::identity_span(z3), Fr::identity_span(z3));
  CHECK(Gr::object_count(sq.core.P) == Gr::arrow_count(z3));
  CHECK(Fr::check_fraction_bipullback(sq, Budget{}).passed());
}

TEST_CASE("bipullback of fractions with nontrivial left legs") {
  auto z2 = cyclic_groupoid(2);
  auto ixz = interval_z2();
  auto S = first_weq(ixz, z2);
  auto U = first_weq(interval_groupoid(), Gr::zero());
  auto a = Fr::span(S, S);
  auto b = Fr::span(U, Gr::zero_functor(interval_groupoid(), z2));
  auto sq = Fr::bipullback_of_fractions(a, b);
  CHECK(Fr::validate_fraction_square(sq).ok());
  CHECK(Fr::is_weq(sq.filler.from.W));
  auto rep = Fr::check_fraction_bipullback(sq, Budget{});
  CHECK(rep.passed());
  CHECK_FALSE(rep.truncated);
  CHECK(rep.cones > 0);
  CHECK(rep.pairs > 0);
}

TEST_CASE("BP1 mediators") {
  auto z2 = cyclic_groupoid(2);
  auto ixz = interval_z2();
  auto S = first_weq(ixz, z2);
  auto sq = Fr::bipullback_of_fractions(Fr::span(S, S), Fr::identity_span(z2));

  // the square as its own cone
  auto self = Fr::mediate_bp1(sq, Fr::cone_of(sq));
  REQUIRE(self);
  CHECK(self->compatible);
  CHECK(Fr::validate_quadruple(self->gamma_hat).ok());
  CHECK(Fr::validate_quadruple(self->delta_hat).ok());
  CHECK(Fr::find_span_iso(self->m, Fr::identity_span(sq.core.P)).has_value());

  // a functor-level cone: the mediator is P_Sigma of the canonical one
  for (const auto& X : Gr::canonical_apexes())
    for (const auto& cone : Gr::enumerate_cones(sq.core, X, 256)) {
      auto med = Fr::mediate_bp1(sq, Fr::cone_from_functors(sq, cone));
      REQUIRE(med);
      CHECK(med->compatible);
      auto canonical = Fr::p_sigma(Gr::canonical_mediator(sq.core, cone).T);
      CHECK(Fr::find_span_iso(med->m, canonical).has_value());
    }

  // cones with a nontrivial mu1
  bool truncated = false;
  std::size_t nontrivial = 0;
  for (const auto& V : Gr::canonical_apexes())
    for (const auto& cone : Fr::enumerate_cones(sq, V, Gr::canonical_apexes(), 4096, &truncated)) {
      bool trivial = true;
      for (std::size_t x = 0; x < cone.mu1.comp.size(); ++x)
        trivial = trivial && cone.mu1.comp[x] == V->view.e[cone.mu1.from.t0[x]];
      auto med = Fr::mediate_bp1(sq, cone);
      REQUIRE(med);
      CHECK(med->compatible);
      CHECK(Fr::validate_quadruple(med->gamma_hat).ok());
      CHECK(Fr::validate_quadruple(med->delta_hat).ok());
      if (!trivial) ++nontrivial;
    }
  CHECK_FALSE(truncated);
  CHECK(nontrivial > 0);

  auto bad = Fr::cone_of(sq);
  std::swap(bad.x, bad.y);
  try {
    Fr::mediate_bp1(sq, bad);
    FAIL("expected ConeMalformed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConeMalformed);
  }
}

TEST_CASE("corner replaced by an equivalent groupoid or by its components") {
  auto z2 = cyclic_groupoid(2);
  auto sq = Fr::bipullback_of_fractions(Fr::identity_span(z2), Fr::identity_span(z2));
  REQUIRE(Fr::check_fraction_bipullback(sq, Budget{}).passed());

  // Q = hpb(1_P, 1_P) is equivalent to P but has more objects
  auto q = Gr::strong_h_pullback(Gr::identity(sq.core.P), Gr::identity(sq.core.P));
  REQUIRE(Fr::is_weq(q.Gp));
  auto equivalent = Fr::reindex_corner(sq, q.Gp);
  CHECK(Gr::object_count(equivalent.core.P) > Gr::object_count(sq.core.P));
  CHECK(Fr::check_fraction_bipullback(equivalent, Budget{}).passed());

  // the components of P as a discrete corner: automorphisms collapse
  auto point = Gr::zero_functor(Gr::zero(), sq.core.P);
  auto collapsed = Fr::reindex_corner(sq, point);
  CHECK(Fr::validate_fraction_square(collapsed).ok());
  auto rep = Fr::check_fraction_bipullback(collapsed, Budget{});
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.bp1);
  REQUIRE(!rep.failures.empty());
  CHECK(rep.failures.front().name == "BP1");
}

TEST_CASE("a span whose left leg is not a weak equivalence is rejected by the checker") {
  auto z2 = cyclic_groupoid(2);
  auto sq = Fr::bipullback_of_fractions(Fr::identity_span(z2), Fr::identity_span(z2));
  sq.a.W = Gr::zero_functor(z2, z2);
  auto rep = Fr::check_fraction_bipullback(sq, Budget{});
  CHECK_FALSE(rep.passed());
  CHECK(rep.failures.front().name == "leg not in Sigma");
}

TEST_CASE("abelian backend: bipullback of P_Sigma images") {
  using GA = Grpd<FinAb>;
  using FA = Fract<FinAb>;
  FinAbGroup z2({2});
  auto loop = boundary_groupoid(FinAb::zero_arrow(z2, FinAb::zero_object()), "Z/2");
  auto interval = boundary_groupoid(FinAb::identity(z2), "interval");
  auto F = GA::zero_functor(interval, loop);
  auto G = GA::identity(loop);
  auto sq = FA::bipullback_of_fractions(FA::p_sigma(F), FA::p_sigma(G));
  CHECK(FA::validate_fraction_square(sq).ok());
  CHECK(GA::same_groupoid(sq.core.P, GA::strong_h_pullback(F, G).P));
  auto rep = FA::check_fraction_bipullback(sq, Budget{});
  CHECK(rep.passed());
  auto self = FA::mediate_bp1(sq, FA::cone_of(sq));
  REQUIRE(self);
  CHECK(self->compatible);
}

TEST_CASE("a full but not faithful corner fails BP2 only") {
  auto z2 = cyclic_groupoid(2);
  auto sq = Fr::bipullback_of_fractions(Fr::identity_span(z2), Fr::identity_span(z2));
  auto klein = pieces_groupoid({ConnectedPiece{1, klein_group()}}, "Z/2 x Z/2");
  std::optional<Functor> K;
  for (const auto& f : Gr::enumerate_functors(klein, sq.core.P, 4096)) {
    std::set<int> image(f.t1.begin(), f.t1.end());
    if (image.size() == 2) K = f;
  }
  REQUIRE(K);
  auto rep = Fr::check_fraction_bipullback(Fr::reindex_corner(sq, *K), Budget{});
  CHECK(rep.bp1);
  CHECK_FALSE(rep.bp2);
  REQUIRE(!rep.failures.empty());
  CHECK(rep.failures.front().name == "BP2");
}
