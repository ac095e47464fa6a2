#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "snail_oracles.hpp"
#include "snake_oracle.hpp"
#include "fracta/abelian_groupoid.hpp"
#include "fracta/snail.hpp"

using namespace fracta;
using namespace oracle;

namespace {

using P = Grpd<FinPtdSet>;
using GA = Grpd<FinAb>;
using SP = Snail<FinPtdSet>;
using SA = Snail<FinAb>;
using FP = Fract<FinPtdSet>;

template <BaseCategory C>
std::size_t size_of(const typename C::Object& x) {
  return C::size(x);
}

template <BaseCategory C>
std::size_t image_size(const typename C::Arrow& f) {
  auto t = C::table(f);
  return std::set<int>(t.begin(), t.end()).size();
}


void check_sequence_against_oracle(const InternalFunctor<FinPtdSet>& F) {
  auto s = SP::snail_sequence(F);
  CHECK(s.well_formed().ok());
  CHECK(s.first_nonzero_composite() == -1);
  auto r = SP::check_exact(s);
  for (const auto& n : r.nodes) {
    INFO(F.src->name << " -> " << F.dst->name << " at " << kSnailNodes[n.node] << ": " << n.counterexample);
    CHECK(n.exact);
  }
  CHECK(SP::verify_exactness(s, r).ok());

  KernelOracle k(F);
  CHECK(size_of<FinPtdSet>(s.nodes[3]) == k.pi0);
  CHECK(size_of<FinPtdSet>(s.nodes[0]) == k.pi1);
  // beta and beta' have the same image iff (*, beta) and (*, beta') are joined.
  auto eps = FinPtdSet::table(pi1(*F.dst).epsilon);
  auto del = FinPtdSet::table(s.arrows[2]);
  for (std::size_t x = 0; x < eps.size(); ++x)
    for (std::size_t y = 0; y < eps.size(); ++y)
      CHECK((del[x] == del[y]) == (k.component_of(0, eps[x]) == k.component_of(0, eps[y])));
}


PointedSet pset(int n) {
  std::vector<std::string> l{"*"};
  for (int i = 1; i < n; ++i) l.push_back("x" + std::to_string(i));
  return PointedSet(l);
}

PointedMap pmap(const PointedSet& s, const PointedSet& t, Table table) {
  return *FinPtdSet::from_table(s, t, std::move(table));
}

}  // namespace

TEST_CASE("the sequence of 1 -> Z/2") {
  auto z2 = cyclic_groupoid(2);
  auto F = P::zero_functor(P::zero(), z2);
  auto s = SP::snail_sequence(F);
  std::array<std::size_t, 6> sizes{1, 1, 2, 2, 1, 1};
  for (std::size_t i = 0; i < 6; ++i) CHECK(size_of<FinPtdSet>(s.nodes[i]) == sizes[i]);
  CHECK(is_iso<FinPtdSet>(s.arrows[2]));
  CHECK(s.provenance[2] == "connecting");
  auto r = SP::check_exact(s);
  CHECK(r.all());
  CHECK(SP::verify_exactness(s, r).ok());
  check_sequence_against_oracle(F);
}

TEST_CASE("identity functors have trivial kernels and a zero connecting map") {
  for (const auto& g : fixtures::small_groupoids()) {
    INFO(g->name);
    auto s = SP::snail_sequence(P::identity(g));
    CHECK(is_zero_arrow<FinPtdSet>(s.arrows[2]));
    CHECK(size_of<FinPtdSet>(s.nodes[0]) == 1);
    CHECK(size_of<FinPtdSet>(s.nodes[3]) == 1);
    CHECK(SP::check_exact(s).all());
  }
}

TEST_CASE("trivial pi1(B) gives a zero connecting map") {
  auto F = P::zero_functor(cyclic_groupoid(3), interval_groupoid());
  auto s = SP::snail_sequence(F);
  CHECK(size_of<FinPtdSet>(s.nodes[2]) == 1);
  CHECK(is_zero_arrow<FinPtdSet>(s.arrows[2]));
  CHECK(SP::check_exact(s).all());
}

TEST_CASE("every functor between the small groupoids is exact") {
  auto gs = fixtures::small_groupoids();
  int weqs = 0;
  for (const auto& x : gs)
    for (const auto& y : gs)
      for (const auto& F : P::enumerate_functors(x, y, 4096)) {
        check_sequence_against_oracle(F);
        if (!is_weak_equivalence(F).holds()) continue;
        ++weqs;
        auto s = SP::snail_sequence(F);
        CHECK(size_of<FinPtdSet>(s.nodes[0]) == 1);
        CHECK(size_of<FinPtdSet>(s.nodes[3]) == 1);
        auto h = homotopy_maps(F);
        CHECK(h.pi0_iso);
        CHECK(h.pi1_iso);
      }
  CHECK(weqs > gs.size());
}

TEST_CASE("randomized pointed functors are exact") {
  std::mt19937 rng(20261016);
  int done = 0;
  int nontrivial = 0;
  for (int trial = 0; done < 40 && trial < 400; ++trial) {
    auto x = random_pointed_groupoid(rng, 2 * trial);
    auto y = random_pointed_groupoid(rng, 2 * trial + 1);
    std::vector<InternalFunctor<FinPtdSet>> fs;
    try {
      fs = P::enumerate_functors(x, y, 2048);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::BudgetExceeded);
      continue;
    }
    const auto& F = fs[rng() % fs.size()];
    check_sequence_against_oracle(F);
    auto s = SP::snail_sequence(F);
    if (!is_zero_arrow<FinPtdSet>(s.arrows[2])) ++nontrivial;
    ++done;
  }
  CHECK(done >= 25);
  CHECK(nontrivial > 0);
}

TEST_CASE("fibrations: the homotopy kernel matches the strict fibre") {
  auto gs = fixtures::small_groupoids();
  int seen = 0;
  for (const auto& x : gs)
    for (const auto& y : gs)
      for (const auto& F : P::enumerate_functors(x, y, 4096)) {
        if (!is_fibration(F)) continue;
        ++seen;
        auto s = SP::snail_sequence(F);
        CHECK(size_of<FinPtdSet>(s.nodes[3]) == strict_fibre_components(F));
        CHECK(SP::check_exact(s).all());
      }
  CHECK(seen > 5);
}

TEST_CASE("hand-built chains that are not exact") {
  auto F = P::zero_functor(P::zero(), cyclic_groupoid(2));
  auto s = SP::snail_sequence(F);
  s.arrows[2] = FinPtdSet::zero_arrow(s.nodes[2], s.nodes[3]);
  s.provenance[2] = "zero";
  CHECK(s.well_formed().ok());
  auto r = SP::check_exact(s);
  CHECK_FALSE(r.all());
  CHECK_FALSE(r.nodes[1].exact);  // at pi1(B): the kernel of zero is everything
  CHECK_FALSE(r.nodes[2].exact);  // at pi0(K)
  CHECK(r.nodes[2].counterexample.find("not in the image") != std::string::npos);
  CHECK(r.nodes[0].exact);
  CHECK(SP::verify_exactness(s, r).ok());

  // Identities on Z/2 everywhere: image not inside the kernel.
  auto z = pset(2);
  SixTermSequence<FinPtdSet> t;
  t.nodes = {z, z, z, z, z, z};
  for (auto& a : t.arrows) a = FinPtdSet::identity(z);
  CHECK(t.first_nonzero_composite() == 0);
  auto rt = SP::check_exact(t);
  for (const auto& n : rt.nodes) {
    CHECK_FALSE(n.exact);
    CHECK_FALSE(n.epi.has_value());
    CHECK(n.counterexample.find("outside the kernel") != std::string::npos);
  }
  CHECK(SP::verify_exactness(t, rt).ok());

  // A tampered verdict is caught.
  rt.nodes[0].exact = true;
  CHECK_FALSE(SP::verify_exactness(t, rt).ok());
}

TEST_CASE("fractions: transported sequences are exact and the comparison verifies") {
  auto gs = fixtures::small_groupoids();
  int nontrivial = 0;
  for (const auto& x : gs)
    for (const auto& a : gs)
      for (const auto& S : P::enumerate_functors(x, a, 4096)) {
        if (!FP::is_weq(S) || P::same_functor(S, P::identity(x))) continue;
        for (const auto& b : gs)
          for (const auto& R : P::enumerate_functors(x, b, 4096)) {
            auto fs = SP::snail_sequence_fraction(FP::span(S, R));
            INFO(x->name << " -> " << a->name << ", " << b->name);
            CHECK(fs.comparison.ok());
            for (const auto& f : fs.comparison.checks.failures) INFO(f.name << ": " << f.detail);
            CHECK(fs.sequence.well_formed().ok());
            CHECK(fs.sequence.first_nonzero_composite() == -1);
            auto r = SP::check_exact(fs.sequence);
            CHECK(r.all());
            CHECK(SP::verify_exactness(fs.sequence, r).ok());
            // pi1(A) -> pi1(B) passes through pi1(S)^-1.
            CHECK(FinPtdSet::equal(FinPtdSet::compose(pi1_map(S), fs.sequence.arrows[1]), pi1_map(R)));
            ++nontrivial;
          }
      }
  CHECK(nontrivial >= 5);
}

TEST_CASE("identity left legs reproduce the functor sequence") {
  auto gs = fixtures::small_groupoids();
  for (const auto& x : gs)
    for (const auto& y : gs)
      for (const auto& F : P::enumerate_functors(x, y, 4096)) {
        auto fs = SP::snail_sequence_fraction(FP::p_sigma(F));
        auto s = SP::snail_sequence(F);
        CHECK(fs.comparison.ok());
        for (std::size_t i = 0; i < 6; ++i) CHECK(FinPtdSet::same_object(fs.sequence.nodes[i], s.nodes[i]));
        for (std::size_t i = 0; i < 5; ++i) CHECK(FinPtdSet::equal(fs.sequence.arrows[i], s.arrows[i]));
      }
}

TEST_CASE("2-isomorphic fractions give isomorphic sequences") {
  // f = (S, R) and g = (V.S, V.R) for a weak equivalence V.
  auto ixz = fixtures::small_groupoids()[6];
  auto iv = interval_groupoid();
  auto z2 = cyclic_groupoid(2);
  int checked = 0;
  for (const auto& V : P::enumerate_functors(ixz, ixz, 4096)) {
    if (!FP::is_weq(V)) continue;
    for (const auto& S : P::enumerate_functors(ixz, z2, 4096)) {
      if (!FP::is_weq(S)) continue;
      for (const auto& R : P::enumerate_functors(ixz, iv, 4096)) {
        auto f = SP::snail_sequence_fraction(FP::span(S, R));
        auto g = SP::snail_sequence_fraction(FP::span(P::compose(V, S), P::compose(V, R)));
        REQUIRE(FP::find_span_iso(FP::span(S, R), FP::span(P::compose(V, S), P::compose(V, R))).has_value());
        const auto& fc = f.kernel.core;
        const auto& gc = g.kernel.core;
        auto H = P::compose(gc.Gp, V);
        auto mu = P::nat_iso(P::compose(gc.Fp, fc.G), P::compose(H, R), gc.pi.comp);
        auto M = P::canonical_mediator(fc, SquareCone<FinPtdSet>{H, gc.Fp, mu}).T;
        auto m1 = pi1_map(M);
        auto m0 = pi0_map(M);
        CHECK(is_iso<FinPtdSet>(m1));
        CHECK(is_iso<FinPtdSet>(m0));
        using C = FinPtdSet;
        CHECK(C::equal(g.sequence.arrows[0], C::compose(m1, f.sequence.arrows[0])));
        CHECK(C::equal(g.sequence.arrows[1], f.sequence.arrows[1]));
        CHECK(C::equal(C::compose(g.sequence.arrows[2], m0), f.sequence.arrows[2]));
        CHECK(C::equal(g.sequence.arrows[3], C::compose(m0, f.sequence.arrows[3])));
        CHECK(C::equal(g.sequence.arrows[4], f.sequence.arrows[4]));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("a left leg that is not a weak equivalence is rejected") {
  auto F = P::zero_functor(cyclic_groupoid(2), P::zero());
  try {
    SP::snail_sequence_fraction(FractionSpan<FinPtdSet>{F, P::identity(cyclic_groupoid(2))});
    FAIL("expected NotAFraction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAFraction);
  }
}

TEST_CASE("abelian sequences agree with the snake lemma") {
  std::mt19937 rng(516);
  int done = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto t = oracle::snake_trial(rng);
    auto s = SA::snail_sequence(t.F);
    auto r = SA::check_exact(s);
    INFO("trial " << trial);
    CHECK(r.all());
    CHECK(SA::verify_exactness(s, r).ok());
    CHECK(s.first_nonzero_composite() == -1);
    for (int i = 0; i < 6; ++i) CHECK(size_of<FinAb>(s.nodes[i]) == t.nodes[i]);
    for (int i = 0; i < 5; ++i) CHECK(image_size<FinAb>(s.arrows[i]) == t.images[i]);
    ++done;
  }
  CHECK(done >= 25);
}

TEST_CASE("abelian fractions transport along the left leg") {
  auto z2 = FinAbGroup({2});
  auto loop = boundary_groupoid(FinAb::zero_arrow(z2, FinAb::zero_object()), "Z/2");
  auto interval = boundary_groupoid(FinAb::identity(z2), "interval");
  auto S = GA::zero_functor(interval, GA::zero());
  REQUIRE(Fract<FinAb>::is_weq(S));
  for (const auto& R : GA::enumerate_functors(interval, loop, 64)) {
    auto fs = SA::snail_sequence_fraction(Fract<FinAb>::span(S, R));
    CHECK(fs.comparison.ok());
    CHECK(SA::check_exact(fs.sequence).all());
  }
}

TEST_CASE("canonical fractors pass validation") {
  auto gs = fixtures::small_groupoids();
  for (const auto& g : gs) {
    auto rep = validate_fractor(canonical_fractor(P::identity(g)));
    INFO(g->name);
    CHECK(rep.ok());
  }
  for (const auto& x : gs)
    for (const auto& y : gs)
      for (const auto& F : P::enumerate_functors(x, y, 4096)) {
        auto rep = validate_fractor(canonical_fractor(F));
        for (const auto& f : rep.failures) INFO(f.name << ": " << f.detail);
        CHECK(rep.ok());
      }
}

TEST_CASE("fractor negatives name the violated condition") {
  auto only = [](const ValidationReport& r, const std::string& name) {
    if (r.failures.empty()) return false;
    for (const auto& f : r.failures)
      if (f.name != name) return false;
    return true;
  };

  SUBCASE("sigma misses an object") {
    // Canonical fractor of discrete(2) -> 0, restricted to the fibre over *.
    auto A = discrete_groupoid(2);
    auto B = P::zero();
    auto e = pset(1);
    FractorData<FinPtdSet> d;
    d.A = A;
    d.B = B;
    d.E = e;
    d.sigma = pmap(e, A->A0, {0});
    d.rho = pmap(e, B->A0, {0});
    d.R = e;
    d.d = d.c = FinPtdSet::identity(e);
    d.sigma_bar = pmap(e, A->A1, {A->view.e[0]});
    d.kernel_pair = e;
    d.s1 = d.s2 = FinPtdSet::identity(e);
    d.rho_bar = pmap(e, B->A1, {0});
    auto r = validate_fractor(d);
    CHECK(only(r, "sigma regular epi with kernel pair"));
    CHECK(r.failures[0].detail.find("not hit") != std::string::npos);
  }

  SUBCASE("rho does not coequalize") {
    // E = objects of the interval, rho separating its two ends.
    auto A = interval_groupoid();
    auto B = discrete_groupoid(2);
    const auto& av = A->view;
    FractorData<FinPtdSet> d;
    d.A = A;
    d.B = B;
    d.E = A->A0;
    d.sigma = FinPtdSet::identity(A->A0);
    d.rho = pmap(A->A0, B->A0, {0, 1});
    d.R = A->A1;
    d.d = pmap(A->A1, A->A0, av.d);
    d.c = pmap(A->A1, A->A0, av.c);
    d.sigma_bar = FinPtdSet::identity(A->A1);
    d.kernel_pair = A->A0;
    d.s1 = d.s2 = FinPtdSet::identity(A->A0);
    d.rho_bar = pmap(A->A0, B->A1, {B->view.e[0], B->view.e[1]});
    auto r = validate_fractor(d);
    CHECK(only(r, "rho coequalizes"));
  }

  SUBCASE("rho_bar has two lifts") {
    // E has two points over the one object of 1; rho_bar sends all of E x E to e.
    auto A = P::zero();
    auto B = cyclic_groupoid(2);
    auto e = pset(2);
    auto ee = FinPtdSet::product(e, e);
    FractorData<FinPtdSet> d;
    d.A = A;
    d.B = B;
    d.E = e;
    d.sigma = FinPtdSet::zero_arrow(e, A->A0);
    d.rho = FinPtdSet::zero_arrow(e, B->A0);
    d.R = e;
    d.d = d.c = FinPtdSet::identity(e);
    d.sigma_bar = FinPtdSet::zero_arrow(e, A->A1);
    d.kernel_pair = ee.apex;
    d.s1 = ee.p1;
    d.s2 = ee.p2;
    d.rho_bar = FinPtdSet::zero_arrow(ee.apex, B->A1);
    auto r = validate_fractor(d);
    CHECK(only(r, "discrete fibrations"));
    REQUIRE_FALSE(r.failures.empty());
    CHECK(r.failures[0].detail.find("(rho_bar, rho): lifts") != std::string::npos);
  }

  SUBCASE("abelian data is unsupported") {
    FractorData<FinAb> d;
    try {
      validate_fractor(d);
      FAIL("expected UnsupportedBackend");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedBackend);
    }
  }
}
