#include <doctest.h>

#include "fixtures.hpp"
#include "fracta/fractions1d.hpp"

using namespace fracta;

namespace {

FiniteCategory diamond() {
  // bot <= a, b <= top
  std::vector<std::vector<bool>> leq{{true, true, true, true},
                                     {false, true, false, true},
                                     {false, false, true, true},
                                     {false, false, false, true}};
  return FiniteCategory::poset({"bot", "a", "b", "top"}, leq);
}

FiniteCategory cospan_only() {
  CategoryData d;
  d.objects = {"x", "y", "z"};
  d.arrows = {{"1x", "x", "x"}, {"1y", "y", "y"}, {"1z", "z", "z"}, {"f", "x", "z"}, {"s", "y", "z"}};
  d.identities = {{"x", "1x"}, {"y", "1y"}, {"z", "1z"}};
  d.compose = {{"1x", "1x", "1x"}, {"1y", "1y", "1y"}, {"1z", "1z", "1z"}, {"1x", "f", "f"},
               {"f", "1z", "f"},   {"1y", "s", "s"},    {"s", "1z", "s"}};
  return FiniteCategory::from_data(d);
}

// x =f,g=> y -s-> z with f.s = g.s = h
FiniteCategory coequalized_pair() {
  CategoryData d;
  d.objects = {"x", "y", "z"};
  d.arrows = {{"1x", "x", "x"}, {"1y", "y", "y"}, {"1z", "z", "z"}, {"f", "x", "y"},
              {"g", "x", "y"},  {"s", "y", "z"},  {"h", "x", "z"}};
  d.identities = {{"x", "1x"}, {"y", "1y"}, {"z", "1z"}};
  for (auto [o, i] : std::vector<std::pair<std::string, std::string>>{{"x", "1x"}, {"y", "1y"}, {"z", "1z"}}) {
    for (const auto& a : d.arrows) {
      if (a.src == o) d.compose.push_back({i, a.id, a.id});
      if (a.dst == o && a.id != i) d.compose.push_back({a.id, i, a.id});
    }
  }
  d.compose.push_back({"f", "s", "h"});
  d.compose.push_back({"g", "s", "h"});
  return FiniteCategory::from_data(d);
}

FiniteCategory groupoid_category() {
  auto g = pieces_groupoid({ConnectedPiece{2, cyclic_group(2)}}, "interval x Z/2");
  return FiniteCategory::of_groupoid(g->view);
}

// For a groupoid category with Sigma = all arrows the localization is the
// groupoid itself: (s, f) corresponds to s^-1.f.
int groupoid_value(const GroupoidView& v, const FractionSpan1D& a) { return v.compose(v.inverse(a.s), a.f); }

}  // namespace

TEST_CASE("categories validate") {
  CHECK(diamond().validate().ok());
  CHECK(cospan_only().validate().ok());
  CHECK(coequalized_pair().validate().ok());
  CHECK(groupoid_category().validate().ok());
  auto data = cospan_only().to_data();
  data.compose.pop_back();
  CHECK_THROWS_AS(FiniteCategory::from_data(data), Error);
  auto again = FiniteCategory::from_data(diamond().to_data());
  CHECK(again.arrow_count() == diamond().arrow_count());
}

TEST_CASE("CF axioms") {
  auto g = groupoid_category();
  CHECK(check_right_calculus(g, SigmaClass::isomorphisms(g)).all());
  auto d = diamond();
  CHECK(check_right_calculus(d, SigmaClass::isomorphisms(d)).all());
  CHECK(check_right_calculus(d, SigmaClass::all(d)).all());
  auto ids = check_right_calculus(d, SigmaClass::identities(d));
  CHECK(ids.all());
  CHECK(ids.cf[2].checked > 0);

  auto c = cospan_only();
  auto bad = check_right_calculus(c, SigmaClass::of(c, {"1x", "1y", "1z", "s"}));
  CHECK(bad.cf[0].holds);
  CHECK(bad.cf[1].holds);
  CHECK_FALSE(bad.cf[2].holds);
  CHECK(bad.cf[2].counterexample.find("f=f") != std::string::npos);

  auto q = coequalized_pair();
  auto cf4 = check_right_calculus(q, SigmaClass::of(q, {"1x", "1y", "1z", "s"}));
  CHECK_FALSE(cf4.cf[3].holds);

  auto missing = check_right_calculus(d, SigmaClass::of(d, {"bot<=a"}));
  CHECK_FALSE(missing.cf[0].holds);
}

TEST_CASE("span equivalence examples") {
  auto q = coequalized_pair();
  Localization L(q, SigmaClass::identities(q));
  auto f = q.arrow_index("f"), g = q.arrow_index("g");
  auto one = q.identity(q.object_index("x"));
  CHECK(L.span_equivalent(L.span(one, f), L.span(one, f)));
  CHECK_FALSE(L.span_equivalent(L.span(one, f), L.span(one, g)));
  CHECK_THROWS_AS(L.span_equivalent(L.span(one, f), L.span(one, q.arrow_index("h"))), Error);

  auto d = diamond();
  Localization D(d, SigmaClass::all(d));
  int w = d.arrow_index("bot<=a"), f2 = d.arrow_index("a<=top");
  SpanEquivalenceWitness wit;
  CHECK(D.span_equivalent(D.p_sigma(f2), D.span(w, d.compose(w, f2)), &wit));
  CHECK(d.compose(wit.x, d.identity(d.object_index("a"))) == d.compose(wit.x2, w));
  CHECK_THROWS_AS(L.span(f, f), Error);
}

TEST_CASE("span equivalence matches the groupoid oracle") {
  auto g = pieces_groupoid({ConnectedPiece{2, cyclic_group(2)}}, "interval x Z/2");
  auto c = FiniteCategory::of_groupoid(g->view);
  Localization L(c, SigmaClass::all(c));
  for (int x = 0; x < c.object_count(); ++x)
    for (int y = 0; y < c.object_count(); ++y) {
      auto sp = L.spans(x, y);
      for (const auto& a : sp)
        for (const auto& b : sp)
          CHECK(L.span_equivalent(a, b) == (groupoid_value(g->view, a) == groupoid_value(g->view, b)));
    }
}

TEST_CASE("span equivalence is an equivalence relation where the calculus holds") {
  auto d = diamond();
  auto g = groupoid_category();
  std::vector<Localization> ls{Localization(d, SigmaClass::all(d)), Localization(d, SigmaClass::identities(d)),
                               Localization(g, SigmaClass::all(g))};
  for (const auto& L : ls) {
    REQUIRE(check_right_calculus(L.category(), L.sigma()).all());
    const auto& c = L.category();
    for (int x = 0; x < c.object_count(); ++x)
      for (int y = 0; y < c.object_count(); ++y) {
        auto sp = L.spans(x, y);
        for (const auto& a : sp) {
          CHECK(L.span_equivalent(a, a));
          for (const auto& b : sp) {
            bool ab = L.span_equivalent(a, b);
            CHECK(ab == L.span_equivalent(b, a));
            if (!ab) continue;
            for (const auto& e : sp)
              if (L.span_equivalent(b, e)) CHECK(L.span_equivalent(a, e));
          }
        }
      }
  }
}

TEST_CASE("composition of spans") {
  auto d = diamond();
  auto g = groupoid_category();
  std::vector<Localization> ls{Localization(d, SigmaClass::all(d)), Localization(d, SigmaClass::identities(d)),
                               Localization(g, SigmaClass::all(g))};
  for (const auto& L : ls) {
    const auto& c = L.category();
    const int n = c.object_count();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (const auto& a : L.spans(x, y)) {
          // unit laws
          CHECK(L.span_equivalent(L.compose_spans(L.identity_span(x), a), a));
          CHECK(L.span_equivalent(L.compose_spans(a, L.identity_span(y)), a));
          for (int z = 0; z < n; ++z)
            for (const auto& b : L.spans(y, z)) {
              // filler independence
              auto fillers = L.cf3_fillers(a.f, b.s);
              REQUIRE(!fillers.empty());
              auto first = L.compose_with(a, b, fillers.front());
              for (const auto& fl : fillers) CHECK(L.span_equivalent(first, L.compose_with(a, b, fl)));
              for (int t = 0; t < n; ++t)
                for (const auto& e : L.spans(z, t))
                  CHECK(L.span_equivalent(L.compose_spans(L.compose_spans(a, b), e),
                                          L.compose_spans(a, L.compose_spans(b, e))));
            }
        }
    // P_Sigma is a functor and inverts Sigma
    for (int f = 0; f < c.arrow_count(); ++f) {
      for (int y = 0; y < n; ++y)
        for (int h : c.hom(c.dst(f), y))
          CHECK(L.span_equivalent(L.compose_spans(L.p_sigma(f), L.p_sigma(h)), L.p_sigma(c.compose(f, h))));
      if (!L.sigma().contains(f)) continue;
      CHECK(L.span_equivalent(L.compose_spans(L.p_sigma(f), L.sigma_inverse(f)), L.identity_span(c.src(f))));
      CHECK(L.span_equivalent(L.compose_spans(L.sigma_inverse(f), L.p_sigma(f)), L.identity_span(c.dst(f))));
    }
  }
}

TEST_CASE("composition without a filler") {
  auto c = cospan_only();
  Localization L(c, SigmaClass::of(c, {"1x", "1y", "1z", "s"}));
  auto a = L.p_sigma(c.arrow_index("f"));
  auto b = L.sigma_inverse(c.arrow_index("s"));
  try {
    L.compose_spans(a, b);
    FAIL("expected NoCF3Filler");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoCF3Filler);
  }
}

TEST_CASE("pullbacks in the localization") {
  auto d = diamond();
  Localization L(d, SigmaClass::identities(d));
  auto a = L.p_sigma(d.arrow_index("a<=top"));
  auto b = L.p_sigma(d.arrow_index("b<=top"));
  auto sq = L.fraction_pullback(a, b);
  CHECK(d.object(sq.corner) == "bot");
  auto r = L.check_span_pullback(sq);
  CHECK(r.passed());
  CHECK(r.cones > 0);

  // a commuting square over a non-pullback cospan corner
  SpanSquare top = sq;
  top.a = L.p_sigma(d.arrow_index("a<=top"));
  top.b = L.p_sigma(d.arrow_index("a<=top"));
  top.corner = d.object_index("bot");
  top.u = L.p_sigma(d.arrow_index("bot<=a"));
  top.v = L.p_sigma(d.arrow_index("bot<=a"));
  auto bad = L.check_span_pullback(top);
  CHECK_FALSE(bad.passed());
  CHECK(bad.failures.front().name == "mediator exists");

  // against itself: the identity cone has a mediator
  auto self = L.fraction_pullback(a, a);
  CHECK(L.check_span_pullback(self).passed());
  CHECK(d.object(self.corner) == "a");

  Localization All(d, SigmaClass::all(d));
  auto wa = All.sigma_inverse(d.arrow_index("bot<=a"));
  auto sq2 = All.fraction_pullback(All.compose_spans(wa, All.p_sigma(d.arrow_index("bot<=b"))),
                                   All.identity_span(d.object_index("b")));
  CHECK(All.check_span_pullback(sq2).passed());

  auto g = groupoid_category();
  Localization G(g, SigmaClass::all(g));
  for (int x = 0; x < g.object_count(); ++x)
    for (int y = 0; y < g.object_count(); ++y)
      for (const auto& s1 : G.spans(x, 0))
        for (const auto& s2 : G.spans(y, 0)) {
          auto s = G.fraction_pullback(s1, s2);
          CHECK(G.check_span_pullback(s).passed());
        }
}

TEST_CASE("no pullback in the base") {
  auto c = cospan_only();
  Localization L(c, SigmaClass::identities(c));
  CHECK_THROWS_AS(L.fraction_pullback(L.p_sigma(c.arrow_index("f")), L.p_sigma(c.arrow_index("s"))), Error);
}
