#include <doctest.h>

#include "fracta/pointed_set.hpp"

using namespace fracta;

namespace {
PointedSet set(std::vector<std::string> l) { return PointedSet(std::move(l)); }
PointedMap map(const PointedSet& x, const PointedSet& y, Table t) { return *FinPtdSet::from_table(x, y, std::move(t)); }
}  // namespace

TEST_CASE("pointed pullback enumerates matching pairs") {
  auto a = set({"*", "a"}), b = set({"*", "b"}), z = set({"*", "z"});
  auto pb = FinPtdSet::pullback(map(a, z, {0, 1}), map(b, z, {0, 1}));
  CHECK(pb.apex.labels() == std::vector<std::string>{"(*,*)", "(a,b)"});
  auto id = FinPtdSet::pullback(FinPtdSet::identity(z), FinPtdSet::identity(z));
  CHECK(id.apex.size() == 2);
  CHECK(FinPtdSet::equal(id.p1, id.p2));
}

TEST_CASE("pointed pullback against the zero arrow is the kernel") {
  auto x = set({"*", "a", "b"}), z = set({"*", "z"});
  auto f = map(x, z, {0, 0, 1});
  auto pb = FinPtdSet::pullback(f, FinPtdSet::zero_arrow(FinPtdSet::zero_object(), z));
  auto k = FinPtdSet::kernel(f);
  CHECK(k.object.labels() == std::vector<std::string>{"*", "a"});
  CHECK(pb.apex.size() == k.object.size());
  CHECK(FinPtdSet::table(pb.p1) == FinPtdSet::table(k.mono));
}

TEST_CASE("pointed coequalizer") {
  auto x = set({"*", "x"}), y = set({"*", "u", "v"});
  auto q = FinPtdSet::coequalizer(map(x, y, {0, 1}), map(x, y, {0, 2}));
  CHECK(q.object.labels() == std::vector<std::string>{"*", "[u=v]"});
  auto same = FinPtdSet::coequalizer(map(x, y, {0, 1}), map(x, y, {0, 1}));
  CHECK(same.object.size() == 3);
  CHECK(FinPtdSet::is_regular_epi(q.quotient));
}

TEST_CASE("pointed regular epi and factorization") {
  auto one = set({"*"}), two = set({"*", "a"}), three = set({"*", "a", "b"});
  CHECK_FALSE(FinPtdSet::is_regular_epi(map(one, two, {0})));
  CHECK(FinPtdSet::is_regular_epi(map(three, two, {0, 1, 1})));
  auto y = set({"*", "u", "v"});
  auto f = map(two, y, {0, 1});
  auto k = map(two, y, {0, 2});
  CHECK_FALSE(FinPtdSet::factor_through_mono(f, k).has_value());
  auto h = FinPtdSet::factor_through_mono(f, f);
  REQUIRE(h);
  CHECK(FinPtdSet::equal(*h, FinPtdSet::identity(two)));
  auto zero = FinPtdSet::factor_through_mono(FinPtdSet::zero_arrow(three, y), k);
  REQUIRE(zero);
  CHECK(is_zero_arrow<FinPtdSet>(*zero));
}

TEST_CASE("from_table rejects non-pointed tables") {
  auto two = set({"*", "a"});
  CHECK_FALSE(FinPtdSet::from_table(two, two, {1, 0}).has_value());
  CHECK_FALSE(FinPtdSet::from_table(two, two, {0, 2}).has_value());
}

TEST_CASE("enumerate pointed maps") {
  auto three = set({"*", "a", "b"});
  CHECK(FinPtdSet::enumerate_arrows(three, three, 100).size() == 9);
  CHECK_THROWS_AS(FinPtdSet::enumerate_arrows(three, three, 5), Error);
}
