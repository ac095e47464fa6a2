#include "fracta/abelian_groupoid.hpp"

namespace fracta {

namespace {

using Gr = Grpd<FinAb>;

}  // namespace

AbelianGroupoidLoad load_abelian_groupoid(const FinAbGroup& A0, const FinAbGroup& A1, const FinAbHom& d,
                                          const FinAbHom& c, const FinAbHom& e, std::string name) {
  if (!(d.src() == A1) || !(d.dst() == A0) || !(c.src() == A1) || !(c.dst() == A0) || !(e.src() == A0) ||
      !(e.dst() == A1))
    fail(ErrorKind::MalformedInput, "structure homs do not match A0 and A1");
  auto composable = FinAb::pullback(c, d);
  // m = p1 + p2 - p1.c.e and i = d.e + c.e - id
  auto m = subtract(add(composable.p1, composable.p2), FinAb::compose(FinAb::compose(composable.p1, c), e));
  auto i = subtract(add(FinAb::compose(d, e), FinAb::compose(c, e)), FinAb::identity(A1));
  auto g = Gr::raw(A0, A1, d, c, e, m, i, composable, std::move(name));
  AbelianGroupoidLoad out;
  out.report = Gr::validate(*g);
  if (out.report.ok()) out.groupoid = g;
  return out;
}

AbGroupoid abelian_groupoid(const FinAbGroup& A0, const FinAbGroup& A1, const FinAbHom& d, const FinAbHom& c,
                            const FinAbHom& e, std::string name) {
  auto load = load_abelian_groupoid(A0, A1, d, c, e, std::move(name));
  if (!load.report.ok()) {
    std::string msg = "groupoid axioms fail:";
    for (const auto& f : load.report.failures) msg += " [" + f.name + (f.detail.empty() ? "" : ": " + f.detail) + "]";
    fail(ErrorKind::MalformedInstance, msg);
  }
  return load.groupoid;
}

AbGroupoid boundary_groupoid(const FinAbHom& boundary, std::string name) {
  const auto& M = boundary.src();
  const auto& N = boundary.dst();
  auto prod = FinAb::product(N, M);
  auto d = prod.p1;
  auto c = add(prod.p1, FinAb::compose(prod.p2, boundary));
  auto e = pairing<FinAb>(prod, FinAb::identity(N), FinAb::zero_arrow(N, M));
  return abelian_groupoid(N, prod.apex, d, c, e, std::move(name));
}

AbFunctor boundary_functor(const AbGroupoid& src, const AbGroupoid& dst, const FinAbHom& fN, const FinAbHom& fM) {
  auto ps = FinAb::product(fN.src(), fM.src());
  auto pd = FinAb::product(fN.dst(), fM.dst());
  if (!(ps.apex == src->A1) || !(pd.apex == dst->A1) || !(fN.src() == src->A0) || !(fN.dst() == dst->A0))
    fail(ErrorKind::CodomainMismatch, "homs do not match the boundary groupoids");
  auto F1 = pairing<FinAb>(pd, FinAb::compose(ps.p1, fN), FinAb::compose(ps.p2, fM));
  return Gr::functor(src, dst, fN.table(), F1.table());
}

}  // namespace fracta
