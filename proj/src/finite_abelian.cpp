#include "fracta/finite_abelian.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace fracta {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t big_mod(const BigInt& a, std::int64_t n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return static_cast<std::int64_t>(r);
}

// Reduces row i modulo moduli[i].
void reduce_rows(IntMatrix& m, const std::vector<std::int64_t>& moduli) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), moduli[i]);
}

IntMatrix diagonal(const std::vector<std::int64_t>& d) {
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m << a, b;
  return m;
}

std::vector<std::int64_t> concat(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Product of int64 matrices with overflow checks.
IntMatrix checked_product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out = IntMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        out(i, j) = detail::add(out(i, j), detail::mul(a(i, k), b(k, j)));
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

FinAbGroup::FinAbGroup(std::vector<std::int64_t> invariant_factors, std::int64_t order_bound) {
  for (auto f : invariant_factors) {
    if (f <= 0) fail(ErrorKind::MalformedInput, "invariant factors must be positive");
    if (f == 1) continue;
    if (!factors_.empty() && f % factors_.back() != 0)
      fail(ErrorKind::MalformedInput, "invariant factors must form a divisibility chain");
    factors_.push_back(f);
  }
  std::int64_t order = 1;
  for (auto f : factors_) {
    order = detail::mul(order, f);
    if (order > order_bound) fail(ErrorKind::BudgetExceeded, "group order exceeds the element budget");
  }
  order_ = static_cast<std::size_t>(order);
}

std::vector<std::int64_t> FinAbGroup::decode(int index) const {
  std::vector<std::int64_t> r(factors_.size());
  std::int64_t x = index;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    r[i] = x % factors_[i];
    x /= factors_[i];
  }
  return r;
}

int FinAbGroup::encode(std::span<const std::int64_t> residues) const {
  std::int64_t x = 0;
  std::int64_t place = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    x += mod(residues[i], factors_[i]) * place;
    place *= factors_[i];
  }
  return static_cast<int>(x);
}

std::string FinAbGroup::label(int index) const {
  if (factors_.empty()) return "0";
  auto r = decode(index);
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

int FinAbGroup::add(int x, int y) const {
  std::int64_t out = 0, place = 1;
  for (auto f : factors_) {
    out += ((x % f + y % f) % f) * place;
    x = static_cast<int>(x / f);
    y = static_cast<int>(y / f);
    place *= f;
  }
  return static_cast<int>(out);
}

int FinAbGroup::negate(int x) const {
  std::int64_t out = 0, place = 1;
  for (auto f : factors_) {
    out += ((f - x % f) % f) * place;
    x = static_cast<int>(x / f);
    place *= f;
  }
  return static_cast<int>(out);
}

// ---------------------------------------------------------------------------

FinAbHom FinAbHom::unchecked(FinAbGroup src, FinAbGroup dst, IntMatrix matrix) {
  if (matrix.rows() != static_cast<Eigen::Index>(dst.rank()) ||
      matrix.cols() != static_cast<Eigen::Index>(src.rank()))
    fail(ErrorKind::MalformedInput, "hom matrix has the wrong shape");
  FinAbHom h;
  reduce_rows(matrix, dst.factors());
  h.src_ = std::move(src);
  h.dst_ = std::move(dst);
  h.matrix_ = std::move(matrix);
  return h;
}

FinAbHom::FinAbHom(FinAbGroup src, FinAbGroup dst, IntMatrix matrix) {
  *this = unchecked(std::move(src), std::move(dst), std::move(matrix));
  if (!well_defined()) fail(ErrorKind::MalformedHom, "generator order not respected");
}

bool FinAbHom::well_defined() const {
  const auto& n = src_.factors();
  const auto& q = dst_.factors();
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
      if (detail::mul(n[j], matrix_(i, j)) % q[i] != 0) return false;
  return true;
}

int FinAbHom::apply(int x) const {
  auto r = src_.decode(x);
  std::vector<std::int64_t> y(dst_.rank(), 0);
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    std::int64_t acc = 0;
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j) acc = (acc + matrix_(i, j) * r[j]) % dst_.factors()[i];
    y[i] = acc;
  }
  return dst_.encode(y);
}

Table FinAbHom::table() const {
  Table t(src_.order());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = apply(static_cast<int>(x));
  return t;
}

FinAbHom add(const FinAbHom& f, const FinAbHom& g) {
  if (!(f.src() == g.src()) || !(f.dst() == g.dst())) fail(ErrorKind::NotParallel, "sum of non-parallel homs");
  return FinAbHom::unchecked(f.src(), f.dst(), f.matrix() + g.matrix());
}

FinAbHom negate(const FinAbHom& f) { return FinAbHom::unchecked(f.src(), f.dst(), -f.matrix()); }

FinAbHom subtract(const FinAbHom& f, const FinAbHom& g) { return add(f, negate(g)); }

// ---------------------------------------------------------------------------
// Lattice routines

BigMatrix integer_kernel(const BigMatrix& a) {
  auto snf = smith_normal_form(a);
  const Eigen::Index r = snf.rank();
  return snf.V.rightCols(a.cols() - r);
}

QuotientPresentation quotient_presentation(const BigMatrix& relations) {
  const Eigen::Index n = relations.rows();
  auto snf = smith_normal_form(relations);
  std::vector<std::int64_t> factors;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    BigInt d = (i < relations.cols()) ? snf.D(i, i) : BigInt(0);
    if (d == 0) fail(ErrorKind::Internal, "quotient is infinite");
    if (d > 1) {
      if (d > FinAbGroup::default_order_bound) fail(ErrorKind::BudgetExceeded, "quotient too large");
      factors.push_back(static_cast<std::int64_t>(d));
      keep.push_back(i);
    }
  }
  QuotientPresentation q;
  q.group = FinAbGroup(factors);
  q.projection = IntMatrix(static_cast<Eigen::Index>(keep.size()), n);
  q.section = BigMatrix(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    for (Eigen::Index j = 0; j < n; ++j) q.projection(k, j) = big_mod(snf.U(keep[k], j), factors[k]);
    q.section.col(k) = snf.U_inverse.col(keep[k]);
  }
  return q;
}

SubgroupPresentation subgroup_presentation(const std::vector<std::int64_t>& moduli, const IntMatrix& generators) {
  const Eigen::Index g = generators.cols();
  // Relations among the generators: first g coordinates of ker[G | diag(moduli)].
  BigMatrix kernel = integer_kernel(to_big(hcat(generators, diagonal(moduli))));
  BigMatrix relations = kernel.topRows(g);
  auto q = quotient_presentation(relations);
  IntMatrix inclusion(generators.rows(), q.section.cols());
  for (Eigen::Index i = 0; i < generators.rows(); ++i)
    for (Eigen::Index j = 0; j < q.section.cols(); ++j) {
      BigInt acc = 0;
      for (Eigen::Index k = 0; k < g; ++k) acc += BigInt(generators(i, k)) * q.section(k, j);
      inclusion(i, j) = big_mod(acc, moduli[i]);
    }
  return {q.group, inclusion};
}

SubgroupPresentation kernel_presentation(const std::vector<std::int64_t>& src_moduli, const IntMatrix& m,
                                         const std::vector<std::int64_t>& dst_moduli) {
  const Eigen::Index k = m.cols();
  BigMatrix kernel = integer_kernel(to_big(hcat(m, diagonal(dst_moduli))));
  IntMatrix gens(k, kernel.cols());
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) gens(i, j) = big_mod(kernel(i, j), src_moduli[i]);
  return subgroup_presentation(src_moduli, gens);
}

// ---------------------------------------------------------------------------

FinAbHom FinAb::identity(const FinAbGroup& x) {
  const auto r = static_cast<Eigen::Index>(x.rank());
  return FinAbHom::unchecked(x, x, IntMatrix::Identity(r, r));
}

FinAbHom FinAb::compose(const FinAbHom& f, const FinAbHom& g) {
  if (!(f.dst() == g.src())) fail(ErrorKind::CodomainMismatch, "composite of non-composable homs");
  return FinAbHom::unchecked(f.src(), g.dst(), checked_product(g.matrix(), f.matrix()));
}

bool FinAb::equal(const FinAbHom& f, const FinAbHom& g) {
  return f.src() == g.src() && f.dst() == g.dst() && f.matrix() == g.matrix();
}

FinAbHom FinAb::zero_arrow(const FinAbGroup& x, const FinAbGroup& y) {
  return FinAbHom::unchecked(x, y, IntMatrix::Zero(static_cast<Eigen::Index>(y.rank()),
                                                   static_cast<Eigen::Index>(x.rank())));
}

PullbackCone<FinAbGroup, FinAbHom> FinAb::product(const FinAbGroup& x, const FinAbGroup& y) {
  auto moduli = concat(x.factors(), y.factors());
  const auto n = static_cast<Eigen::Index>(moduli.size());
  auto sum = subgroup_presentation(moduli, IntMatrix::Identity(n, n));
  const auto rx = static_cast<Eigen::Index>(x.rank());
  const auto ry = static_cast<Eigen::Index>(y.rank());
  return {sum.group, FinAbHom::unchecked(sum.group, x, sum.inclusion.topRows(rx)),
          FinAbHom::unchecked(sum.group, y, sum.inclusion.bottomRows(ry))};
}

PullbackCone<FinAbGroup, FinAbHom> FinAb::pullback(const FinAbHom& f, const FinAbHom& g) {
  if (!(f.dst() == g.dst())) fail(ErrorKind::CodomainMismatch, "pullback of homs with different codomains");
  auto moduli = concat(f.src().factors(), g.src().factors());
  auto p = kernel_presentation(moduli, hcat(f.matrix(), -g.matrix()), f.dst().factors());
  const auto rx = static_cast<Eigen::Index>(f.src().rank());
  const auto ry = static_cast<Eigen::Index>(g.src().rank());
  return {p.group, FinAbHom::unchecked(p.group, f.src(), p.inclusion.topRows(rx)),
          FinAbHom::unchecked(p.group, g.src(), p.inclusion.bottomRows(ry))};
}

KernelResult<FinAbGroup, FinAbHom> FinAb::kernel(const FinAbHom& f) {
  if (!f.well_defined()) fail(ErrorKind::MalformedHom, "kernel of an ill-defined hom");
  auto p = kernel_presentation(f.src().factors(), f.matrix(), f.dst().factors());
  return {p.group, FinAbHom::unchecked(p.group, f.src(), p.inclusion)};
}

CoequalizerResult<FinAbGroup, FinAbHom> FinAb::coequalizer(const FinAbHom& f, const FinAbHom& g) {
  if (!(f.src() == g.src()) || !(f.dst() == g.dst()))
    fail(ErrorKind::NotParallel, "coequalizer of non-parallel homs");
  IntMatrix rel = hcat(f.matrix() - g.matrix(), diagonal(f.dst().factors()));
  auto q = quotient_presentation(rel);
  return {q.group, FinAbHom::unchecked(f.dst(), q.group, q.projection)};
}

bool FinAb::is_regular_epi(const FinAbHom& f) {
  auto k = kernel(f);
  return f.src().order() == k.object.order() * f.dst().order();
}

bool FinAb::is_mono(const FinAbHom& f) { return kernel(f).object.order() == 1; }

std::optional<FinAbHom> FinAb::factor_through_mono(const FinAbHom& f, const FinAbHom& k) {
  if (!(f.dst() == k.dst())) fail(ErrorKind::CodomainMismatch, "factorization through a mono with another codomain");
  std::vector<int> preimage(k.dst().order(), -1);
  auto kt = k.table();
  for (std::size_t x = 0; x < kt.size(); ++x) preimage[kt[x]] = static_cast<int>(x);
  const auto& src = f.src();
  IntMatrix h(static_cast<Eigen::Index>(k.src().rank()), static_cast<Eigen::Index>(src.rank()));
  // Images of the generators land in the image of k iff every element does.
  std::int64_t place = 1;
  for (std::size_t j = 0; j < src.rank(); ++j) {
    int y = f.apply(static_cast<int>(place));
    place *= src.factors()[j];
    if (preimage[y] < 0) return std::nullopt;
    auto r = k.src().decode(preimage[y]);
    for (std::size_t i = 0; i < r.size(); ++i) h(i, j) = r[i];
  }
  return FinAbHom::unchecked(src, k.src(), h);
}

std::optional<FinAbHom> FinAb::from_table(const FinAbGroup& x, const FinAbGroup& y, Table table) {
  if (table.size() != x.order()) return std::nullopt;
  for (int v : table)
    if (v < 0 || static_cast<std::size_t>(v) >= y.order()) return std::nullopt;
  if (table[0] != 0) return std::nullopt;
  IntMatrix m(static_cast<Eigen::Index>(y.rank()), static_cast<Eigen::Index>(x.rank()));
  std::int64_t place = 1;
  for (std::size_t j = 0; j < x.rank(); ++j) {
    auto r = y.decode(table[place]);
    for (std::size_t i = 0; i < r.size(); ++i) m(i, j) = r[i];
    place *= x.factors()[j];
  }
  auto h = FinAbHom::unchecked(x, y, m);
  if (!h.well_defined()) return std::nullopt;
  for (std::size_t e = 0; e < table.size(); ++e)
    if (h.apply(static_cast<int>(e)) != table[e]) return std::nullopt;
  return h;
}

std::optional<TupleObject<FinAbGroup, FinAbHom>> FinAb::tuple_subobject(const std::vector<FinAbGroup>& factors,
                                                                       std::vector<std::vector<int>> tuples) {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  if (tuples.empty()) return std::nullopt;
  std::vector<std::int64_t> moduli;
  for (const auto& f : factors) moduli = concat(moduli, f.factors());
  const std::size_t n = moduli.size();

  auto raw = [&](const std::vector<int>& t) {
    std::vector<std::int64_t> v;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      auto r = factors[k].decode(t[k]);
      v.insert(v.end(), r.begin(), r.end());
    }
    return v;
  };
  std::set<std::vector<std::int64_t>> wanted;
  for (const auto& t : tuples) {
    if (t.size() != factors.size()) return std::nullopt;
    wanted.insert(raw(t));
  }

  // Grow the generated subgroup one generator at a time; stop as soon as it
  // leaves the given set.
  std::set<std::vector<std::int64_t>> closure{std::vector<std::int64_t>(n, 0)};
  std::vector<std::vector<std::int64_t>> gens;
  for (const auto& w : wanted) {
    if (closure.count(w)) continue;
    gens.push_back(w);
    std::vector<std::vector<std::int64_t>> frontier(closure.begin(), closure.end());
    for (const auto& s : frontier) {
      auto v = s;
      for (;;) {
        for (std::size_t i = 0; i < n; ++i) v[i] = (v[i] + w[i]) % moduli[i];
        if (!closure.insert(v).second) break;
        if (closure.size() > wanted.size()) return std::nullopt;
      }
    }
  }
  if (closure != wanted) return std::nullopt;

  IntMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) g(i, j) = gens[j][i];
  auto sub = subgroup_presentation(moduli, g);
  TupleObject<FinAbGroup, FinAbHom> out{sub.group, {}};
  Eigen::Index row = 0;
  for (const auto& f : factors) {
    const auto r = static_cast<Eigen::Index>(f.rank());
    out.projections.push_back(FinAbHom::unchecked(sub.group, f, sub.inclusion.middleRows(row, r)));
    row += r;
  }
  return out;
}

std::vector<FinAbHom> FinAb::enumerate_arrows(const FinAbGroup& x, const FinAbGroup& y, std::size_t limit) {
  // Candidate images of each generator: elements of y killed by its order.
  std::vector<std::vector<std::vector<std::int64_t>>> images(x.rank());
  for (std::size_t j = 0; j < x.rank(); ++j) {
    for (std::size_t e = 0; e < y.order(); ++e) {
      auto r = y.decode(static_cast<int>(e));
      bool ok = true;
      for (std::size_t i = 0; i < r.size() && ok; ++i) ok = (x.factors()[j] * r[i]) % y.factors()[i] == 0;
      if (ok) images[j].push_back(std::move(r));
    }
  }
  std::vector<FinAbHom> out;
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(y.rank()), static_cast<Eigen::Index>(x.rank()));
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == x.rank()) {
      if (out.size() >= limit) fail(ErrorKind::BudgetExceeded, "arrow enumeration limit reached");
      out.push_back(FinAbHom::unchecked(x, y, m));
      return;
    }
    for (const auto& r : images[j]) {
      for (std::size_t i = 0; i < r.size(); ++i) m(i, j) = r[i];
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace fracta
