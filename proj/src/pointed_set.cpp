#include "fracta/pointed_set.hpp"

#include <algorithm>
#include <numeric>

namespace fracta {

namespace {

std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

// Union-find with the smaller index as representative, so the basepoint class
// is always rooted at 0.
class MinRootUnionFind {
 public:
  explicit MinRootUnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

PointedSet::PointedSet()
    : labels_(std::make_shared<const std::vector<std::string>>(std::vector<std::string>{"*"})) {}

PointedSet::PointedSet(std::vector<std::string> labels) {
  if (labels.empty()) fail(ErrorKind::MalformedInput, "a pointed set needs a basepoint");
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

int PointedSet::index_of(std::string_view label) const {
  const auto& l = *labels_;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] == label) return static_cast<int>(i);
  return -1;
}

PointedMap FinPtdSet::identity(const PointedSet& x) {
  Table t(x.size());
  std::iota(t.begin(), t.end(), 0);
  return {x, x, std::move(t)};
}

PointedMap FinPtdSet::compose(const PointedMap& f, const PointedMap& g) {
  if (!(f.dst == g.src)) fail(ErrorKind::CodomainMismatch, "composite of non-composable maps");
  Table t(f.table.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = g.table[f.table[x]];
  return {f.src, g.dst, std::move(t)};
}

bool FinPtdSet::equal(const PointedMap& f, const PointedMap& g) {
  return f.src == g.src && f.dst == g.dst && f.table == g.table;
}

PointedSet FinPtdSet::zero_object() {
  static const PointedSet zero;
  return zero;
}

PointedMap FinPtdSet::zero_arrow(const PointedSet& x, const PointedSet& y) {
  return {x, y, Table(x.size(), 0)};
}

PullbackCone<PointedSet, PointedMap> FinPtdSet::product(const PointedSet& x, const PointedSet& y) {
  std::vector<std::string> labels;
  Table p1, p2;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < y.size(); ++b) {
      labels.push_back(pair_label(x.label(a), y.label(b)));
      p1.push_back(static_cast<int>(a));
      p2.push_back(static_cast<int>(b));
    }
  }
  PointedSet apex(std::move(labels));
  return {apex, {apex, x, std::move(p1)}, {apex, y, std::move(p2)}};
}

PullbackCone<PointedSet, PointedMap> FinPtdSet::pullback(const PointedMap& f, const PointedMap& g) {
  if (!(f.dst == g.dst)) fail(ErrorKind::CodomainMismatch, "pullback of maps with different codomains");
  std::vector<std::string> labels;
  Table p1, p2;
  for (std::size_t a = 0; a < f.table.size(); ++a) {
    for (std::size_t b = 0; b < g.table.size(); ++b) {
      if (f.table[a] != g.table[b]) continue;
      labels.push_back(pair_label(f.src.label(a), g.src.label(b)));
      p1.push_back(static_cast<int>(a));
      p2.push_back(static_cast<int>(b));
    }
  }
  PointedSet apex(std::move(labels));
  return {apex, {apex, f.src, std::move(p1)}, {apex, g.src, std::move(p2)}};
}

KernelResult<PointedSet, PointedMap> FinPtdSet::kernel(const PointedMap& f) {
  std::vector<std::string> labels;
  Table k;
  for (std::size_t a = 0; a < f.table.size(); ++a) {
    if (f.table[a] != 0) continue;
    labels.push_back(f.src.label(a));
    k.push_back(static_cast<int>(a));
  }
  PointedSet obj(std::move(labels));
  return {obj, {obj, f.src, std::move(k)}};
}

CoequalizerResult<PointedSet, PointedMap> FinPtdSet::coequalizer(const PointedMap& f,
                                                                 const PointedMap& g) {
  if (!(f.src == g.src) || !(f.dst == g.dst)) fail(ErrorKind::NotParallel, "coequalizer of non-parallel maps");
  MinRootUnionFind uf(f.dst.size());
  for (std::size_t x = 0; x < f.table.size(); ++x) uf.unite(f.table[x], g.table[x]);
  std::vector<int> class_of_root(f.dst.size(), -1);
  std::vector<std::vector<std::string>> members;
  Table q(f.dst.size());
  for (std::size_t y = 0; y < f.dst.size(); ++y) {
    int r = uf.find(static_cast<int>(y));
    if (class_of_root[r] < 0) {
      class_of_root[r] = static_cast<int>(members.size());
      members.emplace_back();
    }
    q[y] = class_of_root[r];
    members[q[y]].push_back(f.dst.label(static_cast<int>(y)));
  }
  std::vector<std::string> labels;
  for (const auto& m : members) {
    if (m.size() == 1) {
      labels.push_back(m.front());
      continue;
    }
    std::string l = "[";
    for (std::size_t i = 0; i < m.size(); ++i) l += (i ? "=" : "") + m[i];
    labels.push_back(l + "]");
  }
  PointedSet obj(std::move(labels));
  return {obj, {f.dst, obj, std::move(q)}};
}

bool FinPtdSet::is_regular_epi(const PointedMap& f) {
  std::vector<char> hit(f.dst.size(), 0);
  for (int v : f.table) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool FinPtdSet::is_mono(const PointedMap& f) {
  std::vector<char> hit(f.dst.size(), 0);
  for (int v : f.table) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

std::optional<PointedMap> FinPtdSet::factor_through_mono(const PointedMap& f, const PointedMap& k) {
  if (!(f.dst == k.dst)) fail(ErrorKind::CodomainMismatch, "factorization through a mono with another codomain");
  std::vector<int> preimage(k.dst.size(), -1);
  for (std::size_t x = 0; x < k.table.size(); ++x) preimage[k.table[x]] = static_cast<int>(x);
  Table h(f.table.size());
  for (std::size_t x = 0; x < f.table.size(); ++x) {
    h[x] = preimage[f.table[x]];
    if (h[x] < 0) return std::nullopt;
  }
  return PointedMap{f.src, k.src, std::move(h)};
}

std::optional<PointedMap> FinPtdSet::from_table(const PointedSet& x, const PointedSet& y, Table table) {
  if (table.size() != x.size()) return std::nullopt;
  for (int v : table)
    if (v < 0 || static_cast<std::size_t>(v) >= y.size()) return std::nullopt;
  if (table[0] != 0) return std::nullopt;
  return PointedMap{x, y, std::move(table)};
}

std::optional<TupleObject<PointedSet, PointedMap>> FinPtdSet::tuple_subobject(
    const std::vector<PointedSet>& factors, std::vector<std::vector<int>> tuples) {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  if (tuples.empty() || std::any_of(tuples.front().begin(), tuples.front().end(), [](int v) { return v != 0; }))
    return std::nullopt;
  std::vector<std::string> labels;
  for (const auto& t : tuples) {
    if (t.size() != factors.size()) return std::nullopt;
    std::string l = "(";
    for (std::size_t k = 0; k < t.size(); ++k) l += (k ? "," : "") + factors[k].label(t[k]);
    labels.push_back(l + ")");
  }
  PointedSet obj(std::move(labels));
  TupleObject<PointedSet, PointedMap> out{obj, {}};
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Table p(tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) p[i] = tuples[i][k];
    out.projections.push_back({obj, factors[k], std::move(p)});
  }
  return out;
}

std::vector<PointedMap> FinPtdSet::enumerate_arrows(const PointedSet& x, const PointedSet& y,
                                                    std::size_t limit) {
  std::vector<PointedMap> out;
  Table t(x.size(), 0);
  const std::size_t n = x.size();
  const int m = static_cast<int>(y.size());
  for (;;) {
    if (out.size() >= limit) fail(ErrorKind::BudgetExceeded, "arrow enumeration limit reached");
    out.push_back({x, y, t});
    std::size_t k = 1;
    while (k < n && ++t[k] == m) t[k++] = 0;
    if (k >= n) break;
  }
  return out;
}

bool FinPtdSet::well_formed(const PointedMap& f) {
  if (f.table.size() != f.src.size() || f.table.empty()) return false;
  for (int v : f.table)
    if (v < 0 || static_cast<std::size_t>(v) >= f.dst.size()) return false;
  return f.table[0] == 0;
}

}  // namespace fracta
