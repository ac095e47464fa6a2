#include "fracta/homotopy.hpp"

namespace fracta {

bool GroupTable::is_group() const {
  const std::size_t n = order();
  if (n == 0) return false;
  for (const auto& row : mul)
    if (row.size() != n) return false;
  for (std::size_t x = 0; x < n; ++x)
    if (mul[0][x] != static_cast<int>(x) || mul[x][0] != static_cast<int>(x)) return false;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> seen(n, false);
    for (std::size_t y = 0; y < n; ++y) {
      int z = mul[x][y];
      if (z < 0 || static_cast<std::size_t>(z) >= n || seen[z]) return false;
      seen[z] = true;
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (mul[mul[x][y]][z] != mul[x][mul[y][z]]) return false;
  return true;
}

int GroupTable::inverse(int x) const {
  for (std::size_t y = 0; y < order(); ++y)
    if (mul[x][y] == 0) return static_cast<int>(y);
  return -1;
}

bool is_homomorphism(const GroupTable& a, const GroupTable& b, const Table& f) {
  if (f.size() != a.order()) return false;
  for (std::size_t x = 0; x < a.order(); ++x)
    for (std::size_t y = 0; y < a.order(); ++y)
      if (f[a.mul[x][y]] != b.mul[f[x]][f[y]]) return false;
  return true;
}

std::optional<std::vector<int>> group_isomorphism(const GroupTable& a, const GroupTable& b, std::size_t max_order) {
  if (a.order() != b.order()) return std::nullopt;
  const std::size_t n = a.order();
  if (n > max_order) fail(ErrorKind::BudgetExceeded, "group isomorphism search above order " + std::to_string(max_order));
  auto element_order = [](const GroupTable& g, int x) {
    int k = 1;
    for (int y = x; y != 0; y = g.mul[y][x]) ++k;
    return x == 0 ? 1 : k - 1;
  };
  std::vector<int> oa(n), ob(n);
  for (std::size_t x = 0; x < n; ++x) {
    oa[x] = element_order(a, static_cast<int>(x));
    ob[x] = element_order(b, static_cast<int>(x));
  }
  std::vector<int> f(n, -1);
  std::vector<bool> used(n, false);
  f[0] = 0;
  used[0] = true;
  std::function<bool(std::size_t)> rec = [&](std::size_t x) -> bool {
    if (x == n) return is_homomorphism(a, b, f);
    if (f[x] >= 0) return rec(x + 1);
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || oa[x] != ob[y]) continue;
      f[x] = static_cast<int>(y);
      used[y] = true;
      // propagate along products with already-fixed elements
      bool ok = true;
      std::vector<std::size_t> filled;
      for (std::size_t z = 0; z < x && ok; ++z) {
        if (f[z] < 0) continue;
        for (auto [p, q] : {std::pair{z, x}, std::pair{x, z}}) {
          int pa = a.mul[p][q];
          int pb = b.mul[f[p]][f[q]];
          if (f[pa] >= 0) {
            if (f[pa] != pb) ok = false;
          } else if (used[pb]) {
            ok = false;
          } else {
            f[pa] = pb;
            used[pb] = true;
            filled.push_back(pa);
          }
          if (!ok) break;
        }
      }
      if (ok && rec(x + 1)) return true;
      for (auto p : filled) {
        used[f[p]] = false;
        f[p] = -1;
      }
      used[y] = false;
      f[x] = -1;
    }
    return false;
  };
  if (rec(1)) return f;
  return std::nullopt;
}

}  // namespace fracta
