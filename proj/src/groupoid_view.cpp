#include <numeric>

#include "fracta/groupoid.hpp"

namespace fracta {

GroupoidView make_view(int n0, int n1, Table d, Table c, Table e, Table inv,
                       const std::vector<std::array<int, 3>>& compositions) {
  auto in_range = [](const Table& t, std::size_t size, int bound) {
    if (t.size() != size) return false;
    for (int v : t)
      if (v < 0 || v >= bound) return false;
    return true;
  };
  if (!in_range(d, n1, n0) || !in_range(c, n1, n0) || !in_range(e, n0, n1) || !in_range(inv, n1, n1))
    fail(ErrorKind::MalformedInput, "groupoid structure table out of range");

  GroupoidView v;
  v.n0 = n0;
  v.n1 = n1;
  v.d = std::move(d);
  v.c = std::move(c);
  v.e = std::move(e);
  v.inv = std::move(inv);
  v.out.assign(n0, {});
  v.out_pos.assign(n1, 0);
  v.homs.assign(static_cast<std::size_t>(n0) * n0, {});
  for (int a = 0; a < n1; ++a) {
    v.out_pos[a] = static_cast<int>(v.out[v.d[a]].size());
    v.out[v.d[a]].push_back(a);
    v.homs[static_cast<std::size_t>(v.d[a]) * n0 + v.c[a]].push_back(a);
  }
  v.comp.assign(n1, {});
  for (int f = 0; f < n1; ++f) v.comp[f].assign(v.out[v.c[f]].size(), -1);
  for (const auto& [f, g, h] : compositions) {
    if (f < 0 || f >= n1 || g < 0 || g >= n1 || h < 0 || h >= n1 || v.c[f] != v.d[g])
      fail(ErrorKind::MalformedInput, "composition entry out of range");
    v.comp[f][v.out_pos[g]] = h;
  }

  // Components with the least object as root; spanning arrows by BFS in arrow order.
  v.component.assign(n0, -1);
  v.spanning.assign(n0, -1);
  for (int r = 0; r < n0; ++r) {
    if (v.component[r] >= 0) continue;
    const int k = static_cast<int>(v.roots.size());
    v.roots.push_back(r);
    v.component[r] = k;
    v.spanning[r] = v.e[r];
    for (int a : v.out[r]) {
      int y = v.c[a];
      if (v.component[y] < 0) {
        v.component[y] = k;
        v.spanning[y] = a;
      }
    }
  }
  return v;
}

}  // namespace fracta
