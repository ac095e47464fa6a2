#include "fracta/pointed_groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fracta {

namespace {

using Gr = Grpd<FinPtdSet>;

int lookup(const std::map<std::string, int>& index, const std::string& key, const char* what) {
  auto it = index.find(key);
  if (it == index.end()) fail(ErrorKind::MalformedInput, std::string("unknown ") + what + " '" + key + "'");
  return it->second;
}

}  // namespace

PointedGroupoidLoad load_pointed_groupoid(const PointedGroupoidData& data, std::string name) {
  // Objects, with the basepoint moved to index 0.
  std::vector<std::string> objects;
  if (std::find(data.objects.begin(), data.objects.end(), data.basepoint) == data.objects.end())
    fail(ErrorKind::MalformedInput, "basepoint '" + data.basepoint + "' is not an object");
  objects.push_back(data.basepoint);
  for (const auto& o : data.objects)
    if (o != data.basepoint) objects.push_back(o);
  std::map<std::string, int> obj_index;
  for (std::size_t k = 0; k < objects.size(); ++k)
    if (!obj_index.emplace(objects[k], static_cast<int>(k)).second)
      fail(ErrorKind::MalformedInput, "duplicate object '" + objects[k] + "'");

  // Arrows, with the basepoint identity moved to index 0.
  auto base_id = data.identities.find(data.basepoint);
  if (base_id == data.identities.end()) fail(ErrorKind::MalformedInput, "basepoint has no identity");
  std::vector<const PointedGroupoidData::Arrow*> arrows;
  for (const auto& a : data.arrows)
    if (a.id == base_id->second) arrows.push_back(&a);
  if (arrows.empty()) fail(ErrorKind::MalformedInput, "unknown arrow '" + base_id->second + "'");
  for (const auto& a : data.arrows)
    if (a.id != base_id->second) arrows.push_back(&a);
  std::map<std::string, int> arr_index;
  std::vector<std::string> arrow_labels;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    if (!arr_index.emplace(arrows[k]->id, static_cast<int>(k)).second)
      fail(ErrorKind::MalformedInput, "duplicate arrow '" + arrows[k]->id + "'");
    arrow_labels.push_back(arrows[k]->id);
  }
  const int n0 = static_cast<int>(objects.size());
  const int n1 = static_cast<int>(arrows.size());

  Table d(n1), c(n1), e(n0, -1);
  for (int k = 0; k < n1; ++k) {
    d[k] = lookup(obj_index, arrows[k]->src, "object");
    c[k] = lookup(obj_index, arrows[k]->dst, "object");
  }
  for (const auto& [o, a] : data.identities) e[lookup(obj_index, o, "object")] = lookup(arr_index, a, "arrow");
  for (int x = 0; x < n0; ++x)
    if (e[x] < 0) fail(ErrorKind::MalformedInput, "object '" + objects[x] + "' has no identity");

  std::vector<std::vector<int>> comp(n1, std::vector<int>(n1, -1));
  for (const auto& [fs, gs, hs] : data.compose) {
    int f = lookup(arr_index, fs, "arrow");
    int g = lookup(arr_index, gs, "arrow");
    int h = lookup(arr_index, hs, "arrow");
    if (c[f] != d[g]) fail(ErrorKind::MalformedInput, "composite listed for non-composable " + fs + "," + gs);
    if (comp[f][g] >= 0 && comp[f][g] != h) fail(ErrorKind::MalformedInput, "conflicting composites for " + fs + "," + gs);
    comp[f][g] = h;
  }
  for (int f = 0; f < n1; ++f)
    for (int g = 0; g < n1; ++g)
      if (c[f] == d[g] && comp[f][g] < 0)
        fail(ErrorKind::MalformedInstance, "no composite listed for " + arrow_labels[f] + "," + arrow_labels[g]);

  ValidationReport missing;
  Table inv(n1);
  for (int f = 0; f < n1; ++f) {
    inv[f] = -1;
    for (int g = 0; g < n1 && inv[f] < 0; ++g)
      if (c[f] == d[g] && d[f] == c[g] && comp[f][g] == e[d[f]] && comp[g][f] == e[c[f]]) inv[f] = g;
    if (inv[f] < 0) {
      missing.add("inverse exists", "arrow " + arrow_labels[f]);
      inv[f] = f;
    }
  }

  PointedSet A0(objects), A1(arrow_labels);
  auto composable = FinPtdSet::pullback(PointedMap{A1, A0, c}, PointedMap{A1, A0, d});
  Table mt(FinPtdSet::size(composable.apex));
  for (std::size_t z = 0; z < mt.size(); ++z) mt[z] = comp[composable.p1.table[z]][composable.p2.table[z]];
  auto g = Gr::raw(A0, A1, PointedMap{A1, A0, d}, PointedMap{A1, A0, c}, PointedMap{A0, A1, e},
                   PointedMap{composable.apex, A1, std::move(mt)}, PointedMap{A1, A1, inv}, composable,
                   std::move(name));
  PointedGroupoidLoad out;
  out.report = Gr::validate(*g);
  out.report.merge(missing);
  if (out.report.ok()) out.groupoid = g;
  return out;
}

PtdGroupoid pointed_groupoid(const PointedGroupoidData& data, std::string name) {
  auto load = load_pointed_groupoid(data, std::move(name));
  if (!load.report.ok()) {
    std::string msg = "groupoid axioms fail:";
    for (const auto& f : load.report.failures) msg += " [" + f.name + (f.detail.empty() ? "" : ": " + f.detail) + "]";
    fail(ErrorKind::MalformedInstance, msg);
  }
  return load.groupoid;
}

PointedGroupoidData to_data(const InternalGroupoid<FinPtdSet>& g) {
  PointedGroupoidData out;
  const auto& v = g.view;
  out.objects = g.A0.labels();
  out.basepoint = g.A0.label(0);
  for (int a = 0; a < v.n1; ++a) out.arrows.push_back({g.A1.label(a), g.A0.label(v.d[a]), g.A0.label(v.c[a])});
  for (int x = 0; x < v.n0; ++x) out.identities[g.A0.label(x)] = g.A1.label(v.e[x]);
  for (int f = 0; f < v.n1; ++f)
    for (int h : v.out[v.c[f]]) out.compose.push_back({g.A1.label(f), g.A1.label(h), g.A1.label(v.compose(f, h))});
  return out;
}

PtdGroupoid pieces_groupoid(const std::vector<ConnectedPiece>& pieces, std::string name) {
  if (pieces.empty()) fail(ErrorKind::MalformedInput, "at least one piece is needed");
  struct Arr {
    int piece, i, g, j;
  };
  std::vector<std::string> obj_labels;
  std::vector<int> first_object;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    first_object.push_back(static_cast<int>(obj_labels.size()));
    for (int i = 0; i < pieces[p].objects; ++i) obj_labels.push_back(obj_labels.empty() ? "*" : "x" + std::to_string(obj_labels.size()));
  }
  std::vector<Arr> arrs;
  std::map<std::array<int, 4>, int> arr_index;
  std::vector<std::string> arr_labels;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const auto& pc = pieces[p];
    const int order = static_cast<int>(pc.group.size());
    for (int i = 0; i < pc.objects; ++i)
      for (int g = 0; g < order; ++g)
        for (int j = 0; j < pc.objects; ++j) {
          // Identity of the basepoint first.
          arr_index[{static_cast<int>(p), i, g, j}] = static_cast<int>(arrs.size());
          arrs.push_back({static_cast<int>(p), i, g, j});
          arr_labels.push_back(obj_labels[first_object[p] + i] + ">" + obj_labels[first_object[p] + j] +
                               (order > 1 ? ":" + std::to_string(g) : ""));
        }
  }
  const int n1 = static_cast<int>(arrs.size());
  Table d(n1), c(n1), e(obj_labels.size());
  for (int a = 0; a < n1; ++a) {
    d[a] = first_object[arrs[a].piece] + arrs[a].i;
    c[a] = first_object[arrs[a].piece] + arrs[a].j;
  }
  for (std::size_t p = 0; p < pieces.size(); ++p)
    for (int i = 0; i < pieces[p].objects; ++i) e[first_object[p] + i] = arr_index.at({static_cast<int>(p), i, 0, i});
  auto compose = [&](int f, int g) {
    const auto& a = arrs[f];
    const auto& b = arrs[g];
    return arr_index.at({a.piece, a.i, pieces[a.piece].group[a.g][b.g], b.j});
  };
  return Gr::assemble(PointedSet(obj_labels), PointedSet(arr_labels), d, c, e, compose, std::move(name));
}

std::vector<std::vector<int>> cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

std::vector<std::vector<int>> klein_group() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return t;
}

std::vector<std::vector<int>> symmetric_group3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      // a then b
      std::array<int, 3> r{perms[b][perms[a][0]], perms[b][perms[a][1]], perms[b][perms[a][2]]};
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), r) - perms.begin());
    }
  return t;
}

PtdGroupoid discrete_groupoid(int objects, std::string name) {
  if (name.empty()) name = "discrete(" + std::to_string(objects) + ")";
  return pieces_groupoid(std::vector<ConnectedPiece>(objects), std::move(name));
}

PtdGroupoid interval_groupoid() { return pieces_groupoid({ConnectedPiece{2, {{0}}}}, "interval"); }

PtdGroupoid cyclic_groupoid(int n) {
  return pieces_groupoid({ConnectedPiece{1, cyclic_group(n)}}, "Z/" + std::to_string(n));
}

}  // namespace fracta
