#include "fracta/fractions1d.hpp"

#include <algorithm>
#include <tuple>

namespace fracta {

namespace {

constexpr std::size_t kWitnessSample = 8;

}  // namespace

void FiniteCategory::index() {
  const std::size_t n0 = objects_.size();
  homs_.assign(n0 * n0, {});
  object_ids_.clear();
  arrow_ids_.clear();
  for (std::size_t x = 0; x < n0; ++x) object_ids_[objects_[x]] = static_cast<int>(x);
  for (std::size_t f = 0; f < arrows_.size(); ++f) {
    arrow_ids_[arrows_[f].id] = static_cast<int>(f);
    homs_[static_cast<std::size_t>(arrows_[f].src) * n0 + arrows_[f].dst].push_back(static_cast<int>(f));
  }
}

int FiniteCategory::object_index(const std::string& name) const {
  auto it = object_ids_.find(name);
  if (it == object_ids_.end()) fail(ErrorKind::MalformedInput, "unknown object '" + name + "'");
  return it->second;
}

int FiniteCategory::arrow_index(const std::string& id) const {
  auto it = arrow_ids_.find(id);
  if (it == arrow_ids_.end()) fail(ErrorKind::MalformedInput, "unknown arrow '" + id + "'");
  return it->second;
}

FiniteCategory FiniteCategory::from_data(const CategoryData& data) {
  FiniteCategory c;
  c.objects_ = data.objects;
  std::map<std::string, int> obj;
  for (std::size_t x = 0; x < data.objects.size(); ++x)
    if (!obj.emplace(data.objects[x], static_cast<int>(x)).second)
      fail(ErrorKind::MalformedInput, "duplicate object '" + data.objects[x] + "'");
  auto object_of = [&](const std::string& name) {
    auto it = obj.find(name);
    if (it == obj.end()) fail(ErrorKind::MalformedInput, "arrow refers to unknown object '" + name + "'");
    return it->second;
  };
  std::map<std::string, int> arr;
  for (const auto& a : data.arrows) {
    if (!arr.emplace(a.id, static_cast<int>(c.arrows_.size())).second)
      fail(ErrorKind::MalformedInput, "duplicate arrow '" + a.id + "'");
    c.arrows_.push_back({a.id, object_of(a.src), object_of(a.dst)});
  }
  auto arrow_of = [&](const std::string& id) {
    auto it = arr.find(id);
    if (it == arr.end()) fail(ErrorKind::MalformedInput, "unknown arrow '" + id + "'");
    return it->second;
  };
  c.identity_.assign(c.objects_.size(), -1);
  for (const auto& [o, id] : data.identities) c.identity_[object_of(o)] = arrow_of(id);
  for (std::size_t x = 0; x < c.identity_.size(); ++x)
    if (c.identity_[x] < 0) fail(ErrorKind::MalformedInput, "object '" + c.objects_[x] + "' has no identity");
  const std::size_t n1 = c.arrows_.size();
  c.comp_.assign(n1, std::vector<int>(n1, -1));
  for (const auto& [f, g, h] : data.compose) {
    int fi = arrow_of(f), gi = arrow_of(g), hi = arrow_of(h);
    if (c.arrows_[fi].dst != c.arrows_[gi].src)
      fail(ErrorKind::MalformedInput, "composite listed for non-composable pair " + f + ", " + g);
    int& slot = c.comp_[fi][gi];
    if (slot >= 0 && slot != hi) fail(ErrorKind::MalformedInput, "conflicting composites for " + f + ", " + g);
    slot = hi;
  }
  for (std::size_t f = 0; f < n1; ++f)
    for (std::size_t g = 0; g < n1; ++g)
      if (c.arrows_[f].dst == c.arrows_[g].src && c.comp_[f][g] < 0)
        fail(ErrorKind::MalformedInstance,
             "no composite listed for " + c.arrows_[f].id + ", " + c.arrows_[g].id);
  c.index();
  return c;
}

FiniteCategory FiniteCategory::of_groupoid(const GroupoidView& g, const std::string& prefix) {
  FiniteCategory c;
  for (int x = 0; x < g.n0; ++x) c.objects_.push_back("x" + std::to_string(x));
  for (int a = 0; a < g.n1; ++a) c.arrows_.push_back({prefix + std::to_string(a), g.d[a], g.c[a]});
  c.identity_.assign(g.e.begin(), g.e.end());
  c.comp_.assign(g.n1, std::vector<int>(g.n1, -1));
  for (int a = 0; a < g.n1; ++a)
    for (int b : g.out[g.c[a]]) c.comp_[a][b] = g.compose(a, b);
  c.index();
  return c;
}

FiniteCategory FiniteCategory::poset(const std::vector<std::string>& objects, const std::vector<std::vector<bool>>& leq) {
  FiniteCategory c;
  c.objects_ = objects;
  const int n = static_cast<int>(objects.size());
  std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (leq[x][y]) {
        arrow[x][y] = static_cast<int>(c.arrows_.size());
        c.arrows_.push_back({objects[x] + "<=" + objects[y], x, y});
      }
  c.identity_.resize(n);
  for (int x = 0; x < n; ++x) {
    if (arrow[x][x] < 0) fail(ErrorKind::MalformedInput, "order is not reflexive");
    c.identity_[x] = arrow[x][x];
  }
  const std::size_t n1 = c.arrows_.size();
  c.comp_.assign(n1, std::vector<int>(n1, -1));
  for (std::size_t f = 0; f < n1; ++f)
    for (std::size_t g = 0; g < n1; ++g)
      if (c.arrows_[f].dst == c.arrows_[g].src) {
        int h = arrow[c.arrows_[f].src][c.arrows_[g].dst];
        if (h < 0) fail(ErrorKind::MalformedInput, "order is not transitive");
        c.comp_[f][g] = h;
      }
  c.index();
  return c;
}

CategoryData FiniteCategory::to_data() const {
  CategoryData d;
  d.objects = objects_;
  for (const auto& a : arrows_) d.arrows.push_back({a.id, objects_[a.src], objects_[a.dst]});
  for (std::size_t x = 0; x < objects_.size(); ++x) d.identities[objects_[x]] = arrows_[identity_[x]].id;
  for (std::size_t f = 0; f < arrows_.size(); ++f)
    for (std::size_t g = 0; g < arrows_.size(); ++g)
      if (comp_[f][g] >= 0) d.compose.push_back({arrows_[f].id, arrows_[g].id, arrows_[comp_[f][g]].id});
  return d;
}

ValidationReport FiniteCategory::validate() const {
  ValidationReport r;
  const int n1 = arrow_count();
  for (int x = 0; x < object_count(); ++x) {
    int i = identity_[x];
    if (src(i) != x || dst(i) != x) r.add("identity typing", objects_[x]);
  }
  for (int f = 0; f < n1; ++f)
    for (int g = 0; g < n1; ++g) {
      int h = comp_[f][g];
      if (h < 0) continue;
      if (src(h) != src(f) || dst(h) != dst(g)) r.add("composite typing", arrows_[f].id + "." + arrows_[g].id);
    }
  if (!r.ok()) return r;
  for (int f = 0; f < n1; ++f) {
    if (compose(identity_[src(f)], f) != f) r.add("left unit", arrows_[f].id);
    if (compose(f, identity_[dst(f)]) != f) r.add("right unit", arrows_[f].id);
  }
  for (int f = 0; f < n1; ++f)
    for (int y = 0; y < object_count(); ++y)
      for (int g : hom(dst(f), y))
        for (int z = 0; z < object_count(); ++z)
          for (int h : hom(y, z))
            if (compose(compose(f, g), h) != compose(f, compose(g, h))) {
              r.add("associativity", arrows_[f].id + ", " + arrows_[g].id + ", " + arrows_[h].id);
              return r;
            }
  return r;
}

SigmaClass SigmaClass::of(const FiniteCategory& c, const std::vector<std::string>& ids) {
  SigmaClass s{std::vector<bool>(c.arrow_count(), false)};
  for (const auto& id : ids) s.member[c.arrow_index(id)] = true;
  return s;
}

SigmaClass SigmaClass::all(const FiniteCategory& c) { return {std::vector<bool>(c.arrow_count(), true)}; }

SigmaClass SigmaClass::identities(const FiniteCategory& c) {
  SigmaClass s{std::vector<bool>(c.arrow_count(), false)};
  for (int x = 0; x < c.object_count(); ++x) s.member[c.identity(x)] = true;
  return s;
}

SigmaClass SigmaClass::isomorphisms(const FiniteCategory& c) {
  SigmaClass s{std::vector<bool>(c.arrow_count(), false)};
  for (int f = 0; f < c.arrow_count(); ++f)
    for (int g : c.hom(c.dst(f), c.src(f)))
      if (c.compose(f, g) == c.identity(c.src(f)) && c.compose(g, f) == c.identity(c.dst(f))) s.member[f] = true;
  return s;
}

std::vector<std::string> SigmaClass::ids(const FiniteCategory& c) const {
  std::vector<std::string> out;
  for (int f = 0; f < c.arrow_count(); ++f)
    if (member[f]) out.push_back(c.arrow(f).id);
  return out;
}

CFReport check_right_calculus(const FiniteCategory& c, const SigmaClass& sigma) {
  CFReport r;
  const int n0 = c.object_count();
  const int n1 = c.arrow_count();
  auto id = [&](int f) { return c.arrow(f).id; };
  auto note = [](AxiomVerdict& v, std::string w) {
    if (v.witnesses.size() < kWitnessSample) v.witnesses.push_back(std::move(w));
  };

  auto& cf1 = r.cf[0];
  for (int x = 0; x < n0; ++x) {
    ++cf1.checked;
    if (!sigma.contains(c.identity(x)) && cf1.holds) {
      cf1.holds = false;
      cf1.counterexample = "identity " + id(c.identity(x)) + " not in Sigma";
    }
  }

  auto& cf2 = r.cf[1];
  for (int f = 0; f < n1 && cf2.holds; ++f) {
    if (!sigma.contains(f)) continue;
    for (int y = 0; y < n0 && cf2.holds; ++y)
      for (int g : c.hom(c.dst(f), y)) {
        if (!sigma.contains(g)) continue;
        ++cf2.checked;
        int h = c.compose(f, g);
        if (!sigma.contains(h)) {
          cf2.holds = false;
          cf2.counterexample = id(f) + "." + id(g) + " = " + id(h) + " not in Sigma";
          break;
        }
      }
  }

  auto& cf3 = r.cf[2];
  for (int s = 0; s < n1 && cf3.holds; ++s) {
    if (!sigma.contains(s)) continue;
    for (int x = 0; x < n0 && cf3.holds; ++x)
      for (int f : c.hom(x, c.dst(s))) {
        ++cf3.checked;
        bool found = false;
        for (int k = 0; k < n0 && !found; ++k)
          for (int s2 : c.hom(k, x)) {
            if (!sigma.contains(s2)) continue;
            for (int f2 : c.hom(k, c.src(s)))
              if (c.compose(s2, f) == c.compose(f2, s)) {
                found = true;
                note(cf3, "(" + id(f) + ", " + id(s) + "): s'=" + id(s2) + ", f'=" + id(f2));
                break;
              }
            if (found) break;
          }
        if (!found) {
          cf3.holds = false;
          cf3.counterexample = "no filler for f=" + id(f) + ", s=" + id(s);
          break;
        }
      }
  }

  auto& cf4 = r.cf[3];
  for (int f = 0; f < n1 && cf4.holds; ++f)
    for (int g : c.hom(c.src(f), c.dst(f))) {
      if (g == f) continue;
      bool premise = false;
      for (int z = 0; z < n0 && !premise; ++z)
        for (int s : c.hom(c.dst(f), z))
          if (sigma.contains(s) && c.compose(f, s) == c.compose(g, s)) {
            premise = true;
            break;
          }
      if (!premise) continue;
      ++cf4.checked;
      bool found = false;
      for (int k = 0; k < n0 && !found; ++k)
        for (int s2 : c.hom(k, c.src(f)))
          if (sigma.contains(s2) && c.compose(s2, f) == c.compose(s2, g)) {
            found = true;
            note(cf4, "(" + id(f) + ", " + id(g) + "): s'=" + id(s2));
            break;
          }
      if (!found) {
        cf4.holds = false;
        cf4.counterexample = "no equalizing Sigma-arrow for " + id(f) + ", " + id(g);
        break;
      }
    }
  return r;
}

Localization::Localization(FiniteCategory c, SigmaClass sigma) : c_(std::move(c)), sigma_(std::move(sigma)) {
  if (static_cast<int>(sigma_.member.size()) != c_.arrow_count())
    fail(ErrorKind::MalformedInput, "Sigma does not match the category");
}

FractionSpan1D Localization::span(int s, int f) const {
  if (!sigma_.contains(s)) fail(ErrorKind::NotAFraction, "left leg " + c_.arrow(s).id + " is not in Sigma");
  if (c_.src(s) != c_.src(f)) fail(ErrorKind::NotAFraction, "legs " + c_.arrow(s).id + ", " + c_.arrow(f).id + " have different domains");
  return {s, f};
}

FractionSpan1D Localization::identity_span(int x) const { return span(c_.identity(x), c_.identity(x)); }

FractionSpan1D Localization::p_sigma(int f) const { return span(c_.identity(c_.src(f)), f); }

FractionSpan1D Localization::sigma_inverse(int s) const { return span(s, c_.identity(c_.src(s))); }

bool Localization::span_equivalent(const FractionSpan1D& a, const FractionSpan1D& b, SpanEquivalenceWitness* w) const {
  if (span_src(a) != span_src(b) || span_dst(a) != span_dst(b))
    fail(ErrorKind::BoundaryMismatch, "spans " + describe(a) + " and " + describe(b) + " have different boundaries");
  const int i = c_.src(a.s);
  const int i2 = c_.src(b.s);
  for (int x = 0; x < c_.object_count(); ++x)
    for (int p : c_.hom(x, i))
      for (int q : c_.hom(x, i2)) {
        int l = c_.compose(p, a.s);
        if (l != c_.compose(q, b.s) || !sigma_.contains(l)) continue;
        if (c_.compose(p, a.f) != c_.compose(q, b.f)) continue;
        if (w) *w = {p, q};
        return true;
      }
  return false;
}

std::vector<CF3Filler> Localization::cf3_fillers(int f, int s) const {
  std::vector<CF3Filler> out;
  if (c_.dst(f) != c_.dst(s)) fail(ErrorKind::BoundaryMismatch, "CF3 needs a cospan");
  for (int k = 0; k < c_.object_count(); ++k)
    for (int s2 : c_.hom(k, c_.src(f))) {
      if (!sigma_.contains(s2)) continue;
      for (int f2 : c_.hom(k, c_.src(s)))
        if (c_.compose(s2, f) == c_.compose(f2, s)) out.push_back({s2, f2});
    }
  return out;
}

std::optional<CF3Filler> Localization::least_cf3_filler(int f, int s) const {
  auto all = cf3_fillers(f, s);
  if (all.empty()) return std::nullopt;
  auto key = [&](const CF3Filler& x) {
    return std::tie(c_.object(c_.src(x.s2)), c_.arrow(x.s2).id, c_.arrow(x.f2).id);
  };
  return *std::min_element(all.begin(), all.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
}

FractionSpan1D Localization::compose_with(const FractionSpan1D& a, const FractionSpan1D& b, const CF3Filler& filler) const {
  return span(c_.compose(filler.s2, a.s), c_.compose(filler.f2, b.f));
}

FractionSpan1D Localization::compose_spans(const FractionSpan1D& a, const FractionSpan1D& b) const {
  if (span_dst(a) != span_src(b))
    fail(ErrorKind::BoundaryMismatch, "spans " + describe(a) + " and " + describe(b) + " are not consecutive");
  auto filler = least_cf3_filler(a.f, b.s);
  if (!filler) fail(ErrorKind::NoCF3Filler, "no CF3 filler for " + c_.arrow(a.f).id + ", " + c_.arrow(b.s).id);
  return compose_with(a, b, *filler);
}

std::vector<FractionSpan1D> Localization::spans(int x, int y) const {
  std::vector<FractionSpan1D> out;
  for (int i = 0; i < c_.object_count(); ++i)
    for (int s : c_.hom(i, x)) {
      if (!sigma_.contains(s)) continue;
      for (int f : c_.hom(i, y)) out.push_back({s, f});
    }
  return out;
}

std::optional<std::pair<int, int>> Localization::base_pullback(int f, int g) const {
  if (c_.dst(f) != c_.dst(g)) fail(ErrorKind::BoundaryMismatch, "pullback needs a cospan");
  const int a = c_.src(f), b = c_.src(g);
  for (int p = 0; p < c_.object_count(); ++p)
    for (int p1 : c_.hom(p, a))
      for (int p2 : c_.hom(p, b)) {
        if (c_.compose(p1, f) != c_.compose(p2, g)) continue;
        bool universal = true;
        for (int w = 0; w < c_.object_count() && universal; ++w)
          for (int h1 : c_.hom(w, a)) {
            for (int h2 : c_.hom(w, b)) {
              if (c_.compose(h1, f) != c_.compose(h2, g)) continue;
              int n = 0;
              for (int u : c_.hom(w, p))
                if (c_.compose(u, p1) == h1 && c_.compose(u, p2) == h2) ++n;
              if (n != 1) {
                universal = false;
                break;
              }
            }
            if (!universal) break;
          }
        if (universal) return std::pair{p1, p2};
      }
  return std::nullopt;
}

SpanSquare Localization::fraction_pullback(const FractionSpan1D& a, const FractionSpan1D& b) const {
  if (span_dst(a) != span_dst(b)) fail(ErrorKind::BoundaryMismatch, "spans do not form a cospan");
  auto pb = base_pullback(a.f, b.f);
  if (!pb)
    fail(ErrorKind::NoPullbackInBase, "no pullback of " + c_.arrow(a.f).id + ", " + c_.arrow(b.f).id + " in the base");
  const int p = c_.src(pb->first);
  SpanSquare sq{a, b, p, span(c_.identity(p), c_.compose(pb->first, a.s)),
                span(c_.identity(p), c_.compose(pb->second, b.s))};
  return sq;
}

SpanPullbackReport Localization::check_span_pullback(const SpanSquare& sq) const {
  SpanPullbackReport r;
  r.commutes = span_equivalent(compose_spans(sq.u, sq.a), compose_spans(sq.v, sq.b));
  if (!r.commutes) r.failures.push_back({"commutes", describe(sq.u) + " / " + describe(sq.v)});
  const int A = span_src(sq.a), B = span_src(sq.b);
  for (int w = 0; w < c_.object_count(); ++w) {
    auto xs = spans(w, A);
    auto ys = spans(w, B);
    auto ms = spans(w, sq.corner);
    for (const auto& x : xs)
      for (const auto& y : ys) {
        if (!span_equivalent(compose_spans(x, sq.a), compose_spans(y, sq.b))) continue;
        ++r.cones;
        std::vector<FractionSpan1D> classes;
        for (const auto& m : ms) {
          if (!span_equivalent(compose_spans(m, sq.u), x) || !span_equivalent(compose_spans(m, sq.v), y)) continue;
          bool known = false;
          for (const auto& k : classes) known = known || span_equivalent(k, m);
          if (!known) classes.push_back(m);
        }
        std::string where = "cone " + describe(x) + ", " + describe(y) + " from " + c_.object(w);
        if (classes.empty()) r.failures.push_back({"mediator exists", where});
        if (classes.size() > 1) r.failures.push_back({"mediator unique", where});
      }
  }
  return r;
}

std::string Localization::describe(const FractionSpan1D& a) const {
  return "(" + c_.arrow(a.s).id + ", " + c_.arrow(a.f).id + ")";
}

}  // namespace fracta
