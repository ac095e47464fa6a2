#pragma once

// Bounded re-verification of a base category instance: category axioms,
// zero object, limit/colimit universal properties and the instance predicates,
// all by enumeration over a finite sample of objects and arrows.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "fracta/base_category.hpp"
#include "fracta/groupoid.hpp"

namespace fracta {

template <BaseCategory C>
struct Presentation {
  std::vector<typename C::Object> objects;
  std::vector<typename C::Arrow> arrows;
  std::vector<std::string> names;  // optional, parallel to arrows
  /// Declared composites (f, g, h): f.g = h, by arrow index. When present it must
  /// be total on composable pairs of listed arrows and is what the axioms are
  /// checked against.
  std::vector<std::array<int, 3>> compose;
};

struct InstanceBounds {
  std::size_t exhaustive = 4;   // largest object used as a limit/colimit input
  std::size_t competitor = 2;   // largest apex/target for competing cones
  std::size_t max_pairs = 20000;
  std::size_t max_triples = 2000000;
};

namespace instance_detail {

template <BaseCategory C>
std::string arrow_name(const Presentation<C>& p, std::size_t k) {
  return k < p.names.size() ? p.names[k] : "#" + std::to_string(k);
}

template <BaseCategory C>
std::vector<typename C::Arrow> arrows_between(const typename C::Object& x, const typename C::Object& y) {
  return C::enumerate_arrows(x, y, 1u << 20);
}

}  // namespace instance_detail

/// All objects up to the given size that the instance can enumerate.
template <BaseCategory C>
std::vector<typename C::Object> sample_objects(std::size_t max_size);

template <>
inline std::vector<PointedSet> sample_objects<FinPtdSet>(std::size_t max_size) {
  std::vector<PointedSet> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::vector<std::string> labels{"*"};
    for (std::size_t k = 1; k < n; ++k) labels.push_back(std::string(1, static_cast<char>('a' + k - 1)));
    out.emplace_back(labels);
  }
  return out;
}

template <>
inline std::vector<FinAbGroup> sample_objects<FinAb>(std::size_t max_size) {
  // invariant-factor chains f1 | f2 | ... with product at most max_size
  const auto bound = static_cast<std::int64_t>(max_size);
  std::vector<FinAbGroup> out;
  std::vector<std::int64_t> chain;
  std::function<void(std::int64_t)> rec = [&](std::int64_t order) {
    out.emplace_back(chain);
    const std::int64_t step = chain.empty() ? 1 : chain.back();
    for (std::int64_t f = chain.empty() ? 2 : step; order * f <= bound; f += step) {
      chain.push_back(f);
      rec(order * f);
      chain.pop_back();
    }
  };
  rec(1);
  std::stable_sort(out.begin(), out.end(), [](const FinAbGroup& a, const FinAbGroup& b) { return a.order() < b.order(); });
  return out;
}

/// Every object up to the bound and every arrow between them.
template <BaseCategory C>
Presentation<C> shipped_presentation(std::size_t max_size) {
  Presentation<C> p;
  p.objects = sample_objects<C>(max_size);
  for (const auto& x : p.objects)
    for (const auto& y : p.objects)
      for (auto& f : instance_detail::arrows_between<C>(x, y)) p.arrows.push_back(std::move(f));
  return p;
}

template <BaseCategory C>
ValidationReport validate_instance(const Presentation<C>& inst, const InstanceBounds& bounds = {}) {
  using Arrow = typename C::Arrow;
  using Object = typename C::Object;
  using instance_detail::arrow_name;
  ValidationReport r;
  const auto& arrows = inst.arrows;
  const std::size_t n = arrows.size();

  for (std::size_t k = 0; k < n; ++k)
    if (!C::well_formed(arrows[k])) r.add("basepoint", "arrow " + arrow_name(inst, k) + " is not a pointed morphism");
  if (!r.ok()) return r;

  // Composition: declared table or extensional.
  std::vector<std::vector<int>> declared;
  const bool has_table = !inst.compose.empty();
  if (has_table) {
    declared.assign(n, std::vector<int>(n, -1));
    for (auto [f, g, h] : inst.compose) {
      if (f < 0 || g < 0 || h < 0 || static_cast<std::size_t>(std::max({f, g, h})) >= n)
        fail(ErrorKind::MalformedInput, "composition entry out of range");
      declared[f][g] = h;
    }
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g)
        if (C::same_object(C::dst(arrows[f]), C::src(arrows[g])) && declared[f][g] < 0)
          fail(ErrorKind::MalformedInstance,
               "no composite declared for " + arrow_name(inst, f) + "," + arrow_name(inst, g));
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g) {
        int h = declared[f][g];
        if (h < 0) continue;
        if (!C::same_object(C::src(arrows[h]), C::src(arrows[f])) || !C::same_object(C::dst(arrows[h]), C::dst(arrows[g])))
          r.add("composite typing", arrow_name(inst, f) + "." + arrow_name(inst, g));
      }
    if (!r.ok()) return r;
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g) {
        if (declared[f][g] < 0) continue;
        for (std::size_t h = 0; h < n; ++h) {
          if (declared[g][h] < 0) continue;
          if (declared[declared[f][g]][h] != declared[f][declared[g][h]])
            r.add("associativity", arrow_name(inst, f) + "," + arrow_name(inst, g) + "," + arrow_name(inst, h));
        }
      }
    // Identities among the listed arrows must be units for the table.
    for (std::size_t u = 0; u < n; ++u) {
      if (!C::equal(arrows[u], C::identity(C::src(arrows[u])))) continue;
      for (std::size_t f = 0; f < n; ++f) {
        if (declared[u][f] >= 0 && static_cast<std::size_t>(declared[u][f]) != f)
          r.add("unit", arrow_name(inst, u) + "." + arrow_name(inst, f));
        if (declared[f][u] >= 0 && static_cast<std::size_t>(declared[f][u]) != f)
          r.add("unit", arrow_name(inst, f) + "." + arrow_name(inst, u));
      }
    }
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g)
        if (declared[f][g] >= 0 && !C::equal(arrows[declared[f][g]], C::compose(arrows[f], arrows[g])))
          r.add("composition matches tables", arrow_name(inst, f) + "." + arrow_name(inst, g));
  } else {
    // Extensional composition: spot-check associativity and units on listed arrows.
    std::size_t triples = 0;
    for (std::size_t f = 0; f < n && !r.truncated; ++f)
      for (std::size_t g = 0; g < n; ++g) {
        if (!C::same_object(C::dst(arrows[f]), C::src(arrows[g]))) continue;
        auto fg = C::compose(arrows[f], arrows[g]);
        for (std::size_t h = 0; h < n; ++h) {
          if (!C::same_object(C::dst(arrows[g]), C::src(arrows[h]))) continue;
          if (++triples > bounds.max_triples) {
            r.truncated = true;
            break;
          }
          if (!C::equal(C::compose(fg, arrows[h]), C::compose(arrows[f], C::compose(arrows[g], arrows[h]))))
            r.add("associativity", arrow_name(inst, f) + "," + arrow_name(inst, g) + "," + arrow_name(inst, h));
        }
      }
    for (std::size_t f = 0; f < n; ++f) {
      const auto& a = arrows[f];
      if (!C::equal(C::compose(C::identity(C::src(a)), a), a) || !C::equal(C::compose(a, C::identity(C::dst(a))), a))
        r.add("unit", arrow_name(inst, f));
    }
  }

  // Zero object.
  const Object zero = C::zero_object();
  for (const auto& x : inst.objects) {
    if (C::size(x) > bounds.exhaustive) continue;
    if (C::enumerate_arrows(zero, x, 4).size() != 1) r.add("zero object initial", C::element_label(x, 0));
    if (C::enumerate_arrows(x, zero, 4).size() != 1) r.add("zero object terminal", C::element_label(x, 0));
  }

  std::vector<Object> competitors;
  for (const auto& w : inst.objects)
    if (C::size(w) <= bounds.competitor) competitors.push_back(w);

  std::vector<std::size_t> small;
  for (std::size_t k = 0; k < n; ++k)
    if (C::size(C::src(arrows[k])) <= bounds.exhaustive && C::size(C::dst(arrows[k])) <= bounds.exhaustive)
      small.push_back(k);

  // Pullbacks.
  std::size_t pairs = 0;
  for (std::size_t a : small)
    for (std::size_t b : small) {
      const Arrow& f = arrows[a];
      const Arrow& g = arrows[b];
      if (!C::same_object(C::dst(f), C::dst(g))) continue;
      if (++pairs > bounds.max_pairs) {
        r.truncated = true;
        break;
      }
      auto pb = C::pullback(f, g);
      const std::string where = arrow_name(inst, a) + "," + arrow_name(inst, b);
      if (!C::equal(C::compose(pb.p1, f), C::compose(pb.p2, g))) {
        r.add("pullback commutes", where);
        continue;
      }
      std::vector<Arrow> proj{pb.p1, pb.p2};
      for (const auto& w : competitors) {
        auto h1s = instance_detail::arrows_between<C>(w, C::src(f));
        auto h2s = instance_detail::arrows_between<C>(w, C::src(g));
        for (const auto& h1 : h1s)
          for (const auto& h2 : h2s) {
            if (!C::equal(C::compose(h1, f), C::compose(h2, g))) continue;
            std::vector<Arrow> legs{h1, h2};
            if (count_mediators<C>(w, pb.apex, proj, legs) != 1) r.add("pullback universal", where);
          }
      }
    }

  // Kernels, monos and regular epis.
  for (std::size_t a : small) {
    const Arrow& f = arrows[a];
    const std::string where = arrow_name(inst, a);
    auto k = C::kernel(f);
    if (!is_zero_arrow<C>(C::compose(k.mono, f))) r.add("kernel zero composite", where);
    auto pb = C::pullback(f, C::zero_arrow(zero, C::dst(f)));
    if (C::size(pb.apex) != C::size(k.object) || !C::factor_through_mono(pb.p1, k.mono) ||
        !C::factor_through_mono(k.mono, pb.p1))
      r.add("kernel is pullback of zero", where);

    auto kp = C::pullback(f, f);
    bool mono_oracle = C::equal(kp.p1, kp.p2);
    if (mono_oracle != static_cast<bool>(C::is_mono(f))) r.add("mono test", where);
    if (!C::is_mono(k.mono)) r.add("kernel mono", where);
    auto q = C::coequalizer(kp.p1, kp.p2);
    bool regular_oracle = false;
    try {
      regular_oracle = is_iso<C>(mediate_coequalizer<C>(q.quotient, f));
    } catch (const Error&) {
      regular_oracle = false;
    }
    if (regular_oracle != static_cast<bool>(C::is_regular_epi(f))) r.add("regular epi test", where);
  }

  // Coequalizers.
  pairs = 0;
  for (std::size_t a : small)
    for (std::size_t b : small) {
      const Arrow& f = arrows[a];
      const Arrow& g = arrows[b];
      if (!C::same_object(C::src(f), C::src(g)) || !C::same_object(C::dst(f), C::dst(g))) continue;
      if (++pairs > bounds.max_pairs) {
        r.truncated = true;
        break;
      }
      const std::string where = arrow_name(inst, a) + "," + arrow_name(inst, b);
      auto q = C::coequalizer(f, g);
      if (!C::equal(C::compose(f, q.quotient), C::compose(g, q.quotient))) {
        r.add("coequalizer coequalizes", where);
        continue;
      }
      if (!C::is_regular_epi(q.quotient)) r.add("coequalizer regular epi", where);
      for (const auto& z : competitors) {
        auto us = instance_detail::arrows_between<C>(q.object, z);
        for (const auto& h : instance_detail::arrows_between<C>(C::dst(f), z)) {
          if (!C::equal(C::compose(f, h), C::compose(g, h))) continue;
          int found = 0;
          for (const auto& u : us) found += C::equal(C::compose(q.quotient, u), h) ? 1 : 0;
          if (found != 1) r.add("coequalizer universal", where);
        }
      }
    }

  // Mono factorization.
  pairs = 0;
  for (std::size_t kx : small) {
    const Arrow& k = arrows[kx];
    if (!C::is_mono(k)) continue;
    for (std::size_t fx : small) {
      const Arrow& f = arrows[fx];
      if (!C::same_object(C::dst(f), C::dst(k))) continue;
      if (++pairs > bounds.max_pairs) {
        r.truncated = true;
        break;
      }
      auto h = C::factor_through_mono(f, k);
      bool exists = false;
      for (const auto& u : instance_detail::arrows_between<C>(C::src(f), C::src(k)))
        if (C::equal(C::compose(u, k), f)) exists = true;
      if (static_cast<bool>(h) != exists || (h && !C::equal(C::compose(*h, k), f)))
        r.add("mono factorization", arrow_name(inst, fx) + " through " + arrow_name(inst, kx));
    }
  }
  return r;
}

}  // namespace fracta
