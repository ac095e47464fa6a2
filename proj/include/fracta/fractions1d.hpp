#pragma once

// Right calculus of fractions on a finite category: the CF axioms, spans
// (s, f) with s in Sigma, their equivalence and composition, and pullbacks in
// the localization.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracta/groupoid.hpp"

namespace fracta {

/// File-level presentation: named objects and arrows, identities, and the
/// composition table as triples f.g = h (diagrammatic).
struct CategoryData {
  struct Arrow {
    std::string id;
    std::string src;
    std::string dst;
    friend bool operator==(const Arrow&, const Arrow&) = default;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::map<std::string, std::string> identities;
  std::vector<std::array<std::string, 3>> compose;

  friend bool operator==(const CategoryData&, const CategoryData&) = default;
};

class FiniteCategory {
 public:
  struct Arrow {
    std::string id;
    int src = 0;
    int dst = 0;
  };

  /// Throws MalformedInput on dangling references or a missing composite.
  static FiniteCategory from_data(const CategoryData& data);
  /// The underlying category of a finite groupoid; arrows are labelled by index.
  static FiniteCategory of_groupoid(const GroupoidView& g, const std::string& prefix = "a");
  /// The poset on `objects` with x <= y iff leq[x][y]; must be reflexive and transitive.
  static FiniteCategory poset(const std::vector<std::string>& objects, const std::vector<std::vector<bool>>& leq);

  CategoryData to_data() const;
  ValidationReport validate() const;

  int object_count() const { return static_cast<int>(objects_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::string& object(int x) const { return objects_[x]; }
  const Arrow& arrow(int f) const { return arrows_[f]; }
  int src(int f) const { return arrows_[f].src; }
  int dst(int f) const { return arrows_[f].dst; }
  int identity(int x) const { return identity_[x]; }
  /// f.g, or -1 when dst(f) != src(g).
  int compose(int f, int g) const { return comp_[f][g]; }
  const std::vector<int>& hom(int x, int y) const { return homs_[static_cast<std::size_t>(x) * objects_.size() + y]; }
  int object_index(const std::string& name) const;
  int arrow_index(const std::string& id) const;

 private:
  void index();

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> identity_;
  std::vector<std::vector<int>> comp_;
  std::vector<std::vector<int>> homs_;
  std::map<std::string, int> object_ids_;
  std::map<std::string, int> arrow_ids_;
};

struct SigmaClass {
  std::vector<bool> member;

  static SigmaClass of(const FiniteCategory& c, const std::vector<std::string>& ids);
  static SigmaClass all(const FiniteCategory& c);
  static SigmaClass identities(const FiniteCategory& c);
  static SigmaClass isomorphisms(const FiniteCategory& c);
  bool contains(int f) const { return member[f]; }
  std::vector<std::string> ids(const FiniteCategory& c) const;
};

struct AxiomVerdict {
  bool holds = true;
  std::vector<std::string> witnesses;  // a sample, capped
  std::string counterexample;
  std::size_t checked = 0;
};

struct CFReport {
  std::array<AxiomVerdict, 4> cf;
  bool all() const { return cf[0].holds && cf[1].holds && cf[2].holds && cf[3].holds; }
};

CFReport check_right_calculus(const FiniteCategory& c, const SigmaClass& sigma);

/// A: dst(s) <- I -> dst(f): B.
struct FractionSpan1D {
  int s = 0;
  int f = 0;
  friend bool operator==(const FractionSpan1D&, const FractionSpan1D&) = default;
};

struct SpanEquivalenceWitness {
  int x = -1;   // X -> I
  int x2 = -1;  // X -> I'
};

/// CF3 filler of a cospan (f, s): s' in Sigma, f' with s'.f = f'.s.
struct CF3Filler {
  int s2 = -1;
  int f2 = -1;
};

/// A square of spans: corner P with legs u: P -> A, v: P -> B over a: A -> Z, b: B -> Z.
struct SpanSquare {
  FractionSpan1D a;
  FractionSpan1D b;
  int corner = 0;
  FractionSpan1D u;
  FractionSpan1D v;
};

struct SpanPullbackReport {
  bool commutes = false;
  std::size_t cones = 0;
  std::vector<Failure> failures;
  bool passed() const { return commutes && failures.empty(); }
};

/// Span calculus over a category with a class Sigma.
class Localization {
 public:
  Localization(FiniteCategory c, SigmaClass sigma);

  const FiniteCategory& category() const { return c_; }
  const SigmaClass& sigma() const { return sigma_; }

  /// Throws NotAFraction when s is not in Sigma or the domains differ.
  FractionSpan1D span(int s, int f) const;
  int span_src(const FractionSpan1D& a) const { return c_.dst(a.s); }
  int span_dst(const FractionSpan1D& a) const { return c_.dst(a.f); }
  FractionSpan1D identity_span(int x) const;
  /// P_Sigma(f) = (id, f).
  FractionSpan1D p_sigma(int f) const;
  /// (s, id), inverse of P_Sigma(s) for s in Sigma.
  FractionSpan1D sigma_inverse(int s) const;

  /// Throws BoundaryMismatch when the outer boundaries differ.
  bool span_equivalent(const FractionSpan1D& a, const FractionSpan1D& b, SpanEquivalenceWitness* w = nullptr) const;
  std::vector<CF3Filler> cf3_fillers(int f, int s) const;
  /// Least filler by object name of the apex, then arrow identifiers.
  std::optional<CF3Filler> least_cf3_filler(int f, int s) const;
  /// b after a; throws NoCF3Filler or BoundaryMismatch.
  FractionSpan1D compose_spans(const FractionSpan1D& a, const FractionSpan1D& b) const;
  FractionSpan1D compose_with(const FractionSpan1D& a, const FractionSpan1D& b, const CF3Filler& filler) const;
  /// Every span x -> y.
  std::vector<FractionSpan1D> spans(int x, int y) const;

  /// A pullback (p1, p2) of f, g in the base, found by search.
  std::optional<std::pair<int, int>> base_pullback(int f, int g) const;
  /// Throws NoPullbackInBase when the base pullback of the right legs is missing.
  SpanSquare fraction_pullback(const FractionSpan1D& a, const FractionSpan1D& b) const;
  /// Commutation plus existence and uniqueness (up to equivalence) of
  /// mediators for every cone of spans.
  SpanPullbackReport check_span_pullback(const SpanSquare& sq) const;

  std::string describe(const FractionSpan1D& a) const;

 private:
  FiniteCategory c_;
  SigmaClass sigma_;
};

}  // namespace fracta
