#pragma once

// FinPtdSet: finite pointed sets and basepoint-preserving maps.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracta/base_category.hpp"

namespace fracta {

/// A finite pointed set. Element 0 is the basepoint; labels are case-sensitive.
class PointedSet {
 public:
  PointedSet();
  explicit PointedSet(std::vector<std::string> labels);

  std::size_t size() const { return labels_->size(); }
  const std::string& label(int x) const { return (*labels_)[x]; }
  const std::vector<std::string>& labels() const { return *labels_; }
  int index_of(std::string_view label) const;

  friend bool operator==(const PointedSet& a, const PointedSet& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// A map of pointed sets given by its value table. Construction does not
/// validate; `FinPtdSet::from_table` and `validate_instance` do.
struct PointedMap {
  PointedSet src;
  PointedSet dst;
  Table table;
};

struct FinPtdSet {
  using Object = PointedSet;
  using Arrow = PointedMap;
  static constexpr const char* name = "pointed";

  static std::size_t size(const Object& x) { return x.size(); }
  static const Object& src(const Arrow& f) { return f.src; }
  static const Object& dst(const Arrow& f) { return f.dst; }
  static int apply(const Arrow& f, int x) { return f.table[x]; }
  static const Table& table(const Arrow& f) { return f.table; }

  static Arrow identity(const Object& x);
  static Arrow compose(const Arrow& f, const Arrow& g);
  static bool equal(const Arrow& f, const Arrow& g);
  static bool same_object(const Object& x, const Object& y) { return x == y; }

  static Object zero_object();
  static Arrow zero_arrow(const Object& x, const Object& y);

  static PullbackCone<Object, Arrow> product(const Object& x, const Object& y);
  static PullbackCone<Object, Arrow> pullback(const Arrow& f, const Arrow& g);
  static KernelResult<Object, Arrow> kernel(const Arrow& f);
  static CoequalizerResult<Object, Arrow> coequalizer(const Arrow& f, const Arrow& g);

  static bool is_regular_epi(const Arrow& f);
  static bool is_mono(const Arrow& f);
  static std::optional<Arrow> factor_through_mono(const Arrow& f, const Arrow& k);

  static std::optional<Arrow> from_table(const Object& x, const Object& y, Table table);
  static std::optional<TupleObject<Object, Arrow>> tuple_subobject(
      const std::vector<Object>& factors, std::vector<std::vector<int>> tuples);
  static std::vector<Arrow> enumerate_arrows(const Object& x, const Object& y, std::size_t limit);
  static std::string element_label(const Object& x, int e) { return x.label(e); }

  /// Element-level basepoint and range check, used by instance validation.
  static bool well_formed(const Arrow& f);
};

static_assert(BaseCategory<FinPtdSet>);

}  // namespace fracta
