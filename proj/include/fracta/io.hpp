#pragma once

// JSON documents: base objects and arrows, groupoids, functors, spans,
// quadruples, six-term sequences, fractors and finite categories, plus a
// workspace that resolves file references.
//
// Every document carries "kind" and, except categories, "backend"
// ("pointed" or "abelian", default "pointed"). References to other documents
// are strings naming a file relative to the referencing file, falling back to
// the workspace root; an object in the same position is read inline.

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "fracta/bifractions.hpp"
#include "fracta/finite_abelian.hpp"
#include "fracta/fractions1d.hpp"
#include "fracta/pointed_groupoid.hpp"
#include "fracta/snail.hpp"

namespace fracta {

using Json = nlohmann::json;

enum class Backend { pointed, abelian };

/// Throws MalformedInput on an unknown backend name.
Backend backend_of(const Json& doc);
const char* backend_name(Backend b);

template <BaseCategory C>
constexpr Backend backend_v = std::is_same_v<C, FinAb> ? Backend::abelian : Backend::pointed;

// --- base objects and arrows -------------------------------------------------

Json object_json(const PointedSet& x);
Json object_json(const FinAbGroup& x);
/// {"map": {label: label}} or {"matrix": [[...]]}; src and dst are left to the caller.
Json arrow_json(const PointedMap& f);
Json arrow_json(const FinAbHom& f);

template <BaseCategory C>
typename C::Object object_from_json(const Json& j);
template <BaseCategory C>
typename C::Arrow arrow_from_json(const Json& j, const typename C::Object& src, const typename C::Object& dst);

// --- structures --------------------------------------------------------------

Json category_json(const CategoryData& d);
CategoryData category_from_json(const Json& j);

/// Inline documents; referenced groupoids are embedded.
template <BaseCategory C>
Json groupoid_json(const InternalGroupoid<C>& g);
template <BaseCategory C>
Json functor_json(const InternalFunctor<C>& f);
template <BaseCategory C>
Json span_json(const FractionSpan<C>& s);
template <BaseCategory C>
Json quadruple_json(const TwoCellQuadruple<C>& q);
template <BaseCategory C>
Json sequence_json(const SixTermSequence<C>& s);
Json fractor_json(const FractorData<FinPtdSet>& d);

/// A groupoid document read without enforcing the axioms.
template <BaseCategory C>
struct GroupoidLoad {
  Groupoid<C> groupoid;  // null when the axioms fail
  ValidationReport report;
};

class Workspace {
 public:
  /// `root` is the fallback directory for references, normally FRACTA_CORPUS.
  explicit Workspace(std::filesystem::path root = {});

  /// FRACTA_CORPUS, else ./corpus.
  static std::filesystem::path default_root();

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path resolve(const std::string& ref, const std::filesystem::path& base) const;
  /// Parses and caches a file; throws MalformedInput.
  const Json& document(const std::filesystem::path& file);

  /// `j` is a reference string or an inline document; `base` is the directory
  /// references resolve against.
  template <BaseCategory C>
  GroupoidLoad<C> load_groupoid(const Json& j, const std::filesystem::path& base);
  template <BaseCategory C>
  Groupoid<C> groupoid(const Json& j, const std::filesystem::path& base);
  /// Builds the tables without checking functoriality; see validate_functor.
  template <BaseCategory C>
  InternalFunctor<C> functor(const Json& j, const std::filesystem::path& base);
  template <BaseCategory C>
  FractionSpan<C> span(const Json& j, const std::filesystem::path& base);
  template <BaseCategory C>
  TwoCellQuadruple<C> quadruple(const Json& j, const std::filesystem::path& base);
  template <BaseCategory C>
  SixTermSequence<C> sequence(const Json& j, const std::filesystem::path& base);
  FractorData<FinPtdSet> fractor(const Json& j, const std::filesystem::path& base);

  /// Loads every *.json under `dir`, resolving all references. Throws
  /// MalformedInput on a duplicate "id" or an unresolved reference.
  std::map<std::string, std::filesystem::path> load_directory(const std::filesystem::path& dir);

 private:
  std::pair<const Json*, std::filesystem::path> deref(const Json& j, const std::filesystem::path& base);

  std::filesystem::path root_;
  std::map<std::string, Json> documents_;
  std::map<std::string, Groupoid<FinPtdSet>> pointed_cache_;
  std::map<std::string, Groupoid<FinAb>> abelian_cache_;
};

}  // namespace fracta
