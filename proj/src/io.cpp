#include "fracta/io.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "fracta/abelian_groupoid.hpp"

namespace fracta {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

template <BaseCategory C>
std::map<std::string, int> label_index(const typename C::Object& x) {
  std::map<std::string, int> out;
  for (std::size_t e = 0; e < C::size(x); ++e) out.emplace(C::element_label(x, static_cast<int>(e)), static_cast<int>(e));
  return out;
}

template <BaseCategory C>
int element(const typename C::Object& x, const Json& label) {
  auto idx = label_index<C>(x);
  auto it = idx.find(str(label, "element"));
  if (it == idx.end()) bad("unknown element \"" + label.get<std::string>() + "\"");
  return it->second;
}

// {label: label} over all of src; the basepoint may be omitted.
Table label_table(const Json& m, const std::vector<std::string>& src, const std::vector<std::string>& dst,
                  const char* what) {
  if (!m.is_object()) bad(std::string(what) + " must be an object");
  std::map<std::string, int> di;
  for (std::size_t i = 0; i < dst.size(); ++i) di.emplace(dst[i], static_cast<int>(i));
  std::map<std::string, int> si;
  for (std::size_t i = 0; i < src.size(); ++i) si.emplace(src[i], static_cast<int>(i));
  Table t(src.size(), -1);
  for (const auto& [k, v] : m.items()) {
    auto s = si.find(k);
    if (s == si.end()) bad(std::string(what) + ": unknown source \"" + k + "\"");
    auto d = di.find(str(v, what));
    if (d == di.end()) bad(std::string(what) + ": unknown target \"" + v.get<std::string>() + "\"");
    t[s->second] = d->second;
  }
  if (!t.empty() && t[0] < 0) t[0] = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0) bad(std::string(what) + ": no value for \"" + src[i] + "\"");
  return t;
}

Json label_map(const Table& t, const std::vector<std::string>& src, const std::vector<std::string>& dst) {
  Json m = Json::object();
  for (std::size_t i = 0; i < t.size(); ++i) m[src[i]] = dst[t[i]];
  return m;
}

template <BaseCategory C>
std::vector<std::string> labels(const typename C::Object& x) {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < C::size(x); ++e) out.push_back(C::element_label(x, static_cast<int>(e)));
  return out;
}

void expect_kind(const Json& j, const char* kind) {
  if (j.is_object() && j.contains("kind") && j.at("kind") != kind)
    bad(std::string("expected a ") + kind + " document, got " + j.at("kind").dump());
}

template <BaseCategory C>
void expect_backend(const Json& j) {
  if (backend_of(j) != backend_v<C>) bad(std::string("expected backend ") + backend_name(backend_v<C>));
}

template <BaseCategory C>
Json table_json(const typename C::Object& src, const typename C::Object& dst, const Table& t) {
  return label_map(t, labels<C>(src), labels<C>(dst));
}

}  // namespace

Backend backend_of(const Json& doc) {
  if (!doc.is_object() || !doc.contains("backend")) return Backend::pointed;
  auto b = str(doc.at("backend"), "backend");
  if (b == "pointed") return Backend::pointed;
  if (b == "abelian") return Backend::abelian;
  bad("unknown backend \"" + b + "\"");
}

const char* backend_name(Backend b) { return b == Backend::abelian ? "abelian" : "pointed"; }

// --- base objects and arrows -------------------------------------------------

Json object_json(const PointedSet& x) { return {{"elements", x.labels()}, {"basepoint", x.label(0)}}; }

Json object_json(const FinAbGroup& x) { return {{"invariant_factors", x.factors()}}; }

Json arrow_json(const PointedMap& f) { return {{"map", label_map(f.table, f.src.labels(), f.dst.labels())}}; }

Json arrow_json(const FinAbHom& f) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < f.matrix().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < f.matrix().cols(); ++c) row.push_back(f.matrix()(r, c));
    rows.push_back(row);
  }
  return {{"matrix", rows}};
}

template <>
PointedSet object_from_json<FinPtdSet>(const Json& j) {
  auto elems = field(j, "elements");
  if (!elems.is_array() || elems.empty()) bad("\"elements\" must be a nonempty array");
  std::vector<std::string> l;
  for (const auto& e : elems) l.push_back(str(e, "element"));
  auto base = str(field(j, "basepoint"), "basepoint");
  auto it = std::find(l.begin(), l.end(), base);
  if (it == l.end()) bad("basepoint \"" + base + "\" is not an element");
  std::rotate(l.begin(), it, it + 1);
  if (std::set<std::string>(l.begin(), l.end()).size() != l.size()) bad("duplicate element labels");
  return PointedSet(l);
}

template <>
FinAbGroup object_from_json<FinAb>(const Json& j) {
  const auto& f = field(j, "invariant_factors");
  if (!f.is_array()) bad("\"invariant_factors\" must be an array");
  std::vector<std::int64_t> v;
  for (const auto& x : f) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 1) bad("invariant factors must be positive integers");
    v.push_back(x.get<std::int64_t>());
  }
  return FinAbGroup(v);
}

template <>
PointedMap arrow_from_json<FinPtdSet>(const Json& j, const PointedSet& src, const PointedSet& dst) {
  auto t = label_table(field(j, "map"), src.labels(), dst.labels(), "map");
  auto f = FinPtdSet::from_table(src, dst, t);
  if (!f) fail(ErrorKind::MalformedHom, "map does not preserve the basepoint");
  return *f;
}

template <>
FinAbHom arrow_from_json<FinAb>(const Json& j, const FinAbGroup& src, const FinAbGroup& dst) {
  const auto& m = field(j, "matrix");
  if (!m.is_array()) bad("\"matrix\" must be an array of rows");
  IntMatrix mat = IntMatrix::Zero(static_cast<Eigen::Index>(dst.rank()), static_cast<Eigen::Index>(src.rank()));
  if (m.size() != dst.rank()) bad("matrix has the wrong number of rows");
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (!m[r].is_array() || m[r].size() != src.rank()) bad("matrix row has the wrong length");
    for (std::size_t c = 0; c < src.rank(); ++c) {
      if (!m[r][c].is_number_integer()) bad("matrix entries must be integers");
      mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][c].get<std::int64_t>();
    }
  }
  return FinAbHom(src, dst, mat);
}

// --- structures --------------------------------------------------------------

Json category_json(const CategoryData& d) {
  Json arrows = Json::array();
  for (const auto& a : d.arrows) arrows.push_back({{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
  return {{"objects", d.objects}, {"arrows", arrows}, {"identities", d.identities}, {"compose", d.compose}};
}

CategoryData category_from_json(const Json& j) {
  CategoryData d;
  try {
    d.objects = field(j, "objects").get<std::vector<std::string>>();
    for (const auto& a : field(j, "arrows"))
      d.arrows.push_back({str(field(a, "id"), "id"), str(field(a, "src"), "src"), str(field(a, "dst"), "dst")});
    d.identities = field(j, "identities").get<std::map<std::string, std::string>>();
    d.compose = field(j, "compose").get<std::vector<std::array<std::string, 3>>>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("category: ") + e.what());
  }
  return d;
}

namespace {

PointedGroupoidData pointed_data_from_json(const Json& j) {
  PointedGroupoidData d;
  try {
    d.objects = field(j, "objects").get<std::vector<std::string>>();
    d.basepoint = str(field(j, "basepoint"), "basepoint");
    for (const auto& a : field(j, "arrows"))
      d.arrows.push_back({str(field(a, "id"), "id"), str(field(a, "src"), "src"), str(field(a, "dst"), "dst")});
    d.identities = field(j, "identities").get<std::map<std::string, std::string>>();
    d.compose = field(j, "compose").get<std::vector<std::array<std::string, 3>>>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("groupoid: ") + e.what());
  }
  return d;
}

}  // namespace

template <>
Json groupoid_json<FinPtdSet>(const InternalGroupoid<FinPtdSet>& g) {
  auto d = to_data(g);
  Json arrows = Json::array();
  for (const auto& a : d.arrows) arrows.push_back({{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
  Json out{{"kind", "groupoid"},        {"backend", "pointed"},        {"objects", d.objects},
           {"basepoint", d.basepoint},  {"arrows", arrows},            {"identities", d.identities},
           {"compose", d.compose}};
  if (!g.name.empty()) out["name"] = g.name;
  return out;
}

template <>
Json groupoid_json<FinAb>(const InternalGroupoid<FinAb>& g) {
  Json out{{"kind", "groupoid"},        {"backend", "abelian"},    {"A0", object_json(g.A0)},
           {"A1", object_json(g.A1)},   {"d", arrow_json(g.d)},    {"c", arrow_json(g.c)},
           {"e", arrow_json(g.e)}};
  if (!g.name.empty()) out["name"] = g.name;
  return out;
}

template <>
Json functor_json<FinPtdSet>(const InternalFunctor<FinPtdSet>& f) {
  Json out{{"kind", "functor"},
           {"backend", "pointed"},
           {"src", groupoid_json(*f.src)},
           {"dst", groupoid_json(*f.dst)},
           {"objects", table_json<FinPtdSet>(f.src->A0, f.dst->A0, f.t0)},
           {"arrows", table_json<FinPtdSet>(f.src->A1, f.dst->A1, f.t1)}};
  if (!f.name.empty()) out["name"] = f.name;
  return out;
}

template <>
Json functor_json<FinAb>(const InternalFunctor<FinAb>& f) {
  Json out{{"kind", "functor"},
           {"backend", "abelian"},
           {"src", groupoid_json(*f.src)},
           {"dst", groupoid_json(*f.dst)},
           {"F0", arrow_json(f.F0)["matrix"]},
           {"F1", arrow_json(f.F1)["matrix"]}};
  if (!f.name.empty()) out["name"] = f.name;
  return out;
}

template <BaseCategory C>
Json span_json(const FractionSpan<C>& s) {
  return {{"kind", "span"}, {"backend", backend_name(backend_v<C>)}, {"left", functor_json(s.W)},
          {"right", functor_json(s.F)}};
}

template <BaseCategory C>
Json quadruple_json(const TwoCellQuadruple<C>& q) {
  return {{"kind", "quadruple"},
          {"backend", backend_name(backend_v<C>)},
          {"from", span_json(q.from)},
          {"to", span_json(q.to)},
          {"U1", functor_json(q.U1)},
          {"U2", functor_json(q.U2)},
          {"alpha1", table_json<C>(q.U1.src->A0, q.from.W.dst->A1, q.alpha1.comp)},
          {"alpha2", table_json<C>(q.U1.src->A0, q.from.F.dst->A1, q.alpha2.comp)}};
}

template <BaseCategory C>
Json sequence_json(const SixTermSequence<C>& s) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < 6; ++i) {
    Json n = object_json(s.nodes[i]);
    n["id"] = kSnailNodes[i];
    nodes.push_back(n);
  }
  Json arrows = Json::array();
  for (std::size_t i = 0; i < 5; ++i) {
    Json a = arrow_json(s.arrows[i]);
    a["src"] = kSnailNodes[i];
    a["dst"] = kSnailNodes[i + 1];
    a["provenance"] = s.provenance[i];
    arrows.push_back(a);
  }
  return {{"kind", "sequence"}, {"backend", backend_name(backend_v<C>)}, {"nodes", nodes}, {"arrows", arrows}};
}

Json fractor_json(const FractorData<FinPtdSet>& d) {
  auto arrow = [](const PointedMap& f, const char* src, const char* dst) {
    Json a = arrow_json(f);
    a["src"] = src;
    a["dst"] = dst;
    return a;
  };
  return {{"kind", "fractor"},
          {"backend", "pointed"},
          {"A", groupoid_json(*d.A)},
          {"B", groupoid_json(*d.B)},
          {"objects", {{"E", object_json(d.E)}, {"R", object_json(d.R)}, {"kernel_pair", object_json(d.kernel_pair)}}},
          {"arrows",
           {{"sigma", arrow(d.sigma, "E", "A0")},
            {"rho", arrow(d.rho, "E", "B0")},
            {"d", arrow(d.d, "R", "E")},
            {"c", arrow(d.c, "R", "E")},
            {"sigma_bar", arrow(d.sigma_bar, "R", "A1")},
            {"s1", arrow(d.s1, "kernel_pair", "E")},
            {"s2", arrow(d.s2, "kernel_pair", "E")},
            {"rho_bar", arrow(d.rho_bar, "kernel_pair", "B1")}}}};
}

template Json span_json<FinPtdSet>(const FractionSpan<FinPtdSet>&);
template Json span_json<FinAb>(const FractionSpan<FinAb>&);
template Json quadruple_json<FinPtdSet>(const TwoCellQuadruple<FinPtdSet>&);
template Json quadruple_json<FinAb>(const TwoCellQuadruple<FinAb>&);
template Json sequence_json<FinPtdSet>(const SixTermSequence<FinPtdSet>&);
template Json sequence_json<FinAb>(const SixTermSequence<FinAb>&);

// --- workspace ---------------------------------------------------------------

Workspace::Workspace(fs::path root) : root_(std::move(root)) {}

fs::path Workspace::default_root() {
  if (const char* env = std::getenv("FRACTA_CORPUS"); env && *env) return env;
  return "corpus";
}

fs::path Workspace::resolve(const std::string& ref, const fs::path& base) const {
  fs::path p(ref);
  if (p.is_absolute()) return p;
  if (!base.empty() && fs::exists(base / p)) return base / p;
  if (fs::exists(p)) return p;
  if (!root_.empty() && fs::exists(root_ / p)) return root_ / p;
  bad("unresolved reference \"" + ref + "\"");
}

const Json& Workspace::document(const fs::path& file) {
  std::error_code ec;
  auto key = fs::weakly_canonical(file, ec).string();
  if (ec) key = file.string();
  if (auto it = documents_.find(key); it != documents_.end()) return it->second;
  std::ifstream in(file);
  if (!in) bad("cannot read " + file.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(file.string() + ": " + e.what());
  }
  return documents_.emplace(key, std::move(j)).first->second;
}

std::pair<const Json*, fs::path> Workspace::deref(const Json& j, const fs::path& base) {
  if (j.is_string()) {
    auto file = resolve(j.get<std::string>(), base);
    return {&document(file), file.parent_path()};
  }
  if (!j.is_object()) bad("expected a reference or an inline document");
  return {&j, base};
}

template <BaseCategory C>
GroupoidLoad<C> Workspace::load_groupoid(const Json& ref, const fs::path& base) {
  auto [j, dir] = deref(ref, base);
  expect_kind(*j, "groupoid");
  expect_backend<C>(*j);
  std::string name = j->contains("name") ? str(j->at("name"), "name") : (ref.is_string() ? ref.get<std::string>() : "");
  GroupoidLoad<C> out;
  if constexpr (std::is_same_v<C, FinPtdSet>) {
    auto load = load_pointed_groupoid(pointed_data_from_json(*j), name);
    out.groupoid = load.groupoid;
    out.report = load.report;
  } else {
    auto A0 = object_from_json<FinAb>(field(*j, "A0"));
    auto A1 = object_from_json<FinAb>(field(*j, "A1"));
    auto load = load_abelian_groupoid(A0, A1, arrow_from_json<FinAb>(field(*j, "d"), A1, A0),
                                      arrow_from_json<FinAb>(field(*j, "c"), A1, A0),
                                      arrow_from_json<FinAb>(field(*j, "e"), A0, A1), name);
    out.groupoid = load.groupoid;
    out.report = load.report;
  }
  return out;
}

template <BaseCategory C>
Groupoid<C> Workspace::groupoid(const Json& ref, const fs::path& base) {
  std::string key;
  if (ref.is_string()) key = fs::weakly_canonical(resolve(ref.get<std::string>(), base)).string();
  auto& cache = [this]() -> auto& {
    if constexpr (std::is_same_v<C, FinPtdSet>) return pointed_cache_;
    else return abelian_cache_;
  }();
  if (!key.empty())
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto load = load_groupoid<C>(ref, base);
  if (!load.groupoid) {
    std::string msg = "groupoid axioms fail:";
    for (const auto& f : load.report.failures) msg += " [" + f.name + "]";
    fail(ErrorKind::MalformedInstance, msg);
  }
  if (!key.empty()) cache.emplace(key, load.groupoid);
  return load.groupoid;
}

template <BaseCategory C>
InternalFunctor<C> Workspace::functor(const Json& ref, const fs::path& base) {
  auto [j, dir] = deref(ref, base);
  expect_kind(*j, "functor");
  expect_backend<C>(*j);
  InternalFunctor<C> f;
  f.src = groupoid<C>(field(*j, "src"), dir);
  f.dst = groupoid<C>(field(*j, "dst"), dir);
  if (j->contains("name")) f.name = str(j->at("name"), "name");
  else if (ref.is_string()) f.name = fs::path(ref.get<std::string>()).stem().string();
  if constexpr (std::is_same_v<C, FinPtdSet>) {
    f.t0 = label_table(field(*j, "objects"), f.src->A0.labels(), f.dst->A0.labels(), "objects");
    f.t1 = label_table(field(*j, "arrows"), f.src->A1.labels(), f.dst->A1.labels(), "arrows");
    auto F0 = C::from_table(f.src->A0, f.dst->A0, f.t0);
    auto F1 = C::from_table(f.src->A1, f.dst->A1, f.t1);
    if (!F0 || !F1) fail(ErrorKind::MalformedHom, "functor tables do not preserve basepoints");
    f.F0 = *F0;
    f.F1 = *F1;
  } else {
    f.F0 = arrow_from_json<FinAb>(Json{{"matrix", field(*j, "F0")}}, f.src->A0, f.dst->A0);
    f.F1 = arrow_from_json<FinAb>(Json{{"matrix", field(*j, "F1")}}, f.src->A1, f.dst->A1);
    f.t0 = C::table(f.F0);
    f.t1 = C::table(f.F1);
  }
  return f;
}

template <BaseCategory C>
FractionSpan<C> Workspace::span(const Json& ref, const fs::path& base) {
  auto [j, dir] = deref(ref, base);
  expect_kind(*j, "span");
  expect_backend<C>(*j);
  return {functor<C>(field(*j, "left"), dir), functor<C>(field(*j, "right"), dir)};
}

template <BaseCategory C>
TwoCellQuadruple<C> Workspace::quadruple(const Json& ref, const fs::path& base) {
  auto [j, dir] = deref(ref, base);
  expect_kind(*j, "quadruple");
  expect_backend<C>(*j);
  auto from = span<C>(field(*j, "from"), dir);
  auto to = span<C>(field(*j, "to"), dir);
  auto U1 = functor<C>(field(*j, "U1"), dir);
  auto U2 = functor<C>(field(*j, "U2"), dir);
  auto comps = [&](const char* key, const Groupoid<C>& target) {
    auto objs = labels<C>(U1.src->A0);
    return label_table(field(*j, key), objs, labels<C>(target->A1), key);
  };
  return Fract<C>::quadruple(from, to, U1, U2, comps("alpha1", from.W.dst), comps("alpha2", from.F.dst));
}

template <BaseCategory C>
SixTermSequence<C> Workspace::sequence(const Json& ref, const fs::path& base) {
  auto [j, dir] = deref(ref, base);
  expect_kind(*j, "sequence");
  expect_backend<C>(*j);
  const auto& nodes = field(*j, "nodes");
  const auto& arrows = field(*j, "arrows");
  if (!nodes.is_array() || nodes.size() != 6) bad("a sequence has six nodes");
  if (!arrows.is_array() || arrows.size() != 5) bad("a sequence has five arrows");
  SixTermSequence<C> s;
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < 6; ++i) {
    s.nodes[i] = object_from_json<C>(nodes[i]);
    std::string id = nodes[i].contains("id") ? str(nodes[i].at("id"), "id") : std::to_string(i);
    if (!ids.emplace(id, static_cast<int>(i)).second) bad("duplicate node id \"" + id + "\"");
  }
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& a = arrows[i];
    auto node = [&](const char* key, std::size_t fallback) -> int {
      if (!a.contains(key)) return static_cast<int>(fallback);
      auto it = ids.find(str(a.at(key), key));
      if (it == ids.end()) bad("arrow refers to unknown node " + a.at(key).dump());
      return it->second;
    };
    int src = node("src", i), dst = node("dst", i + 1);
    if (src != static_cast<int>(i) || dst != static_cast<int>(i + 1))
      bad("arrow " + std::to_string(i) + " must run from node " + std::to_string(i) + " to node " +
          std::to_string(i + 1));
    s.arrows[i] = arrow_from_json<C>(a, s.nodes[i], s.nodes[i + 1]);
    s.provenance[i] = a.contains("provenance") ? str(a.at("provenance"), "provenance") : "given";
  }
  return s;
}

FractorData<FinPtdSet> Workspace::fractor(const Json& ref, const fs::path& base) {
  auto [j, dir] = deref(ref, base);
  expect_kind(*j, "fractor");
  if (backend_of(*j) == Backend::abelian)
    fail(ErrorKind::UnsupportedBackend, "fractor validation is implemented for pointed sets only");
  FractorData<FinPtdSet> d;
  d.A = groupoid<FinPtdSet>(field(*j, "A"), dir);
  d.B = groupoid<FinPtdSet>(field(*j, "B"), dir);
  const auto& objs = field(*j, "objects");
  d.E = object_from_json<FinPtdSet>(field(objs, "E"));
  d.R = object_from_json<FinPtdSet>(field(objs, "R"));
  d.kernel_pair = object_from_json<FinPtdSet>(field(objs, "kernel_pair"));
  std::map<std::string, PointedSet> named{{"E", d.E},        {"R", d.R},        {"kernel_pair", d.kernel_pair},
                                          {"A0", d.A->A0},   {"A1", d.A->A1},   {"B0", d.B->A0},
                                          {"B1", d.B->A1}};
  const auto& arrows = field(*j, "arrows");
  auto arrow = [&](const char* key) {
    const auto& a = field(arrows, key);
    auto end = [&](const char* k) {
      auto it = named.find(str(field(a, k), k));
      if (it == named.end()) bad(std::string(key) + ": unknown object " + a.at(k).dump());
      return it->second;
    };
    return arrow_from_json<FinPtdSet>(a, end("src"), end("dst"));
  };
  d.sigma = arrow("sigma");
  d.rho = arrow("rho");
  d.d = arrow("d");
  d.c = arrow("c");
  d.sigma_bar = arrow("sigma_bar");
  d.s1 = arrow("s1");
  d.s2 = arrow("s2");
  d.rho_bar = arrow("rho_bar");
  return d;
}

std::map<std::string, fs::path> Workspace::load_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::map<std::string, fs::path> ids;
  for (const auto& file : files) {
    const auto& j = document(file);
    auto rel = fs::relative(file, dir).generic_string();
    std::string id = j.contains("id") ? str(j.at("id"), "id") : rel;
    if (!ids.emplace(id, file).second) bad("duplicate identifier \"" + id + "\" in " + rel);
    Json ref = file.string();
    auto kind = j.contains("kind") ? str(j.at("kind"), "kind") : std::string("groupoid");
    bool ab = backend_of(j) == Backend::abelian;
    auto base = file.parent_path();
    if (kind == "groupoid") {
      if (ab) load_groupoid<FinAb>(ref, base);
      else load_groupoid<FinPtdSet>(ref, base);
    } else if (kind == "functor") {
      if (ab) functor<FinAb>(ref, base);
      else functor<FinPtdSet>(ref, base);
    } else if (kind == "span") {
      if (ab) span<FinAb>(ref, base);
      else span<FinPtdSet>(ref, base);
    } else if (kind == "quadruple") {
      if (ab) quadruple<FinAb>(ref, base);
      else quadruple<FinPtdSet>(ref, base);
    } else if (kind == "sequence") {
      if (ab) sequence<FinAb>(ref, base);
      else sequence<FinPtdSet>(ref, base);
    } else if (kind == "fractor") {
      fractor(ref, base);
    } else if (kind == "category") {
      FiniteCategory::from_data(category_from_json(field(j, "category")));
    } else {
      bad("unknown kind \"" + kind + "\" in " + rel);
    }
  }
  return ids;
}

#define FRACTA_WORKSPACE(C)                                                                           \
  template GroupoidLoad<C> Workspace::load_groupoid<C>(const Json&, const fs::path&);                 \
  template Groupoid<C> Workspace::groupoid<C>(const Json&, const fs::path&);                          \
  template InternalFunctor<C> Workspace::functor<C>(const Json&, const fs::path&);                    \
  template FractionSpan<C> Workspace::span<C>(const Json&, const fs::path&);                          \
  template TwoCellQuadruple<C> Workspace::quadruple<C>(const Json&, const fs::path&);                 \
  template SixTermSequence<C> Workspace::sequence<C>(const Json&, const fs::path&);
FRACTA_WORKSPACE(FinPtdSet)
FRACTA_WORKSPACE(FinAb)
#undef FRACTA_WORKSPACE

}  // namespace fracta
