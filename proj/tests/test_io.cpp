#include <doctest.h>

#include <fstream>

#include "corpus.hpp"
#include "fracta/abelian_groupoid.hpp"

using namespace fracta;

namespace {

namespace fs = std::filesystem;

template <BaseCategory C>
std::vector<std::string> labels(const typename C::Object& x) {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < C::size(x); ++e) out.push_back(C::element_label(x, static_cast<int>(e)));
  return out;
}

template <BaseCategory C>
bool same(const Groupoid<C>& a, const Groupoid<C>& b) {
  return Grpd<C>::same_groupoid(a, b) && labels<C>(a->A0) == labels<C>(b->A0) && labels<C>(a->A1) == labels<C>(b->A1);
}

template <BaseCategory C>
bool same(const InternalFunctor<C>& f, const InternalFunctor<C>& g) {
  return same<C>(f.src, g.src) && same<C>(f.dst, g.dst) && f.t0 == g.t0 && f.t1 == g.t1;
}

template <BaseCategory C>
bool same(const FractionSpan<C>& a, const FractionSpan<C>& b) {
  return same(a.W, b.W) && same(a.F, b.F);
}

template <BaseCategory C>
bool same(const TwoCellQuadruple<C>& p, const TwoCellQuadruple<C>& q) {
  return same(p.from, q.from) && same(p.to, q.to) && same(p.U1, q.U1) && same(p.U2, q.U2) &&
         p.alpha1.comp == q.alpha1.comp && p.alpha2.comp == q.alpha2.comp;
}

template <BaseCategory C>
bool same(const SixTermSequence<C>& a, const SixTermSequence<C>& b) {
  for (int i = 0; i < 6; ++i)
    if (labels<C>(a.nodes[i]) != labels<C>(b.nodes[i])) return false;
  for (int i = 0; i < 5; ++i)
    if (C::table(a.arrows[i]) != C::table(b.arrows[i]) || a.provenance[i] != b.provenance[i]) return false;
  return true;
}

bool same(const FractorData<FinPtdSet>& a, const FractorData<FinPtdSet>& b) {
  using S = FinPtdSet;
  auto eq = [](const PointedMap& f, const PointedMap& g) {
    return f.table == g.table && f.src.labels() == g.src.labels() && f.dst.labels() == g.dst.labels();
  };
  return same<S>(a.A, b.A) && same<S>(a.B, b.B) && a.E.labels() == b.E.labels() && a.R.labels() == b.R.labels() &&
         a.kernel_pair.labels() == b.kernel_pair.labels() && eq(a.sigma, b.sigma) && eq(a.rho, b.rho) &&
         eq(a.d, b.d) && eq(a.c, b.c) && eq(a.sigma_bar, b.sigma_bar) && eq(a.s1, b.s1) && eq(a.s2, b.s2) &&
         eq(a.rho_bar, b.rho_bar);
}

// Serialize, print, parse and load again.
Json reparse(const Json& j) { return Json::parse(j.dump(2)); }

template <BaseCategory C>
void round_trip(Workspace& ws, const Json& ref, const std::string& kind) {
  if (kind == "groupoid") {
    auto a = ws.groupoid<C>(ref, {});
    auto text = groupoid_json(*a);
    auto b = ws.groupoid<C>(reparse(text), {});
    CHECK(same<C>(a, b));
    CHECK(groupoid_json(*b).dump() == text.dump());
  } else if (kind == "functor") {
    auto a = ws.functor<C>(ref, {});
    auto text = functor_json(a);
    auto b = ws.functor<C>(reparse(text), {});
    CHECK(same(a, b));
    CHECK(functor_json(b).dump() == text.dump());
  } else if (kind == "span") {
    auto a = ws.span<C>(ref, {});
    auto b = ws.span<C>(reparse(span_json(a)), {});
    CHECK(same(a, b));
  } else if (kind == "quadruple") {
    auto a = ws.quadruple<C>(ref, {});
    auto b = ws.quadruple<C>(reparse(quadruple_json(a)), {});
    CHECK(same(a, b));
  } else if (kind == "sequence") {
    auto a = ws.sequence<C>(ref, {});
    auto text = sequence_json(a);
    auto b = ws.sequence<C>(reparse(text), {});
    CHECK(same(a, b));
    CHECK(sequence_json(b).dump() == text.dump());
  } else {
    FAIL("unexpected kind " << kind);
  }
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(path / file) << text;
    return path / file;
  }
};

}  // namespace

TEST_CASE("every corpus file round-trips") {
  Workspace ws(corpus::root());
  std::size_t n = 0;
  for (const auto& file : corpus::files()) {
    const auto& doc = ws.document(file);
    auto kind = corpus::kind_of(doc);
    INFO(file.filename().string());
    Json ref = file.string();
    if (file.filename() == "broken_assoc.json") {
      auto a = ws.load_groupoid<FinPtdSet>(ref, {});
      CHECK_FALSE(a.groupoid);
      CHECK_FALSE(a.report.ok());
      ++n;
      continue;
    }
    if (kind == "fractor") {
      auto a = ws.fractor(ref, {});
      CHECK(same(a, ws.fractor(reparse(fractor_json(a)), {})));
    } else if (kind == "category") {
      auto data = category_from_json(doc.at("category"));
      auto c = FiniteCategory::from_data(data);
      auto again = category_from_json(reparse(category_json(c.to_data())));
      CHECK(again == c.to_data());
      CHECK(FiniteCategory::from_data(again).to_data() == c.to_data());
    } else if (backend_of(doc) == Backend::abelian) {
      round_trip<FinAb>(ws, ref, kind);
    } else {
      round_trip<FinPtdSet>(ws, ref, kind);
    }
    ++n;
  }
  CHECK(n >= 60);
}

TEST_CASE("shipped groupoid files are in canonical form") {
  Workspace ws(corpus::root());
  for (const auto& file : corpus::files()) {
    const auto& doc = ws.document(file);
    if (corpus::kind_of(doc) != "groupoid" || file.filename() == "broken_assoc.json") continue;
    INFO(file.filename().string());
    Json ref = file.string();
    if (backend_of(doc) == Backend::abelian) CHECK(groupoid_json(*ws.groupoid<FinAb>(ref, {})) == doc);
    else CHECK(groupoid_json(*ws.groupoid<FinPtdSet>(ref, {})) == doc);
  }
}

TEST_CASE("corpus size and coverage") {
  Workspace ws(corpus::root());
  auto p = corpus::load<FinPtdSet>(ws);
  auto a = corpus::load<FinAb>(ws);
  CHECK(p.groupoids.size() + a.groupoids.size() >= 12);
  CHECK(p.functors.size() + a.functors.size() >= 20);
  CHECK(a.groupoids.size() >= 3);
  CHECK(a.functors.size() >= 3);
  CHECK(p.invalid_groupoids == std::vector<std::string>{"broken_assoc.json"});
}

TEST_CASE("load_directory resolves every reference") {
  Workspace ws(corpus::root());
  auto ids = ws.load_directory(corpus::root());
  CHECK(ids.size() == corpus::files().size());
  CHECK(ids.count("z2_one_object.json") == 1);
}

TEST_CASE("load_directory rejects duplicate identifiers") {
  TempDir dir("fracta_io_dup");
  auto g = groupoid_json(*cyclic_groupoid(2));
  g["id"] = "same";
  dir.write("a.json", g.dump());
  dir.write("b.json", g.dump());
  Workspace ws(dir.path);
  try {
    ws.load_directory(dir.path);
    FAIL("expected MalformedInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedInput);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
}

TEST_CASE("malformed documents") {
  TempDir dir("fracta_io_bad");
  Workspace ws(dir.path);
  auto kind_of_failure = [&](const std::string& text, auto load) {
    auto file = dir.write("doc.json", text);
    Workspace fresh(dir.path);
    try {
      load(fresh, Json(file.string()));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  auto grp = [](Workspace& w, const Json& r) { w.groupoid<FinPtdSet>(r, {}); };
  auto fun = [](Workspace& w, const Json& r) { w.functor<FinPtdSet>(r, {}); };

  CHECK(kind_of_failure("{", grp) == ErrorKind::MalformedInput);
  CHECK(kind_of_failure(R"({"kind":"groupoid","objects":["*"]})", grp) == ErrorKind::MalformedInput);
  CHECK(kind_of_failure(R"({"kind":"groupoid","backend":"rings"})", grp) == ErrorKind::MalformedInput);
  CHECK(kind_of_failure(R"({"kind":"functor","src":"missing.json","dst":"missing.json"})", fun) ==
        ErrorKind::MalformedInput);

  auto z2 = groupoid_json(*cyclic_groupoid(2));
  auto bad_label = z2;
  bad_label["compose"][0][2] = "nowhere";
  CHECK(kind_of_failure(bad_label.dump(), grp) == ErrorKind::MalformedInput);

  auto partial = z2;
  partial["compose"].erase(partial["compose"].size() - 1);
  CHECK(kind_of_failure(partial.dump(), grp) == ErrorKind::MalformedInstance);

  // a functor table naming an arrow the target does not have
  Json f{{"kind", "functor"}, {"src", z2}, {"dst", z2}, {"objects", Json::object()}, {"arrows", {{"*>*:1", "x"}}}};
  CHECK(kind_of_failure(f.dump(), fun) == ErrorKind::MalformedInput);

  auto ab = groupoid_json(*boundary_groupoid(FinAb::identity(FinAbGroup({2}))));
  ab["d"]["matrix"] = Json::array({Json::array({1})});
  CHECK(kind_of_failure(ab.dump(), [](Workspace& w, const Json& r) { w.groupoid<FinAb>(r, {}); }) ==
        ErrorKind::MalformedInput);
}

TEST_CASE("references resolve against the referencing file, then the root") {
  TempDir dir("fracta_io_refs");
  fs::create_directories(dir.path / "sub");
  dir.write("sub/z2.json", groupoid_json(*cyclic_groupoid(2)).dump());
  Json f = functor_json(Grpd<FinPtdSet>::identity(cyclic_groupoid(2)));
  f["src"] = "z2.json";
  f["dst"] = "z2.json";
  dir.write("sub/id.json", f.dump());
  Workspace ws(dir.path);
  auto F = ws.functor<FinPtdSet>(Json((dir.path / "sub/id.json").string()), {});
  CHECK(F.name == "id");
  CHECK(F.src == F.dst);  // cached by canonical path
  CHECK(ws.resolve("sub/z2.json", "/nonexistent") == dir.path / "sub/z2.json");
  CHECK_THROWS_AS(ws.resolve("nope.json", dir.path), Error);
}
