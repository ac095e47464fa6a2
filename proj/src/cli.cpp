#include "fracta/cli.hpp"

#include <CLI11.hpp>

#include "fracta/report.hpp"

namespace fracta {

namespace fs = std::filesystem;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::IntegerOverflow:
      return 3;
    case ErrorKind::NoInducedMap:
    case ErrorKind::NoCF3Filler:
    case ErrorKind::NoPullbackInBase:
    case ErrorKind::Internal:
      return 1;
    default:
      return 2;
  }
}

// Failures first; a pass that ran out of budget, or examined no apex at all, is
// undecided.
int bipullback_code(const BipullbackReport& r) {
  if (!r.passed()) return 1;
  return r.truncated || r.apexes == 0 ? 3 : 0;
}

struct Context {
  Workspace ws;
  Budget budget;
  std::ostream& out;

  int emit(Json j, int code) {
    out << j.dump(2) << "\n";
    return code;
  }
};

std::string kind_of(const Json& doc) {
  if (doc.is_object() && doc.contains("kind") && doc.at("kind").is_string()) return doc.at("kind").get<std::string>();
  return "groupoid";
}

// Runs f.template operator()<C>() for the backend of the document.
template <class F>
int by_backend(const Json& doc, F&& f) {
  if (backend_of(doc) == Backend::abelian) return f.template operator()<FinAb>();
  return f.template operator()<FinPtdSet>();
}

// --- subcommands --------------------------------------------------------------

int cmd_validate(Context& cx, const std::string& file) {
  const Json& doc = cx.ws.document(file);
  auto kind = kind_of(doc);
  Json ref = file;
  Json out{{"file", file}, {"kind", kind}};
  ValidationReport r;
  if (kind == "category") {
    auto c = FiniteCategory::from_data(category_from_json(doc.at("category")));
    r = c.validate();
    if (doc.contains("sigma")) SigmaClass::of(c, doc.at("sigma").get<std::vector<std::string>>());
  } else if (kind == "fractor") {
    r = validate_fractor(cx.ws.fractor(ref, {}));
  } else {
    by_backend(doc, [&]<BaseCategory C>() {
      if (kind == "groupoid") {
        r = cx.ws.load_groupoid<C>(ref, {}).report;
      } else if (kind == "functor") {
        r = Grpd<C>::validate_functor(cx.ws.functor<C>(ref, {}));
      } else if (kind == "span") {
        auto s = cx.ws.span<C>(ref, {});
        r.merge(Grpd<C>::validate_functor(s.W), "left: ");
        r.merge(Grpd<C>::validate_functor(s.F), "right: ");
        if (r.ok() && !Grpd<C>::same_groupoid(s.W.src, s.F.src)) r.add("common domain");
        if (r.ok() && !Fract<C>::is_weq(s.W)) r.add("left leg in Sigma");
      } else if (kind == "quadruple") {
        r = Fract<C>::validate_quadruple(cx.ws.quadruple<C>(ref, {}));
      } else if (kind == "sequence") {
        auto s = cx.ws.sequence<C>(ref, {});
        r = s.well_formed();
        if (int i = s.first_nonzero_composite(); i >= 0)
          r.add("zero composites", "arrows " + std::to_string(i) + " and " + std::to_string(i + 1));
      } else {
        fail(ErrorKind::MalformedInput, "unknown kind \"" + kind + "\"");
      }
      return 0;
    });
  }
  out["report"] = report_json(r);
  return cx.emit(out, r.ok() ? 0 : 1);
}

int cmd_pi(Context& cx, const std::string& file, int n) {
  const Json& doc = cx.ws.document(file);
  return by_backend(doc, [&]<BaseCategory C>() {
    auto g = cx.ws.groupoid<C>(Json(file), {});
    return cx.emit(n == 0 ? pi0_json(pi0(*g)) : pi1_json(pi1(*g)), 0);
  });
}

int cmd_weq(Context& cx, const std::string& file) {
  return by_backend(cx.ws.document(file), [&]<BaseCategory C>() {
    auto f = cx.ws.functor<C>(Json(file), {});
    auto j = weq_json(f);
    return cx.emit(j, j["weak_equivalence"].template get<bool>() ? 0 : 1);
  });
}

int cmd_hpb(Context& cx, const std::string& a, const std::string& b, bool check) {
  return by_backend(cx.ws.document(a), [&]<BaseCategory C>() {
    auto F = cx.ws.functor<C>(Json(a), {});
    auto G = cx.ws.functor<C>(Json(b), {});
    auto sq = Grpd<C>::strong_h_pullback(F, G);
    Json out{{"corner", groupoid_summary(sq.P)}, {"groupoid", groupoid_json(*sq.P)}};
    int code = 0;
    if (check) {
      auto rep = Grpd<C>::check_bipullback(sq, cx.budget);
      out["bipullback"] = report_json(rep);
      code = bipullback_code(rep);
    }
    return cx.emit(out, code);
  });
}

int cmd_bikernel(Context& cx, const std::string& file) {
  return by_backend(cx.ws.document(file), [&]<BaseCategory C>() {
    auto F = cx.ws.functor<C>(Json(file), {});
    auto K = Grpd<C>::bikernel(F);
    return cx.emit({{"corner", groupoid_summary(K.K)},
                    {"groupoid", groupoid_json(*K.K)},
                    {"pi0", pi0_json(pi0(*K.K))["pi0"]},
                    {"pi1", pi1_json(pi1(*K.K))["group"]}},
                   0);
  });
}

struct LoadedCategory {
  Localization loc;
};

LoadedCategory load_category(Context& cx, const std::string& file) {
  const Json& doc = cx.ws.document(file);
  if (kind_of(doc) != "category") fail(ErrorKind::MalformedInput, "expected a category document");
  auto c = FiniteCategory::from_data(category_from_json(doc.at("category")));
  auto s = doc.contains("sigma") ? SigmaClass::of(c, doc.at("sigma").get<std::vector<std::string>>())
                                 : SigmaClass::isomorphisms(c);
  return {Localization(c, s)};
}

FractionSpan1D parse_span(const Localization& loc, const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) fail(ErrorKind::MalformedInput, "a span is written s,f");
  const auto& c = loc.category();
  return loc.span(c.arrow_index(text.substr(0, comma)), c.arrow_index(text.substr(comma + 1)));
}

Json span1d_json(const Localization& loc, const FractionSpan1D& s) {
  const auto& c = loc.category();
  return {{"s", c.arrow(s.s).id}, {"f", c.arrow(s.f).id}, {"text", loc.describe(s)}};
}

int cmd_check_cf(Context& cx, const std::string& file) {
  auto lc = load_category(cx, file);
  auto r = check_right_calculus(lc.loc.category(), lc.loc.sigma());
  return cx.emit(report_json(r), r.all() ? 0 : 1);
}

int cmd_span_compose(Context& cx, const std::string& file, const std::string& a, const std::string& b) {
  auto lc = load_category(cx, file);
  auto sa = parse_span(lc.loc, a), sb = parse_span(lc.loc, b);
  return cx.emit({{"composite", span1d_json(lc.loc, lc.loc.compose_spans(sa, sb))}}, 0);
}

int cmd_span_eq(Context& cx, const std::string& file, const std::string& a, const std::string& b) {
  auto lc = load_category(cx, file);
  SpanEquivalenceWitness w;
  bool eq = lc.loc.span_equivalent(parse_span(lc.loc, a), parse_span(lc.loc, b), &w);
  Json out{{"equivalent", eq}};
  if (eq) out["witness"] = {{"x", lc.loc.category().arrow(w.x).id}, {"x2", lc.loc.category().arrow(w.x2).id}};
  return cx.emit(out, eq ? 0 : 1);
}

int cmd_fraction_pullback(Context& cx, const std::string& file, const std::string& a, const std::string& b) {
  auto lc = load_category(cx, file);
  auto sq = lc.loc.fraction_pullback(parse_span(lc.loc, a), parse_span(lc.loc, b));
  auto rep = lc.loc.check_span_pullback(sq);
  Json fails = Json::array();
  for (const auto& f : rep.failures) fails.push_back({{"name", f.name}, {"detail", f.detail}});
  return cx.emit({{"corner", lc.loc.category().object(sq.corner)},
                  {"u", span1d_json(lc.loc, sq.u)},
                  {"v", span1d_json(lc.loc, sq.v)},
                  {"commutes", rep.commutes},
                  {"cones", rep.cones},
                  {"failures", fails},
                  {"passed", rep.passed()}},
                 rep.passed() ? 0 : 1);
}

int cmd_check_bf(Context& cx, const std::vector<std::string>& files, bool enumerate) {
  if (files.empty()) fail(ErrorKind::MalformedInput, "check-bf needs at least one file");
  return by_backend(cx.ws.document(files.front()), [&]<BaseCategory C>() {
    BFSample<C> sample;
    for (const auto& file : files) {
      const Json& doc = cx.ws.document(file);
      if (backend_of(doc) != backend_v<C>) fail(ErrorKind::MalformedInput, "mixed backends in the sample");
      auto kind = kind_of(doc);
      if (kind == "groupoid") {
        sample.groupoids.push_back(cx.ws.groupoid<C>(Json(file), {}));
      } else if (kind == "functor") {
        auto f = cx.ws.functor<C>(Json(file), {});
        sample.groupoids.push_back(f.src);
        sample.groupoids.push_back(f.dst);
        sample.functors.push_back(f);
      } else {
        fail(ErrorKind::MalformedInput, "check-bf takes groupoids and functors");
      }
    }
    std::vector<Groupoid<C>> unique;
    for (const auto& g : sample.groupoids) {
      bool seen = false;
      for (const auto& u : unique) seen = seen || u == g;
      if (!seen) unique.push_back(g);
    }
    sample.groupoids = unique;
    if (enumerate)
      for (const auto& x : unique)
        for (const auto& y : unique)
          for (auto& f : Grpd<C>::enumerate_functors(x, y, cx.budget.functors)) sample.functors.push_back(f);
    auto r = Fract<C>::check_bf_axioms(sample, cx.budget.functors);
    Json out = report_json(r);
    out["groupoids"] = sample.groupoids.size();
    out["functors"] = sample.functors.size();
    return cx.emit(out, r.all() ? 0 : 1);
  });
}

int cmd_fraction_compose(Context& cx, const std::string& a, const std::string& b) {
  return by_backend(cx.ws.document(a), [&]<BaseCategory C>() {
    auto sa = cx.ws.span<C>(Json(a), {});
    auto sb = cx.ws.span<C>(Json(b), {});
    auto s = Fract<C>::compose(sa, sb);
    return cx.emit({{"apex", groupoid_summary(s.W.src)}, {"span", span_json(s)}}, 0);
  });
}

int cmd_quad_eq(Context& cx, const std::string& a, const std::string& b) {
  return by_backend(cx.ws.document(a), [&]<BaseCategory C>() {
    auto p = cx.ws.quadruple<C>(Json(a), {});
    auto q = cx.ws.quadruple<C>(Json(b), {});
    auto v = Fract<C>::quadruple_equivalent(p, q, cx.budget);
    int code = v.verdict == Verdict::yes ? 0 : v.verdict == Verdict::no ? 1 : 3;
    return cx.emit(verdict_json(v), code);
  });
}

int cmd_fraction_bipullback(Context& cx, const std::string& a, const std::string& b) {
  return by_backend(cx.ws.document(a), [&]<BaseCategory C>() {
    auto sa = cx.ws.span<C>(Json(a), {});
    auto sb = cx.ws.span<C>(Json(b), {});
    auto sq = Fract<C>::bipullback_of_fractions(sa, sb);
    auto rep = Fract<C>::check_fraction_bipullback(sq, cx.budget);
    return cx.emit({{"corner", groupoid_summary(sq.core.P)},
                    {"square", report_json(Fract<C>::validate_fraction_square(sq))},
                    {"bipullback", report_json(rep)}},
                   bipullback_code(rep));
  });
}

int cmd_snail(Context& cx, const std::string& file) {
  return by_backend(cx.ws.document(file), [&]<BaseCategory C>() {
    auto F = cx.ws.functor<C>(Json(file), {});
    auto s = Snail<C>::snail_sequence(F);
    auto r = Snail<C>::check_exact(s);
    return cx.emit({{"sequence", sequence_json(s)}, {"exactness", exactness_json(r)}}, r.all() ? 0 : 1);
  });
}

int cmd_snail_fraction(Context& cx, const std::string& file) {
  return by_backend(cx.ws.document(file), [&]<BaseCategory C>() {
    auto f = cx.ws.span<C>(Json(file), {});
    auto fs = Snail<C>::snail_sequence_fraction(f);
    auto r = Snail<C>::check_exact(fs.sequence);
    bool ok = r.all() && fs.comparison.ok();
    return cx.emit({{"sequence", sequence_json(fs.sequence)},
                    {"exactness", exactness_json(r)},
                    {"comparison", comparison_json(fs.comparison)}},
                   ok ? 0 : 1);
  });
}

int cmd_check_exact(Context& cx, const std::string& file) {
  return by_backend(cx.ws.document(file), [&]<BaseCategory C>() {
    auto s = cx.ws.sequence<C>(Json(file), {});
    auto wf = s.well_formed();
    if (!wf.ok()) return cx.emit({{"well_formed", report_json(wf)}}, 2);
    auto r = Snail<C>::check_exact(s);
    return cx.emit({{"exactness", exactness_json(r)}}, r.all() ? 0 : 1);
  });
}

int cmd_validate_fractor(Context& cx, const std::string& file) {
  auto d = cx.ws.fractor(Json(file), {});
  auto r = validate_fractor(d);
  return cx.emit(report_json(r), r.ok() ? 0 : 1);
}

int cmd_dot(Context& cx, const std::string& file) {
  const Json& doc = cx.ws.document(file);
  auto kind = kind_of(doc);
  return by_backend(doc, [&]<BaseCategory C>() {
    if (kind == "groupoid") {
      cx.out << groupoid_dot(*cx.ws.groupoid<C>(Json(file), {}));
    } else if (kind == "functor") {
      auto s = Snail<C>::snail_sequence(cx.ws.functor<C>(Json(file), {}));
      auto r = Snail<C>::check_exact(s);
      cx.out << sequence_dot(s, &r);
    } else if (kind == "span") {
      auto fs = Snail<C>::snail_sequence_fraction(cx.ws.span<C>(Json(file), {}));
      auto r = Snail<C>::check_exact(fs.sequence);
      cx.out << sequence_dot(fs.sequence, &r);
    } else if (kind == "sequence") {
      auto s = cx.ws.sequence<C>(Json(file), {});
      auto r = Snail<C>::check_exact(s);
      cx.out << sequence_dot(s, &r);
    } else {
      fail(ErrorKind::MalformedInput, "dot renders groupoids, functors, spans and sequences");
    }
    return 0;
  });
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fracta: internal groupoids, fractions and the snail sequence"};
  app.require_subcommand(1);
  Budget budget;
  std::string corpus;
  app.add_option("--budget-objects", budget.objects, "apex object bound for cone enumeration")->capture_default_str();
  app.add_option("--budget-arrows", budget.arrows, "apex arrow bound for cone enumeration")->capture_default_str();
  app.add_option("--corpus", corpus, "directory for references (default FRACTA_CORPUS, else ./corpus)");
  app.fallthrough();

  std::string f1, f2, s1, s2;
  std::vector<std::string> many;
  bool check = false, enumerate = true;
  auto one = [&](const char* name, const char* help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("file", f1, "input document")->required();
    return sc;
  };
  auto two = [&](const char* name, const char* help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("first", f1, "first document")->required();
    sc->add_option("second", f2, "second document")->required();
    return sc;
  };
  auto spans = [&](const char* name, const char* help) {
    auto* sc = one(name, help);
    sc->add_option("--first", s1, "span s,f")->required();
    sc->add_option("--second", s2, "span s,f")->required();
    return sc;
  };
  auto* validate = one("validate", "check a document against its axioms");
  auto* p0 = one("pi0", "connected components of a groupoid");
  auto* p1 = one("pi1", "automorphism group of the basepoint");
  auto* weq = one("weq", "weak-equivalence certificate of a functor");
  auto* hpb = two("hpb", "strong h-pullback of two functors");
  hpb->add_flag("--check", check, "also check the bipullback property");
  auto* bik = one("bikernel", "bikernel of a functor");
  auto* cf = one("check-cf", "CF1-CF4 on a category with a class sigma");
  auto* bf = app.add_subcommand("check-bf", "BF1-BF5 on a sample of groupoids and functors");
  bf->add_option("files", many, "groupoid and functor documents")->required();
  bf->add_flag("!--given-only", enumerate, "use only the given functors");
  auto* scomp = spans("span-compose", "compose spans s,f in a category");
  auto* seq = spans("span-eq", "equivalence of spans s,f in a category");
  auto* fpb = spans("fraction-pullback", "pullback of spans s,f in a category");
  auto* fcomp = two("fraction-compose", "compose fraction spans");
  auto* qeq = two("quad-eq", "equivalence of quadruple 2-cells");
  auto* fbp = two("fraction-bipullback", "bipullback of fraction spans with its check");
  auto* sn = one("snail", "six-term sequence of a functor");
  auto* snf = one("snail-fraction", "six-term sequence of a fraction span");
  auto* ce = one("check-exact", "exactness of a six-term sequence");
  auto* vf = one("validate-fractor", "fractor conditions (pointed sets)");
  auto* dot = one("dot", "DOT rendering of a groupoid or sequence");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  Context cx{Workspace(corpus.empty() ? Workspace::default_root() : fs::path(corpus)), budget, out};
  try {
    // file arguments: as given, else under the corpus root
    for (auto* f : {&f1, &f2})
      if (!f->empty()) *f = cx.ws.resolve(*f, {}).string();
    for (auto& f : many) f = cx.ws.resolve(f, {}).string();
    if (*validate) return cmd_validate(cx, f1);
    if (*p0) return cmd_pi(cx, f1, 0);
    if (*p1) return cmd_pi(cx, f1, 1);
    if (*weq) return cmd_weq(cx, f1);
    if (*hpb) return cmd_hpb(cx, f1, f2, check);
    if (*bik) return cmd_bikernel(cx, f1);
    if (*cf) return cmd_check_cf(cx, f1);
    if (*bf) return cmd_check_bf(cx, many, enumerate);
    if (*scomp) return cmd_span_compose(cx, f1, s1, s2);
    if (*seq) return cmd_span_eq(cx, f1, s1, s2);
    if (*fpb) return cmd_fraction_pullback(cx, f1, s1, s2);
    if (*fcomp) return cmd_fraction_compose(cx, f1, f2);
    if (*qeq) return cmd_quad_eq(cx, f1, f2);
    if (*fbp) return cmd_fraction_bipullback(cx, f1, f2);
    if (*sn) return cmd_snail(cx, f1);
    if (*snf) return cmd_snail_fraction(cx, f1);
    if (*ce) return cmd_check_exact(cx, f1);
    if (*vf) return cmd_validate_fractor(cx, f1);
    if (*dot) return cmd_dot(cx, f1);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return cx.emit({{"error", to_string(e.kind())}, {"message", e.what()}}, exit_code(e.kind()));
  } catch (const nlohmann::json::exception& e) {
    err << "MalformedInput: " << e.what() << "\n";
    return cx.emit({{"error", "MalformedInput"}, {"message", e.what()}}, 2);
  }
  return 2;
}

}  // namespace fracta
