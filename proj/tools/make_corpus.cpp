// Writes the shipped example corpus: make_corpus <dir>.
//
// Groupoids and functors are built from the library shapes and serialized;
// functor, span and fraction files refer to the groupoid and functor files by
// name. broken_assoc.json is written by hand.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "fracta/abelian_groupoid.hpp"
#include "fracta/io.hpp"
#include "fracta/pointed_groupoid.hpp"
#include "fracta/snail.hpp"

using namespace fracta;
namespace fs = std::filesystem;

namespace {

using P = Grpd<FinPtdSet>;
using A = Grpd<FinAb>;

fs::path out_dir;

void write(const std::string& file, const Json& j) {
  std::ofstream out(out_dir / file);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + file);
  std::cout << file << "\n";
}

template <BaseCategory C>
struct Registry {
  std::map<const InternalGroupoid<C>*, std::string> groupoid_files;
  std::map<std::string, InternalFunctor<C>> functors;

  Groupoid<C> add(const std::string& file, Groupoid<C> g) {
    groupoid_files[g.get()] = file;
    write(file, groupoid_json(*g));
    return g;
  }

  void add_functor(const std::string& stem, InternalFunctor<C> f) {
    f.name = stem;
    Json j = functor_json(f);
    j["src"] = groupoid_files.at(f.src.get());
    j["dst"] = groupoid_files.at(f.dst.get());
    write(stem + ".json", j);
    functors.emplace(stem, std::move(f));
  }

  // First functor in enumeration order satisfying `keep`.
  void pick(const std::string& stem, const Groupoid<C>& x, const Groupoid<C>& y,
            const std::function<bool(const InternalFunctor<C>&)>& keep) {
    for (auto& f : Grpd<C>::enumerate_functors(x, y, 1 << 16))
      if (keep(f)) return add_functor(stem, f);
    throw std::runtime_error("no functor for " + stem);
  }

  void span(const std::string& file, const std::string& left, const std::string& right) {
    Fract<C>::span(functors.at(left), functors.at(right));  // throws unless a fraction
    write(file, {{"kind", "span"},
                 {"backend", backend_name(backend_v<C>)},
                 {"left", left + ".json"},
                 {"right", right + ".json"}});
  }
};

template <BaseCategory C>
bool weq(const InternalFunctor<C>& f) {
  return Grpd<C>::is_weak_equivalence(f).holds();
}
template <BaseCategory C>
bool nonzero(const InternalFunctor<C>& f) {
  for (int v : f.t1)
    if (v != 0) return true;
  return false;
}

PointedSet pset(int n) {
  std::vector<std::string> l{"*"};
  for (int i = 1; i < n; ++i) l.push_back("x" + std::to_string(i));
  return PointedSet(l);
}

PointedMap pmap(const PointedSet& s, const PointedSet& t, Table table) {
  return *FinPtdSet::from_table(s, t, std::move(table));
}

Json broken_assoc() {
  // Two involutions a, b with a.b = a and b.a = b: (a.a).b = b but a.(a.b) = e.
  return {{"kind", "groupoid"},
          {"backend", "pointed"},
          {"name", "broken_assoc"},
          {"objects", {"*"}},
          {"basepoint", "*"},
          {"arrows",
           {{{"id", "e"}, {"src", "*"}, {"dst", "*"}},
            {{"id", "a"}, {"src", "*"}, {"dst", "*"}},
            {{"id", "b"}, {"src", "*"}, {"dst", "*"}}}},
          {"identities", {{"*", "e"}}},
          {"compose",
           {{"e", "e", "e"},
            {"e", "a", "a"},
            {"e", "b", "b"},
            {"a", "e", "a"},
            {"b", "e", "b"},
            {"a", "a", "e"},
            {"b", "b", "e"},
            {"a", "b", "a"},
            {"b", "a", "b"}}}};
}

Json category_doc(const FiniteCategory& c, const SigmaClass& s, const std::string& name) {
  return {{"kind", "category"}, {"name", name}, {"category", category_json(c.to_data())}, {"sigma", s.ids(c)}};
}

void pointed() {
  Registry<FinPtdSet> r;
  auto zero = r.add("zero.json", P::zero());
  auto z2 = r.add("z2_one_object.json", cyclic_groupoid(2));
  auto z3 = r.add("z3_one_object.json", cyclic_groupoid(3));
  auto klein = r.add("klein_one_object.json", pieces_groupoid({ConnectedPiece{1, klein_group()}}, "Z/2 x Z/2"));
  auto s3 = r.add("s3_one_object.json", pieces_groupoid({ConnectedPiece{1, symmetric_group3()}}, "S3"));
  auto interval = r.add("interval.json", interval_groupoid());
  auto disc2 = r.add("discrete2.json", discrete_groupoid(2));
  auto zpp = r.add("z2_plus_point.json",
                   pieces_groupoid({ConnectedPiece{1, cyclic_group(2)}, ConnectedPiece{1, {{0}}}}, "Z/2+1"));
  auto ixz2 = r.add("interval_x_z2.json", pieces_groupoid({ConnectedPiece{2, cyclic_group(2)}}, "interval x Z/2"));
  write("broken_assoc.json", broken_assoc());

  auto any = [](const PtdFunctor&) { return true; };
  auto injective_on_objects = [](const PtdFunctor& f) {
    return std::set<int>(f.t0.begin(), f.t0.end()).size() == f.t0.size();
  };
  r.add_functor("basepoint_into_z2", P::zero_functor(zero, z2));
  r.add_functor("id_zero", P::identity(zero));
  r.add_functor("id_z2", P::identity(z2));
  r.add_functor("id_interval_x_z2", P::identity(ixz2));
  r.pick("interval_to_zero", interval, zero, any);
  r.pick("zero_into_interval", zero, interval, any);
  r.pick("z2_to_zero", z2, zero, any);
  r.pick("discrete2_to_zero", disc2, zero, any);
  r.pick("interval_x_z2_to_z2", ixz2, z2, weq<FinPtdSet>);
  r.pick("z2_into_interval_x_z2", z2, ixz2, weq<FinPtdSet>);
  r.pick("z2_plus_point_to_z2", zpp, z2, nonzero<FinPtdSet>);
  r.pick("klein_to_z2", klein, z2, nonzero<FinPtdSet>);
  r.pick("z2_into_klein", z2, klein, nonzero<FinPtdSet>);
  r.pick("s3_to_z2", s3, z2, nonzero<FinPtdSet>);
  r.pick("z3_into_s3", z3, s3, nonzero<FinPtdSet>);
  r.pick("interval_to_z2", interval, z2, nonzero<FinPtdSet>);
  r.pick("discrete2_into_z2_plus_point", disc2, zpp, injective_on_objects);
  r.pick("interval_x_z2_to_z2_plus_point", ixz2, zpp, nonzero<FinPtdSet>);
  r.pick("interval_x_z2_to_klein", ixz2, klein, nonzero<FinPtdSet>);
  r.pick("z2_plus_point_to_discrete2", zpp, disc2, injective_on_objects);

  r.span("frac_identity_gz.json", "id_zero", "basepoint_into_z2");
  r.span("frac_interval_z2.json", "interval_to_zero", "interval_to_z2");
  r.span("frac_ixz2_klein.json", "interval_x_z2_to_z2", "interval_x_z2_to_klein");
  r.span("frac_ixz2_zpp.json", "interval_x_z2_to_z2", "interval_x_z2_to_z2_plus_point");
  r.span("frac_ixz2_inverse.json", "interval_x_z2_to_z2", "id_interval_x_z2");
  r.span("frac_z2_klein.json", "z2_into_interval_x_z2", "z2_into_klein");

  using FP = Fract<FinPtdSet>;
  auto gz = FP::span(r.functors.at("id_zero"), r.functors.at("basepoint_into_z2"));
  auto via_interval = FP::span(r.functors.at("interval_to_zero"), r.functors.at("interval_to_z2"));
  auto q = FP::find_span_iso(via_interval, gz);
  if (!q) throw std::runtime_error("no 2-isomorphism between the fractions 1 -> Z/2");
  write("quad_interval_vs_gz.json", quadruple_json(*q));
  auto q2 = FP::find_span_iso(via_interval, via_interval);
  write("quad_identity_interval.json", quadruple_json(FP::identity_quadruple(via_interval)));
  write("quad_interval_self.json", quadruple_json(*q2));

  auto seq = Snail<FinPtdSet>::snail_sequence(r.functors.at("basepoint_into_z2"));
  write("seq_basepoint_into_z2.json", sequence_json(seq));
  auto broken = seq;
  broken.arrows[2] = FinPtdSet::zero_arrow(seq.nodes[2], seq.nodes[3]);
  broken.provenance[2] = "given";
  write("seq_zero_connecting.json", sequence_json(broken));

  write("fractor_canonical.json", fractor_json(canonical_fractor(r.functors.at("basepoint_into_z2"))));
  {
    auto e = pset(1);
    FractorData<FinPtdSet> d;
    d.A = disc2;
    d.B = zero;
    d.E = e;
    d.sigma = pmap(e, disc2->A0, {0});
    d.rho = pmap(e, zero->A0, {0});
    d.R = e;
    d.d = d.c = FinPtdSet::identity(e);
    d.sigma_bar = pmap(e, disc2->A1, {disc2->view.e[0]});
    d.kernel_pair = e;
    d.s1 = d.s2 = FinPtdSet::identity(e);
    d.rho_bar = pmap(e, zero->A1, {0});
    write("fractor_sigma_not_epi.json", fractor_json(d));
  }
  {
    const auto& av = interval->view;
    FractorData<FinPtdSet> d;
    d.A = interval;
    d.B = disc2;
    d.E = interval->A0;
    d.sigma = FinPtdSet::identity(interval->A0);
    d.rho = pmap(interval->A0, disc2->A0, {0, 1});
    d.R = interval->A1;
    d.d = pmap(interval->A1, interval->A0, av.d);
    d.c = pmap(interval->A1, interval->A0, av.c);
    d.sigma_bar = FinPtdSet::identity(interval->A1);
    d.kernel_pair = interval->A0;
    d.s1 = d.s2 = FinPtdSet::identity(interval->A0);
    d.rho_bar = pmap(interval->A0, disc2->A1, {disc2->view.e[0], disc2->view.e[1]});
    write("fractor_rho_not_coequalizing.json", fractor_json(d));
  }
  {
    auto e = pset(2);
    auto ee = FinPtdSet::product(e, e);
    FractorData<FinPtdSet> d;
    d.A = zero;
    d.B = z2;
    d.E = e;
    d.sigma = FinPtdSet::zero_arrow(e, zero->A0);
    d.rho = FinPtdSet::zero_arrow(e, z2->A0);
    d.R = e;
    d.d = d.c = FinPtdSet::identity(e);
    d.sigma_bar = FinPtdSet::zero_arrow(e, zero->A1);
    d.kernel_pair = ee.apex;
    d.s1 = ee.p1;
    d.s2 = ee.p2;
    d.rho_bar = FinPtdSet::zero_arrow(ee.apex, z2->A1);
    write("fractor_not_fibration.json", fractor_json(d));
  }

  auto gcat = FiniteCategory::of_groupoid(ixz2->view);
  write("cat_groupoid.json", category_doc(gcat, SigmaClass::isomorphisms(gcat), "interval x Z/2"));
  std::vector<std::vector<bool>> diamond{
      {true, true, true, true}, {false, true, false, true}, {false, false, true, true}, {false, false, false, true}};
  auto dcat = FiniteCategory::poset({"bot", "a", "b", "top"}, diamond);
  write("cat_diamond.json", category_doc(dcat, SigmaClass::isomorphisms(dcat), "diamond"));
  std::vector<std::vector<bool>> chain{{true, true, true}, {false, true, true}, {false, false, true}};
  auto ccat = FiniteCategory::poset({"0", "1", "2"}, chain);
  write("cat_chain.json", category_doc(ccat, SigmaClass::all(ccat), "chain"));

  CategoryData cd;
  cd.objects = {"x", "y", "z"};
  cd.arrows = {{"1x", "x", "x"}, {"1y", "y", "y"}, {"1z", "z", "z"}, {"f", "x", "z"}, {"s", "y", "z"}};
  cd.identities = {{"x", "1x"}, {"y", "1y"}, {"z", "1z"}};
  cd.compose = {{"1x", "1x", "1x"}, {"1y", "1y", "1y"}, {"1z", "1z", "1z"}, {"1x", "f", "f"},
                {"f", "1z", "f"},   {"1y", "s", "s"},    {"s", "1z", "s"}};
  auto ncat = FiniteCategory::from_data(cd);
  write("cat_cf3_negative.json", category_doc(ncat, SigmaClass::of(ncat, {"1x", "1y", "1z", "s"}), "cospan"));
}

void abelian() {
  Registry<FinAb> r;
  auto z2 = FinAbGroup({2});
  auto z4 = FinAbGroup({4});
  auto o = FinAb::zero_object();
  auto hom = [](const FinAbGroup& s, const FinAbGroup& t, std::int64_t k) {
    IntMatrix m(1, 1);
    m(0, 0) = k;
    return FinAbHom(s, t, m);
  };
  auto zero = r.add("ab_zero.json", boundary_groupoid(FinAb::zero_arrow(o, o), "0"));
  auto loop = r.add("ab_z2_loop.json", boundary_groupoid(FinAb::zero_arrow(z2, o), "Z/2 loop"));
  auto interval = r.add("ab_z2_interval.json", boundary_groupoid(FinAb::identity(z2), "Z/2 interval"));
  auto disc = r.add("ab_z2_discrete.json", boundary_groupoid(FinAb::zero_arrow(o, z2), "Z/2 discrete"));
  auto z4z2 = r.add("ab_z4_to_z2.json", boundary_groupoid(hom(z4, z2, 1), "Z/4 -> Z/2"));
  auto z2z4 = r.add("ab_z2_to_z4.json", boundary_groupoid(hom(z2, z4, 2), "Z/2 -> Z/4"));

  auto any = [](const AbFunctor&) { return true; };
  r.add_functor("ab_id_z2_loop", A::identity(loop));
  r.add_functor("ab_id_zero", A::identity(zero));
  r.pick("ab_interval_to_zero", interval, zero, any);
  r.pick("ab_interval_to_loop", interval, loop, nonzero<FinAb>);
  r.pick("ab_z4_to_z2_to_loop", z4z2, loop, nonzero<FinAb>);
  r.pick("ab_discrete_into_z2_to_z4", disc, z2z4, nonzero<FinAb>);
  r.pick("ab_z2_to_z4_to_discrete", z2z4, disc, weq<FinAb>);
  r.pick("ab_loop_to_zero", loop, zero, any);

  r.span("ab_frac_interval_loop.json", "ab_interval_to_zero", "ab_interval_to_loop");
  r.span("ab_frac_identity_loop.json", "ab_id_z2_loop", "ab_id_z2_loop");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <dir>\n";
    return 2;
  }
  out_dir = argv[1];
  fs::create_directories(out_dir);
  try {
    pointed();
    abelian();
  } catch (const std::exception& e) {
    std::cerr << "make_corpus: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
