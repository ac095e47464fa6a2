#include "fracta/report.hpp"

#include <sstream>

namespace fracta {

namespace {

Json failures_json(const std::vector<Failure>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back({{"name", f.name}, {"detail", f.detail}});
  return out;
}

template <BaseCategory C>
std::vector<std::string> element_labels(const typename C::Object& x) {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < C::size(x); ++e) out.push_back(C::element_label(x, static_cast<int>(e)));
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json report_json(const ValidationReport& r) {
  return {{"valid", r.ok()}, {"truncated", r.truncated}, {"failures", failures_json(r.failures)}};
}

Json report_json(const BipullbackReport& r) {
  return {{"passed", r.passed()}, {"bp1", r.bp1},       {"bp2", r.bp2},       {"truncated", r.truncated},
          {"apexes", r.apexes},   {"cones", r.cones},   {"pairs", r.pairs},   {"failures", failures_json(r.failures)}};
}

Json report_json(const AxiomVerdict& v) {
  Json out{{"holds", v.holds}, {"checked", v.checked}, {"witnesses", v.witnesses}};
  if (!v.holds) out["counterexample"] = v.counterexample;
  return out;
}

Json report_json(const CFReport& r) {
  Json out{{"all", r.all()}};
  for (std::size_t i = 0; i < 4; ++i) out["CF" + std::to_string(i + 1)] = report_json(r.cf[i]);
  return out;
}

Json report_json(const BFReport& r) {
  Json out{{"all", r.all()}};
  for (std::size_t i = 0; i < 5; ++i) out["BF" + std::to_string(i + 1)] = report_json(r.bf[i]);
  return out;
}

template <BaseCategory C>
Json pi0_json(const Pi0Result<C>& p) {
  Json out{{"pi0", object_json(p.object)}, {"order", C::size(p.object)}};
  out["eta"] = arrow_json(p.eta);
  return out;
}

template <BaseCategory C>
Json pi1_json(const Pi1Result<C>& p) {
  Json g{{"order", p.group.order()}, {"elements", p.group.labels}, {"table", p.group.mul}};
  if constexpr (std::is_same_v<C, FinAb>) g["invariant_factors"] = p.object.factors();
  return {{"group", g}};
}

template <BaseCategory C>
Json weq_json(const InternalFunctor<C>& f) {
  auto w = Grpd<C>::is_weak_equivalence(f);
  auto h = homotopy_maps(f);
  return {{"fully_faithful", w.fully_faithful},
          {"essentially_surjective", w.essentially_surjective},
          {"weak_equivalence", w.holds()},
          {"pi0_iso", h.pi0_iso},
          {"pi1_iso", h.pi1_iso}};
}

template <BaseCategory C>
Json groupoid_summary(const Groupoid<C>& g) {
  return {{"name", g->name}, {"objects", g->view.n0}, {"arrows", g->view.n1}};
}

template <BaseCategory C>
Json exactness_json(const ExactnessReport<C>& r) {
  Json nodes = Json::array();
  for (const auto& n : r.nodes) {
    Json j{{"node", kSnailNodes[n.node]}, {"exact", n.exact}};
    if (n.epi) j["epi"] = arrow_json(*n.epi);
    if (n.mono) j["kernel"] = arrow_json(*n.mono);
    if (!n.exact) j["counterexample"] = n.counterexample;
    nodes.push_back(j);
  }
  return {{"exact", r.all()}, {"nodes", nodes}};
}

template <BaseCategory C>
Json comparison_json(const ComparisonReport<C>& r) {
  Json cols = Json::array();
  for (const auto& c : r.columns) cols.push_back(arrow_json(c));
  return {{"verified", r.ok()},
          {"weak_equivalence", r.weak_equivalence},
          {"S_prime", groupoid_summary(r.S_prime.src)},
          {"columns", cols},
          {"checks", report_json(r.checks)}};
}

template <BaseCategory C>
Json verdict_json(const QuadrupleEquivalence<C>& q) {
  Json out{{"verdict", to_string(q.verdict)}, {"searched", q.searched}};
  if (!q.obstruction.empty()) out["obstruction"] = q.obstruction;
  if (q.witness) out["witness_apex"] = groupoid_summary(q.witness->R1.src);
  return out;
}

template <BaseCategory C>
std::string groupoid_dot(const InternalGroupoid<C>& g) {
  const auto& v = g.view;
  std::ostringstream out;
  out << "digraph " << quoted(g.name.empty() ? "groupoid" : g.name) << " {\n";
  for (int x = 0; x < v.n0; ++x)
    out << "  n" << x << " [label=" << quoted(C::element_label(g.A0, x)) << (x == 0 ? ", shape=box" : "") << "];\n";
  for (int a = 0; a < v.n1; ++a) {
    if (v.e[v.d[a]] == a) continue;
    out << "  n" << v.d[a] << " -> n" << v.c[a] << " [label=" << quoted(C::element_label(g.A1, a)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

template <BaseCategory C>
std::string sequence_dot(const SixTermSequence<C>& s, const ExactnessReport<C>* report) {
  std::ostringstream out;
  out << "digraph sequence {\n  rankdir=LR;\n";
  for (int i = 0; i < 6; ++i) {
    out << "  n" << i << " [label=" << quoted(std::string(kSnailNodes[i]) + " (" + std::to_string(C::size(s.nodes[i])) + ")");
    if (report && i >= 1 && i <= 4)
      out << ", style=filled, fillcolor=" << (report->nodes[i - 1].exact ? "palegreen" : "salmon");
    out << "];\n";
  }
  for (int i = 0; i < 5; ++i) out << "  n" << i << " -> n" << i + 1 << " [label=" << quoted(s.provenance[i]) << "];\n";
  out << "}\n";
  return out.str();
}

#define FRACTA_REPORTS(C)                                                              \
  template Json pi0_json<C>(const Pi0Result<C>&);                                      \
  template Json pi1_json<C>(const Pi1Result<C>&);                                      \
  template Json weq_json<C>(const InternalFunctor<C>&);                                \
  template Json groupoid_summary<C>(const Groupoid<C>&);                               \
  template Json exactness_json<C>(const ExactnessReport<C>&);                          \
  template Json comparison_json<C>(const ComparisonReport<C>&);                        \
  template Json verdict_json<C>(const QuadrupleEquivalence<C>&);                       \
  template std::string groupoid_dot<C>(const InternalGroupoid<C>&);                    \
  template std::string sequence_dot<C>(const SixTermSequence<C>&, const ExactnessReport<C>*);
FRACTA_REPORTS(FinPtdSet)
FRACTA_REPORTS(FinAb)
#undef FRACTA_REPORTS

}  // namespace fracta
