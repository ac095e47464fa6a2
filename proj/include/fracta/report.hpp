#pragma once

// JSON renderings of checker results and DOT output.

#include <string>

#include "fracta/homotopy.hpp"
#include "fracta/io.hpp"

namespace fracta {

Json report_json(const ValidationReport& r);
Json report_json(const BipullbackReport& r);
Json report_json(const AxiomVerdict& v);
Json report_json(const CFReport& r);
Json report_json(const BFReport& r);

template <BaseCategory C>
Json pi0_json(const Pi0Result<C>& p);
/// {"group": {"order", "elements", "table"}}, plus "invariant_factors" on FinAb.
template <BaseCategory C>
Json pi1_json(const Pi1Result<C>& p);
template <BaseCategory C>
Json weq_json(const InternalFunctor<C>& f);
template <BaseCategory C>
Json groupoid_summary(const Groupoid<C>& g);
template <BaseCategory C>
Json exactness_json(const ExactnessReport<C>& r);
template <BaseCategory C>
Json comparison_json(const ComparisonReport<C>& r);
template <BaseCategory C>
Json verdict_json(const QuadrupleEquivalence<C>& q);

/// Objects as nodes, non-identity arrows as edges; the basepoint is boxed.
template <BaseCategory C>
std::string groupoid_dot(const InternalGroupoid<C>& g);
/// A chain of six nodes; with a report, interior nodes are green when exact
/// and red otherwise.
template <BaseCategory C>
std::string sequence_dot(const SixTermSequence<C>& s, const ExactnessReport<C>* report = nullptr);

}  // namespace fracta
