#pragma once

// Groupoids over finite pointed sets: the file-level presentation (named
// objects and arrows with a composition table) and a few standard shapes.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fracta/groupoid.hpp"

namespace fracta {

using PtdGroupoid = Groupoid<FinPtdSet>;
using PtdFunctor = InternalFunctor<FinPtdSet>;

struct PointedGroupoidData {
  struct Arrow {
    std::string id;
    std::string src;
    std::string dst;
    friend bool operator==(const Arrow&, const Arrow&) = default;
  };
  std::vector<std::string> objects;
  std::string basepoint;
  std::vector<Arrow> arrows;
  std::map<std::string, std::string> identities;   // object -> arrow id
  std::vector<std::array<std::string, 3>> compose;  // f.g = h, diagrammatic

  friend bool operator==(const PointedGroupoidData&, const PointedGroupoidData&) = default;
};

struct PointedGroupoidLoad {
  PtdGroupoid groupoid;  // null when the axioms fail
  ValidationReport report;
};

/// Throws MalformedInput for dangling references and MalformedInstance when a
/// composable pair has no listed composite; axiom failures land in the report.
PointedGroupoidLoad load_pointed_groupoid(const PointedGroupoidData& data, std::string name = {});
/// As above but throws MalformedInstance when the report is not empty.
PtdGroupoid pointed_groupoid(const PointedGroupoidData& data, std::string name = {});
PointedGroupoidData to_data(const InternalGroupoid<FinPtdSet>& g);

/// Disjoint union of connected pieces, each a vertex group times the pair
/// groupoid on its objects. Piece 0 carries the basepoint. Groups are given by
/// multiplication tables with identity 0.
struct ConnectedPiece {
  int objects = 1;
  std::vector<std::vector<int>> group{{0}};
};
PtdGroupoid pieces_groupoid(const std::vector<ConnectedPiece>& pieces, std::string name = {});

std::vector<std::vector<int>> cyclic_group(int n);
std::vector<std::vector<int>> klein_group();
std::vector<std::vector<int>> symmetric_group3();

PtdGroupoid discrete_groupoid(int objects, std::string name = {});
PtdGroupoid interval_groupoid();
PtdGroupoid cyclic_groupoid(int n);  // one object, vertex group Z/n

}  // namespace fracta
