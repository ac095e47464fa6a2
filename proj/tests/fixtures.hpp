#pragma once

// Small groupoids shared by several test files.

#include "fracta/pointed_groupoid.hpp"

namespace fixtures {

using namespace fracta;

inline PointedGroupoidData z2_data() {
  PointedGroupoidData d;
  d.objects = {"*"};
  d.basepoint = "*";
  d.arrows = {{"e", "*", "*"}, {"s", "*", "*"}};
  d.identities = {{"*", "e"}};
  d.compose = {{"e", "e", "e"}, {"e", "s", "s"}, {"s", "e", "s"}, {"s", "s", "e"}};
  return d;
}

inline std::vector<PtdGroupoid> small_groupoids() {
  return {Grpd<FinPtdSet>::zero(),
          discrete_groupoid(2),
          interval_groupoid(),
          cyclic_groupoid(2),
          cyclic_groupoid(3),
          pieces_groupoid({ConnectedPiece{1, cyclic_group(2)}, ConnectedPiece{1, {{0}}}}, "Z/2+1"),
          pieces_groupoid({ConnectedPiece{2, cyclic_group(2)}}, "interval x Z/2")};
}

}  // namespace fixtures
