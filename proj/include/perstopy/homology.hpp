#pragma once

#include "perstopy/metric.hpp"
#include "perstopy/persistence.hpp"
#include "perstopy/smith.hpp"
#include "perstopy/vr_complex.hpp"

namespace perstopy {

/// Boundary matrices of a 2-skeleton, rows indexed by the higher-dimensional simplex.
/// Vertex columns use ambient point indices. d1(u,v) = v - u; d2(a,b,c) = bc - ac + ab.
struct ChainComplex2 {
  IntMatrix boundary1;  // edges x vertices
  IntMatrix boundary2;  // triangles x edges
};

ChainComplex2 chain_complex(const VRSkeleton2& k);

/// H_1 over the integers via Smith normal form.
AbelianInvariants h1_integer(const VRSkeleton2& k);

/// Single-linkage ultrametric: minimax path length.
DistanceMatrix mu0_ultrametric(const FiniteMetricSpace& x);

/// One (0, merge scale) point per single-linkage merge plus one essential (0, inf).
PersistenceDiagram ph0_diagram(const FiniteMetricSpace& x);

/// H_1 persistence of the Vietoris-Rips 2-skeleton filtration over the rationals.
/// Zero-length bars are dropped.
PersistenceDiagram ph1_diagram(const FiniteMetricSpace& x);

/// Abelianized edge-path presentation at eps agrees with H_1 of the basepoint's component.
bool hurewicz_check(const PointedMetricSpace& x, double eps);

}  // namespace perstopy
