// Copyright 2026 The stabcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABCERT_POLYTOPE_HPP
#define STABCERT_POLYTOPE_HPP

#include <vector>

#include "stabcert/qudit.hpp"

namespace stabcert {

// Facet operator A^q = -I + sum_j P_j^{q_j}, where P_j^{q_j} projects onto
// the w^{q_j} eigenvector of the j-th canonical displacement
// {D_{0,1}, D_{1,0}, D_{1,1}, ..., D_{1,d-1}}.  The polytope is
// {rho : Tr(rho A^q) >= 0 for all q in F_d^{d+1}}.
struct FacetOperator {
  Mat matrix;
  std::vector<int> label;  // q, one entry per canonical direction
};

// All d^{d+1} facet operators.  8 for d=2, 81 for d=3.
std::vector<FacetOperator> facet_operators(PrimeDimension dim);

// min_q Tr(rho A^q).  The minimum over label vectors separates per
// direction, so this costs d^2 (d+1) trace evaluations, not d^{d+1}.
double min_facet_value(const DensityMatrix& rho);

// Membership in STAB_d: min_q Tr(rho A^q) >= -1e-10.
bool is_stabilizer_member(const DensityMatrix& rho);

// Qubit facet witness (1/2) min[0, min_{q in {+-1}^3} (1 + q.r)],
// which equals (1/2) min[0, 1 - |r|_1].  Zero exactly on STAB_2.
double facet_witness_qubit(const Vec3& r);

// Largest magnitude the qubit facet witness attains, at the T states:
// w_T = (1 - sqrt(3))/2 ~ -0.366.
double facet_witness_qubit_min();

struct NsReport {
  double ns = 0.0;        // trace-distance non-stabilizerness, >= 0
  double w = 0.0;         // facet witness value, <= 0
  Vec3 nearest_point;     // Euclidean projection onto the octahedron
};

// Exact Euclidean projection of r onto the unit l1 ball (sign-fold,
// simplex projection, unfold).
Vec3 project_l1_ball(const Vec3& r);

// Qubit non-stabilizerness by trace distance: half the Euclidean Bloch
// distance from r to the stabilizer octahedron.  Inputs with
// 1 < |r| <= 1 + 1e-9 are renormalized; larger norms are rejected.
NsReport ns_trace_distance_qubit(const Vec3& r);

}  // namespace stabcert

#endif  // STABCERT_POLYTOPE_HPP
