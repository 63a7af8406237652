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

#ifndef STABCERT_GRAM_HPP
#define STABCERT_GRAM_HPP

#include <optional>

#include "stabcert/witness.hpp"

namespace stabcert {

// Pairwise overlap table r_ij = Tr(rho_i rho_j).  The trace convention is
// phase-free and directly measurable; for pure states it is the squared
// amplitude overlap, so the stabilizer-allowed set is {0, 1/d, 1}.
struct GramMatrix {
  Eigen::MatrixXd entries;
  int n() const { return static_cast<int>(entries.rows()); }
};

GramMatrix gram_matrix(const std::vector<DensityMatrix>& states);

// Overlap of two stabilizer vertices from their labels alone:
// Delta = a2 b1 - a1 b2 mod d.  Delta != 0 gives 1/d; for Delta = 0 the
// generators are proportional, g2 = m g1, and the states coincide exactly
// when q2 = m q1 mod d.
double symplectic_overlap(PrimeDimension dim, DisplacementIndex g1, int q1,
                          DisplacementIndex g2, int q2);

struct OffendingEntry {
  int i;
  int j;
  double value;
};

struct GramClassification {
  Scenario scenario = Scenario::kClassical;
  bool compatible_entrywise = true;
  std::vector<OffendingEntry> offending_pairs;
  bool diagonal_pure = true;
  // Exact subset search over extremal-state Gram matrices (n <= 6, d <= 3);
  // empty when skipped.  A negative here is the authoritative refutation.
  std::optional<bool> subset_match;
};

// Entrywise necessary condition of the overlap theorem: classical Grams
// live in {0, 1}, stabilizer Grams in {0, 1/d, 1} (trace convention).
GramClassification classify_gram(const GramMatrix& gram, PrimeDimension dim,
                                 Scenario scenario, double tol = 1e-8);

// S3 through state overlaps; pure form
//   sqrt(5 + 4(r12 - r13 - r23)) + 2 sqrt(1 - r12),
// general form uses the diagonal purities.  Radicands slightly below zero
// (>= -1e-10) are clamped; anything lower is an invalid Gram.
double s3_overlap_form(const GramMatrix& gram, bool pure);

// T_N through state overlaps:
//   (1/sqrt2) sum_y sqrt(sum_{x,y'} (-1)^{x_y + y'_y} r_{x,y'}).
double tn_overlap_form(int n_bits, const GramMatrix& gram);

}  // namespace stabcert

#endif  // STABCERT_GRAM_HPP
