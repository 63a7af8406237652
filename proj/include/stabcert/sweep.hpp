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

#ifndef STABCERT_SWEEP_HPP
#define STABCERT_SWEEP_HPP

#include <span>

#include "stabcert/witness.hpp"

namespace stabcert {

// States pinned to facet-witness value w lie on the shell
// S(c) = {r : |r|_2 = 1, |r|_1 = c} with c = 1 - 2w in [1, sqrt3].
// The shell is one arc (or point set) per octant; a linear functional is
// maximized in closed form per octant: either at the in-plane gradient
// direction on the circle {sum u = c} or at a zero-coordinate endpoint.
struct ShellMax {
  double value;
  Vec3 point;
};
ShellMax shell_linear_max(const Vec3& v, double c);

struct SweepPoint {
  double w = 0.0;             // facet-witness value, <= 0
  double w_normalized = 0.0;  // w / w_T in [0, 1]
  double value = 0.0;
  std::vector<Vec3> argmax;
};

struct SweepOptions {
  std::uint64_t seed = 1;
  int restarts = 160;
  int max_iters = 300;
};

// Uniform grid of facet-witness values, w_normalized in [0, 1].
std::vector<double> sweep_grid(int points);

// s3(w): r1 = e1 and r2 = e2 fixed, third state on the shell.  Closed form
// per grid point through shell_linear_max.
std::vector<SweepPoint> s3_sweep_one_free(std::span<const double> w_grid);

// All three states pinned to the same w; restarted block ascent alternating
// measurement directions and closed-form shell maximizations.
std::vector<SweepPoint> s3_sweep_all_at_w(std::span<const double> w_grid,
                                          const SweepOptions& opts = {});

// t_N(w) for N in {2, 3, 4}: all 2^N states pinned to w, searched with the
// antipodal reduction (2^{N-1} representatives).
std::vector<SweepPoint> tn_sweep(int n_bits, std::span<const double> w_grid,
                                 const SweepOptions& opts = {});

// --- Mixed stabilizer table --------------------------------------------------

struct MixedOptions {
  std::uint64_t seed = 1;
  int restarts = 6;           // coarse ascent restarts per vertex pattern
  int refine_restarts = 24;   // extra restarts for near-optimal patterns
  int refine_top = 200;
  bool max_over_subsets = false;  // also scan which slots are stabilizer
};

struct MixedStabRow {
  int n_bits = 0;
  int s = 0;                // number of stabilizer preparations
  double value = 0.0;       // reported value (see subset policy)
  double lex_value = 0.0;   // value with slots 0..s-1 stabilizer
  bool exact = false;       // true when every slot is enumerated
  bool subset_dependent = false;
  std::vector<Vec3> argmax;
};

// Max of T_N with s preparations ranging over the stabilizer vertices
// (exhaustive, deduplicated by the octahedral symmetry) and the remaining
// 2^N - s optimized over the Bloch sphere.  Stabilizer slots default to the
// first s bit strings; with max_over_subsets the slot choice is also
// maximized (all subsets for N=3, orbit representatives for N=4).
MixedStabRow mixed_stab_table(int n_bits, int s,
                              const MixedOptions& opts = {});

}  // namespace stabcert

#endif  // STABCERT_SWEEP_HPP
