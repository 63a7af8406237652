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

#ifndef STABCERT_QRAC_HPP
#define STABCERT_QRAC_HPP

#include <vector>

#include "stabcert/optim.hpp"
#include "stabcert/witness.hpp"

namespace stabcert {

// Strategy for the 2^(d) -> 1 QRAC: d^2 prepared states rho_{x,x'} (index
// x*d + x') and two d-outcome POVMs, one per requested digit.
struct QracStrategy {
  int d = 3;
  std::vector<Mat> states;          // d^2 entries
  std::array<std::vector<Mat>, 2> povms;
};

// Average success probability
//   (1/2d^2) sum_{x,x'} Tr[rho_{x,x'} (M^1_x + M^2_{x'})].
double pd_value(const QracStrategy& strategy);

// Computational + Fourier bases (mutually unbiased for prime d) with each
// state the top eigenvector of M^1_x + M^2_{x'}.  Reaches (1 + 1/sqrt d)/2.
QracStrategy mub_quantum_strategy(PrimeDimension dim);

// Basis states carrying the first digit, both measurements computational;
// reaches the classical optimum (1 + 1/d)/2.
QracStrategy classical_optimal_strategy(PrimeDimension dim);

struct PovmOptResult {
  std::vector<Mat> effects;
  double objective = 0.0;  // sum_b Tr(M_b H_b)
  double gap = 0.0;        // duality gap bound from Y >= H_b certificate
  bool certified = false;
  int iterations = 0;
};

// Maximizes sum_b Tr(M_b H_b) over POVMs by projected gradient ascent;
// feasibility via Dykstra alternation between the PSD cones and the
// completeness affine space.  certified = true once the dual point
// Y = sym(sum H_b M_b) + eps I proves a gap <= tol.
PovmOptResult povm_optimize(const std::vector<Mat>& targets, double tol,
                            int max_iters = 400,
                            const std::vector<Mat>* warm_start = nullptr);

struct SeesawTrace {
  std::vector<double> values;  // objective after each full iteration
  bool converged = false;
  QracStrategy final;
};

struct SeesawOptions {
  std::uint64_t seed = 1;
  int restarts = 100;
  int max_iters = 60;
  double tol = 1e-7;
};

struct SeesawResult {
  SeesawTrace best;
  double best_value = 0.0;
  std::vector<SeesawTrace> traces;  // one per restart
};

// Heuristic lower bound on the stabilizer value of p_d (d = 3): states
// snap to the best of the 12 stabilizer vertices (exact half-step), POVMs
// ascend with povm_optimize warm-started from the incumbent.
SeesawResult seesaw_stabilizer(PrimeDimension dim,
                               const SeesawOptions& opts = {});

}  // namespace stabcert

#endif  // STABCERT_QRAC_HPP
