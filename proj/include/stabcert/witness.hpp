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

#ifndef STABCERT_WITNESS_HPP
#define STABCERT_WITNESS_HPP

#include <optional>
#include <span>
#include <string>

#include "stabcert/optim.hpp"
#include "stabcert/qudit.hpp"

namespace stabcert {

// Thrown when an exhaustive enumeration would exceed the desk-scale budget.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditional outcome table p(b|x,y).  Rows sum to 1 within 1e-10.
class Behavior {
 public:
  Behavior(int nx, int ny, int nb, std::vector<double> probabilities);
  double p(int b, int x, int y) const {
    return p_[(static_cast<std::size_t>(x) * ny_ + y) * nb_ + b];
  }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nb() const { return nb_; }

 private:
  int nx_, ny_, nb_;
  std::vector<double> p_;
};

// Witness coefficient tensor W^b_{x,y} plus the scenario shape.
class WitnessSpec {
 public:
  WitnessSpec(int d, int nx, int ny, int nb, std::vector<double> coeffs);
  double w(int b, int x, int y) const {
    return w_[(static_cast<std::size_t>(x) * ny_ + y) * nb_ + b];
  }
  int d() const { return d_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nb() const { return nb_; }

 private:
  int d_, nx_, ny_, nb_;
  std::vector<double> w_;
};

// d-dimensional POVM: PSD effects summing to the identity (1e-10).
class Povm {
 public:
  explicit Povm(std::vector<Mat> effects);
  const std::vector<Mat>& effects() const { return effects_; }
  int d() const { return d_; }
  int outcomes() const { return static_cast<int>(effects_.size()); }

 private:
  std::vector<Mat> effects_;
  int d_;
};

// Binary projective qubit measurement along s: {(I+s.sigma)/2, (I-s.sigma)/2}.
Povm qubit_projective_povm(const Vec3& s);

Behavior behavior_from(const std::vector<DensityMatrix>& states,
                       const std::vector<Povm>& povms);

double evaluate(const WitnessSpec& spec, const Behavior& behavior);

// Coefficient tensors.  S3 = E11 + E12 + E21 - E22 - E31 with
// E_xy = p(0|x,y) - p(1|x,y); the tilted variant carries weights
// 2t on y=1 terms and 2(1-t) on y=2 terms; T_N sums (-1)^{x_y} p(0|x,y)
// over all N-bit strings x (bit 1 = most significant).
WitnessSpec s3_spec();
WitnessSpec s3_tilted_spec(double t);
WitnessSpec tn_spec(int n_bits);

// Measurement-optimized Bloch forms. ----------------------------------------

double s3_bloch(const Vec3& r1, const Vec3& r2, const Vec3& r3);
double s3_tilted_bloch(double t, const Vec3& r1, const Vec3& r2,
                       const Vec3& r3);
// (1/2) sum_y || sum_x (-1)^{x_y} r_x ||, over 2^N vectors indexed by the
// bit strings x in lexicographic order, most significant bit = x_1.
double tn_bloch(int n_bits, std::span<const Vec3> r);

// A qubit witness given directly in measurement-optimized Bloch form.
// antipode(i) names the slot whose optimal vector is the negative of slot
// i's (the XOR property of T_N); -1 when no such pairing exists.
class BlochWitness {
 public:
  static BlochWitness s3();
  static BlochWitness s3_tilted(double t);
  static BlochWitness tn(int n_bits);

  const std::string& id() const { return id_; }
  int n_slots() const { return n_slots_; }
  int antipode(int slot) const;
  double value(std::span<const Vec3> r) const;
  // Subgradient, one entry per slot (0 at norm kinks).
  void gradient(std::span<const Vec3> r, std::span<Vec3> g) const;

 private:
  enum class Kind { kS3, kTilted, kTn };
  BlochWitness(Kind kind, double t, int n_bits);
  Kind kind_;
  double t_ = 0.5;
  int n_bits_ = 0;
  int n_slots_ = 3;
  std::string id_;
};

enum class Scenario { kClassical, kStabilizer, kKStab, kQuantum };

struct BoundReport {
  Scenario scenario = Scenario::kClassical;
  int stabilizer_slots = 0;  // for the k-STAB scenario: k
  double value = 0.0;
  bool exact = false;
  std::vector<std::vector<Vec3>> argmax;  // optimal slot configurations
  std::vector<std::string> argmax_labels;
  long long configurations = 0;           // states enumerated, if any
  int restarts = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

// Exact classical bound by enumerating deterministic encodings
// m: X -> [d]; the optimal decoding for a fixed encoding separates per
// (message, y) pair.  Throws CapacityError when d^|X| > 10^7.
BoundReport classical_bound(const WitnessSpec& spec);

// Classical bound of a Bloch-form witness over the extremal classical
// states {+e3, -e3}, with the antipodal reduction when available.
BoundReport classical_bound_qubit(const BlochWitness& witness);

// Exhaustive search over stabilizer vertex assignments for the first
// n_slots - n_free slots; the remaining slots are optimized over the unit
// sphere by restarted projected gradient ascent.  Exact iff n_free = 0.
BoundReport stabilizer_bound_qubit(const BlochWitness& witness,
                                   int n_free = 0,
                                   const OptimOptions& opts = {});

// Heuristic stabilizer bound by restarted best-improvement local search
// over vertex assignments; for witnesses whose exhaustive enumeration
// exceeds capacity (T_5).
BoundReport stabilizer_bound_heuristic(const BlochWitness& witness,
                                       const OptimOptions& opts = {});

// Quantum bound over unit Bloch vectors by restarted projected gradient
// ascent with backtracking.  Heuristic: exact = false.
BoundReport quantum_bound_qubit(const BlochWitness& witness,
                                const OptimOptions& opts = {});

// Closed-form bounds of the tilted witness S3(t), t in [0, 1]:
//   classical   max(4-2t, 6t)
//   stabilizer  max(6t, 4-2t, 2t sqrt5 + 2(1-t) sqrt2)
//   2-stab      max(6t, 4-2t, 2t + 2 sqrt2)
//   quantum     2t + 4 sqrt(t^2 + (1-t)^2)
struct TiltedBounds {
  double classical;
  double stab;
  double two_stab;
  double quantum;
};
TiltedBounds tilted_bounds(double t);

// Branch points of the stabilizer bound:
// t0 = (sqrt2-2)/(sqrt2-sqrt5-1), t1 = sqrt2/(3+sqrt2-sqrt5).
std::pair<double, double> tilted_stab_breakpoints();

enum class Certification { kNone, kAtLeastOneNs, kAtLeastTwoNs };

struct BoundSet {
  double classical;
  double stab;
  std::optional<double> two_stab;
  double quantum;
};

// NONE when value <= stab; AT_LEAST_ONE_NS up to the 2-stab bound;
// AT_LEAST_TWO_NS beyond it.  Throws on inconsistent bound ordering.
Certification certify(double value, const BoundSet& bounds);

// --- H-state self-test -------------------------------------------------------

// S3 with two stabilizer preparations: max over vertex pairs (r1, r2) of
// s3_bloch(r1, r2, r).
double s3_two_stab_value(const Vec3& r);

struct SelftestResult {
  std::vector<Vec3> maximizers;  // refined argmax set, lexicographic order
  std::vector<double> values;    // witness value at each maximizer
  int grid_points = 0;
  double scan_threshold = 0.0;
};

// Scans a sphere grid for near-maximizers of the 2-stab S3 problem and
// refines each candidate to its local optimum.  The result should be the
// 12 H-type states, each at value 1 + 2 sqrt2.
SelftestResult s3_h_selftest(int grid_points = 120000);

// States and measurements reaching the quantum value of S3
// (r1 = e1, r2 = e2, r3 = -(e1+e2)/sqrt2, measurements along
// (r1 +- r2)/sqrt2).
void s3_optimal_ensemble(std::vector<DensityMatrix>& states,
                         std::vector<Povm>& povms);

}  // namespace stabcert

#endif  // STABCERT_WITNESS_HPP
