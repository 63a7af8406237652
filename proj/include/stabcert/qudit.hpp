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

#ifndef STABCERT_QUDIT_HPP
#define STABCERT_QUDIT_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace stabcert {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

// Tolerances used across the library.  Structural checks (projector,
// PSD, membership) run at 1e-10, algebraic identities at 1e-12.
inline constexpr double kStructTol = 1e-10;
inline constexpr double kAlgebraTol = 1e-12;

// Prime Hilbert-space dimension.  Primality is checked at construction;
// everything in this library is exercised at d in {2, 3, 5}.
class PrimeDimension {
 public:
  explicit PrimeDimension(int d);
  int value() const { return d_; }
  friend bool operator==(PrimeDimension a, PrimeDimension b) {
    return a.d_ == b.d_;
  }

 private:
  int d_;
};

// Index (a, b) of the displacement operator D_{a,b} = w_d^{ab} X^a Z^b,
// with both entries reduced mod d.
struct DisplacementIndex {
  int a = 0;
  int b = 0;
  bool trivial() const { return a == 0 && b == 0; }
  friend bool operator==(DisplacementIndex lhs, DisplacementIndex rhs) {
    return lhs.a == rhs.a && lhs.b == rhs.b;
  }
};

// Density matrix on C^d: Hermitian (1e-12), unit trace (1e-12), and
// positive semidefinite up to -1e-10 on the smallest eigenvalue.
class DensityMatrix {
 public:
  DensityMatrix(Mat entries, PrimeDimension dim);
  const Mat& matrix() const { return mat_; }
  PrimeDimension dim() const { return dim_; }
  int d() const { return dim_.value(); }

 private:
  Mat mat_;
  PrimeDimension dim_;
};

// One vertex of the stabilizer polytope: the rank-1 projector onto the
// eigenvector of D_{a,b} with eigenvalue w^q.
struct StabilizerVertex {
  DensityMatrix state;
  DisplacementIndex generator;
  int phase_index = 0;  // q
};

// Primitive d-th root of unity exp(2*pi*i/d).
Cx root_of_unity(int d, long long power = 1);

// D_{a,b} = w_d^{ab} X^a Z^b with w_2 = i and w_d = w^{(d+1)/2} for odd
// prime d ((d+1)/2 is the inverse of 2 in F_d, so the half-power is exact
// integer arithmetic).  Unitary to 1e-12.
Mat displacement_operator(PrimeDimension dim, DisplacementIndex idx);

struct GroupProduct {
  Cx phase;
  DisplacementIndex index;
};

// Group law D_{a,b} D_{a',b'} = w_d^{a'b - ab'} D_{a+a', b+b'}.
GroupProduct group_product(PrimeDimension dim, DisplacementIndex idx1,
                           DisplacementIndex idx2);

// The d(d+1) stabilizer pure states: for each generator direction in
// {(0,1), (1,0), (1,1), ..., (1,d-1)} and each q in F_d, the projector
//   (1/d) sum_k (w^{-q} D)^k.
// Vertices are deduplicated by Frobenius distance (1e-8) rather than by
// label, and the expected count is enforced.
std::vector<StabilizerVertex> stabilizer_vertices(PrimeDimension dim);

// Tr(rho sigma), real to 1e-12, clamped to [0, 1].
double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);

// Qubit helpers. ------------------------------------------------------------

// rho = (I + r.sigma)/2 for a Bloch vector with |r| <= 1.
DensityMatrix qubit_state(const Vec3& r);

// Bloch vector of a qubit density matrix.
Vec3 bloch_vector(const DensityMatrix& rho);

struct CliffordOrbits {
  std::array<Vec3, 12> h_states;  // (+-e_i +- e_j)/sqrt(2), i < j
  std::array<Vec3, 8> t_states;   // (+-1, +-1, +-1)/sqrt(3)
};

// Bloch vectors of the Clifford orbits of the H and T magic states.
CliffordOrbits qubit_clifford_orbits();

// Bloch vectors of the 6 qubit stabilizer vertices, ordered
// +x, -x, +y, -y, +z, -z.
std::array<Vec3, 6> qubit_stabilizer_octahedron();

inline double l1_norm(const Vec3& r) {
  return std::abs(r.x()) + std::abs(r.y()) + std::abs(r.z());
}

}  // namespace stabcert

#endif  // STABCERT_QUDIT_HPP
