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

#include "stabcert/qudit.hpp"

#include <cmath>

namespace stabcert {

namespace {

bool is_prime(int d) {
  if (d < 2) return false;
  for (int p = 2; p * p <= d; ++p) {
    if (d % p == 0) return false;
  }
  return true;
}

long long mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

PrimeDimension::PrimeDimension(int d) : d_(d) {
  if (!is_prime(d)) {
    throw std::invalid_argument("dimension must be a prime >= 2, got " +
                                std::to_string(d));
  }
}

DensityMatrix::DensityMatrix(Mat entries, PrimeDimension dim)
    : mat_(std::move(entries)), dim_(dim) {
  const int d = dim_.value();
  if (mat_.rows() != d || mat_.cols() != d) {
    throw std::invalid_argument("density matrix has wrong shape");
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(mat_.trace() - Cx(1.0, 0.0)) > kAlgebraTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStructTol) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

Cx root_of_unity(int d, long long power) {
  const double angle = 2.0 * M_PI * static_cast<double>(mod(power, d)) / d;
  return Cx(std::cos(angle), std::sin(angle));
}

Mat displacement_operator(PrimeDimension dim, DisplacementIndex idx) {
  const int d = dim.value();
  const int a = static_cast<int>(mod(idx.a, d));
  const int b = static_cast<int>(mod(idx.b, d));

  Mat op = Mat::Zero(d, d);
  // X^a Z^b maps |j> to w^{jb} |j+a>.
  for (int j = 0; j < d; ++j) {
    op((j + a) % d, j) = root_of_unity(d, static_cast<long long>(j) * b);
  }

  Cx phase;
  if (d == 2) {
    // w_2 = i
    static const Cx i_pow[4] = {Cx(1, 0), Cx(0, 1), Cx(-1, 0), Cx(0, -1)};
    phase = i_pow[mod(static_cast<long long>(a) * b, 4)];
  } else {
    const long long inv2 = (d + 1) / 2;
    phase = root_of_unity(d, inv2 * a * b);
  }
  return phase * op;
}

GroupProduct group_product(PrimeDimension dim, DisplacementIndex idx1,
                           DisplacementIndex idx2) {
  const int d = dim.value();
  const long long e = static_cast<long long>(idx2.a) * idx1.b -
                      static_cast<long long>(idx1.a) * idx2.b;
  Cx phase;
  if (d == 2) {
    static const Cx i_pow[4] = {Cx(1, 0), Cx(0, 1), Cx(-1, 0), Cx(0, -1)};
    phase = i_pow[mod(e, 4)];
  } else {
    const long long inv2 = (d + 1) / 2;
    phase = root_of_unity(d, inv2 * e);
  }
  DisplacementIndex out{static_cast<int>(mod(idx1.a + idx2.a, d)),
                        static_cast<int>(mod(idx1.b + idx2.b, d))};
  return {phase, out};
}

std::vector<StabilizerVertex> stabilizer_vertices(PrimeDimension dim) {
  const int d = dim.value();
  std::vector<DisplacementIndex> directions;
  directions.push_back({0, 1});
  for (int b = 0; b < d; ++b) directions.push_back({1, b});

  std::vector<StabilizerVertex> vertices;
  vertices.reserve(d * (d + 1));
  for (const auto& g : directions) {
    const Mat disp = displacement_operator(dim, g);
    for (int q = 0; q < d; ++q) {
      // (1/d) sum_k (w^{-q} D)^k
      Mat proj = Mat::Zero(d, d);
      Mat power = Mat::Identity(d, d);
      const Cx wq = root_of_unity(d, -q);
      for (int k = 0; k < d; ++k) {
        proj += power;
        power = (wq * disp) * power;
      }
      proj /= static_cast<double>(d);
      proj = Cx(0.5, 0.0) * (proj + proj.adjoint().eval());  // kill rounding skew

      if ((proj * proj - proj).cwiseAbs().maxCoeff() > kStructTol) {
        throw std::logic_error("stabilizer vertex is not a projector");
      }
      bool duplicate = false;
      for (const auto& v : vertices) {
        if ((v.state.matrix() - proj).norm() < 1e-8) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        vertices.push_back(
            StabilizerVertex{DensityMatrix(proj, dim), g, q});
      }
    }
  }
  if (static_cast<int>(vertices.size()) != d * (d + 1)) {
    throw std::logic_error("unexpected stabilizer vertex count");
  }
  return vertices;
}

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.d() != sigma.d()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  const Cx tr = (rho.matrix() * sigma.matrix()).trace();
  if (std::abs(tr.imag()) > kAlgebraTol) {
    throw std::logic_error("overlap has a non-real trace");
  }
  return std::clamp(tr.real(), 0.0, 1.0);
}

DensityMatrix qubit_state(const Vec3& r) {
  if (r.norm() > 1.0 + 1e-9) {
    throw std::invalid_argument("Bloch vector has norm > 1");
  }
  Mat m(2, 2);
  m(0, 0) = Cx(1.0 + r.z(), 0.0);
  m(0, 1) = Cx(r.x(), -r.y());
  m(1, 0) = Cx(r.x(), r.y());
  m(1, 1) = Cx(1.0 - r.z(), 0.0);
  return DensityMatrix(0.5 * m, PrimeDimension(2));
}

Vec3 bloch_vector(const DensityMatrix& rho) {
  if (rho.d() != 2) {
    throw std::invalid_argument("bloch_vector needs a qubit state");
  }
  const Mat& m = rho.matrix();
  return Vec3(2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
              (m(0, 0) - m(1, 1)).real());
}

CliffordOrbits qubit_clifford_orbits() {
  CliffordOrbits orbits;
  const double s2 = 1.0 / std::sqrt(2.0);
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (int si : {+1, -1}) {
        for (int sj : {+1, -1}) {
          Vec3 v = Vec3::Zero();
          v(i) = si * s2;
          v(j) = sj * s2;
          orbits.h_states[n++] = v;
        }
      }
    }
  }
  const double s3 = 1.0 / std::sqrt(3.0);
  n = 0;
  for (int sx : {+1, -1}) {
    for (int sy : {+1, -1}) {
      for (int sz : {+1, -1}) {
        orbits.t_states[n++] = Vec3(sx * s3, sy * s3, sz * s3);
      }
    }
  }
  return orbits;
}

std::array<Vec3, 6> qubit_stabilizer_octahedron() {
  return {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0),
          Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
}

}  // namespace stabcert
