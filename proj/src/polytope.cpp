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

#include "stabcert/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace stabcert {

namespace {

// Eigenprojectors of the canonical displacements, indexed [direction][q].
// Reuses the vertex construction: the projector for (direction j, phase q)
// is exactly P_j^q.
std::vector<std::vector<Mat>> canonical_projectors(PrimeDimension dim) {
  const int d = dim.value();
  std::vector<std::vector<Mat>> proj(d + 1, std::vector<Mat>(d));
  const auto vertices = stabilizer_vertices(dim);
  // stabilizer_vertices emits directions in canonical order, q ascending.
  for (int j = 0; j <= d; ++j) {
    for (int q = 0; q < d; ++q) {
      proj[j][q] = vertices[j * d + q].state.matrix();
    }
  }
  return proj;
}

}  // namespace

std::vector<FacetOperator> facet_operators(PrimeDimension dim) {
  const int d = dim.value();
  const auto proj = canonical_projectors(dim);
  const long long count = static_cast<long long>(std::pow(d, d + 1) + 0.5);

  std::vector<FacetOperator> facets;
  facets.reserve(count);
  std::vector<int> q(d + 1, 0);
  for (long long n = 0; n < count; ++n) {
    Mat a = -Mat::Identity(d, d);
    for (int j = 0; j <= d; ++j) a += proj[j][q[j]];
    facets.push_back({a, q});
    // mixed-radix increment
    for (int j = 0; j <= d; ++j) {
      if (++q[j] < d) break;
      q[j] = 0;
    }
  }
  return facets;
}

double min_facet_value(const DensityMatrix& rho) {
  const int d = rho.d();
  const auto proj = canonical_projectors(rho.dim());
  double total = -1.0;
  for (int j = 0; j <= d; ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (int q = 0; q < d; ++q) {
      best = std::min(best, (rho.matrix() * proj[j][q]).trace().real());
    }
    total += best;
  }
  return total;
}

bool is_stabilizer_member(const DensityMatrix& rho) {
  return min_facet_value(rho) >= -kStructTol;
}

namespace {

Vec3 sanitize_bloch(const Vec3& r) {
  const double n = r.norm();
  if (n > 1.0 + 1e-9) {
    throw std::invalid_argument("Bloch vector has norm > 1");
  }
  return n > 1.0 ? Vec3(r / n) : r;
}

}  // namespace

double facet_witness_qubit(const Vec3& r) {
  const Vec3 v = sanitize_bloch(r);
  return 0.5 * std::min(0.0, 1.0 - l1_norm(v));
}

double facet_witness_qubit_min() { return 0.5 * (1.0 - std::sqrt(3.0)); }

Vec3 project_l1_ball(const Vec3& r) {
  if (l1_norm(r) <= 1.0) return r;
  // Fold into the positive orthant and project onto the simplex.
  std::array<double, 3> u = {std::abs(r.x()), std::abs(r.y()),
                             std::abs(r.z())};
  std::array<double, 3> s = u;
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (int k = 0; k < 3; ++k) {
    cumulative += s[k];
    const double candidate = (cumulative - 1.0) / (k + 1);
    if (candidate < s[k]) theta = candidate;
  }
  Vec3 p;
  for (int i = 0; i < 3; ++i) {
    const double mag = std::max(u[i] - theta, 0.0);
    p(i) = std::copysign(mag, r(i));
  }
  return p;
}

NsReport ns_trace_distance_qubit(const Vec3& r) {
  const Vec3 v = sanitize_bloch(r);
  NsReport report;
  report.nearest_point = project_l1_ball(v);
  report.ns = 0.5 * (v - report.nearest_point).norm();
  report.w = facet_witness_qubit(v);
  return report;
}

}  // namespace stabcert
