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

#include "stabcert/optim.hpp"

#include <cmath>

namespace stabcert {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

Vec3 random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(gauss(rng), gauss(rng), gauss(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

std::vector<Vec3> sphere_grid(int n) {
  std::vector<Vec3> pts;
  pts.reserve(n);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

double sphere_ascent(
    const std::function<double(std::span<const Vec3>)>& f,
    const std::function<void(std::span<const Vec3>, std::span<Vec3>)>& grad,
    std::span<Vec3> x, int max_iters, double step_tol) {
  const int n = static_cast<int>(x.size());
  std::vector<Vec3> g(n), trial(n);
  double fx = f(x);
  double eta = 1.0;

  for (int iter = 0; iter < max_iters; ++iter) {
    grad(x, g);
    // Riemannian gradient: project out the radial component.
    double gnorm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      g[i] -= g[i].dot(x[i]) * x[i];
      gnorm2 += g[i].squaredNorm();
    }
    if (gnorm2 < 1e-22) break;

    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (int i = 0; i < n; ++i) {
        trial[i] = (x[i] + eta * g[i]).normalized();
      }
      const double ft = f(trial);
      if (ft >= fx + 1e-4 * eta * gnorm2) {
        const double gain = ft - fx;
        for (int i = 0; i < n; ++i) x[i] = trial[i];
        fx = ft;
        accepted = true;
        eta *= 1.5;
        if (gain < step_tol) return fx;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
  }
  return fx;
}

}  // namespace stabcert
