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

#ifndef STABCERT_OPTIM_HPP
#define STABCERT_OPTIM_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "stabcert/qudit.hpp"

namespace stabcert {

struct OptimOptions {
  std::uint64_t seed = 1;
  int restarts = 200;
  double tol = 1e-9;
  int max_iters = 400;
};

// splitmix64 step; used to derive independent per-restart seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t hash_name(std::string_view name);

Vec3 random_unit_vector(std::mt19937_64& rng);

// Deterministic, roughly uniform sphere covering (Fibonacci lattice).
std::vector<Vec3> sphere_grid(int n);

// Maximizes f over a product of unit spheres by projected gradient ascent
// with Armijo backtracking.  grad fills one (sub)gradient per vector; the
// zero subgradient is used at norm kinks.  Returns the final objective.
double sphere_ascent(
    const std::function<double(std::span<const Vec3>)>& f,
    const std::function<void(std::span<const Vec3>, std::span<Vec3>)>& grad,
    std::span<Vec3> x, int max_iters = 400, double step_tol = 1e-13);

}  // namespace stabcert

#endif  // STABCERT_OPTIM_HPP
