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

#include "stabcert/sweep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "stabcert/polytope.hpp"

namespace stabcert {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt2 = 1.4142135623730951;

double shell_radius_from_witness(double w) {
  const double w_min = facet_witness_qubit_min();
  if (w > 1e-9 || w < w_min - 1e-9) {
    throw std::invalid_argument("facet-witness value outside [w_T, 0]");
  }
  return std::clamp(1.0 - 2.0 * w, 1.0, kSqrt3);
}

}  // namespace

ShellMax shell_linear_max(const Vec3& v, double c) {
  if (c < 1.0 - 1e-12 || c > kSqrt3 + 1e-12) {
    throw std::invalid_argument("shell radius outside [1, sqrt3]");
  }
  c = std::clamp(c, 1.0, kSqrt3);
  const Vec3 center = Vec3::Constant(c / 3.0);
  const double rho = std::sqrt(std::max(0.0, 1.0 - c * c / 3.0));

  ShellMax best{-std::numeric_limits<double>::infinity(), Vec3::UnitX()};
  for (int pattern = 0; pattern < 8; ++pattern) {
    const Vec3 sign((pattern & 1) ? -1.0 : 1.0, (pattern & 2) ? -1.0 : 1.0,
                    (pattern & 4) ? -1.0 : 1.0);
    const Vec3 w = sign.cwiseProduct(v);

    auto consider = [&](const Vec3& u) {
      if (u.minCoeff() < -1e-12) return;
      const double val = w.dot(u);
      if (val > best.value) best = {val, sign.cwiseProduct(u)};
    };

    // Stationary point on the circle {sum u = c, |u| = 1}.
    Vec3 in_plane = w - Vec3::Constant(w.sum() / 3.0);
    if (in_plane.norm() < 1e-15) in_plane = Vec3(1.0, -1.0, 0.0);
    consider(center + rho * in_plane.normalized());

    // Arc endpoints with one vanishing coordinate (none exist for c > sqrt2).
    if (c <= kSqrt2 + 1e-12) {
      const double h = std::sqrt(std::max(0.0, 2.0 - c * c));
      const double lo = 0.5 * (c - h);
      const double hi = 0.5 * (c + h);
      for (int zero = 0; zero < 3; ++zero) {
        Vec3 u = Vec3::Zero();
        u((zero + 1) % 3) = hi;
        u((zero + 2) % 3) = lo;
        consider(u);
        u((zero + 1) % 3) = lo;
        u((zero + 2) % 3) = hi;
        consider(u);
      }
    }
  }
  return best;
}

std::vector<double> sweep_grid(int points) {
  if (points < 2) throw std::invalid_argument("grid needs >= 2 points");
  const double w_min = facet_witness_qubit_min();
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = w_min * static_cast<double>(i) / (points - 1);
  }
  return grid;
}

std::vector<SweepPoint> s3_sweep_one_free(std::span<const double> w_grid) {
  const double w_min = facet_witness_qubit_min();
  std::vector<SweepPoint> out;
  out.reserve(w_grid.size());
  const Vec3 r1(1, 0, 0), r2(0, 1, 0);
  const Vec3 a = r1 + r2;
  for (double w : w_grid) {
    const double c = shell_radius_from_witness(w);
    const ShellMax sm = shell_linear_max(-a, c);
    SweepPoint pt;
    pt.w = w;
    pt.w_normalized = w / w_min;
    pt.value = std::sqrt(3.0 + 2.0 * sm.value) + kSqrt2;
    pt.argmax = {r1, r2, sm.point};
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<SweepPoint> s3_sweep_all_at_w(std::span<const double> w_grid,
                                          const SweepOptions& opts) {
  const double w_min = facet_witness_qubit_min();
  std::vector<SweepPoint> out;
  out.reserve(w_grid.size());
  for (std::size_t idx = 0; idx < w_grid.size(); ++idx) {
    const double w = w_grid[idx];
    const double c = shell_radius_from_witness(w);

    SweepPoint pt;
    pt.w = w;
    pt.w_normalized = w / w_min;
    pt.value = -std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < opts.restarts; ++restart) {
      std::mt19937_64 rng(
          mix_seed(opts.seed ^ hash_name("s3w-all"), idx * 1009 + restart));
      Vec3 u1 = random_unit_vector(rng);
      Vec3 u2 = random_unit_vector(rng);
      Vec3 r1 = Vec3::UnitX(), r2 = Vec3::UnitY(), r3 = -Vec3::UnitX();
      double value = -std::numeric_limits<double>::infinity();
      for (int iter = 0; iter < opts.max_iters; ++iter) {
        r1 = shell_linear_max(u1 + u2, c).point;
        r2 = shell_linear_max(u1 - u2, c).point;
        r3 = shell_linear_max(-u1, c).point;
        const double next = s3_bloch(r1, r2, r3);
        const Vec3 d1 = r1 + r2 - r3;
        const Vec3 d2 = r1 - r2;
        if (d1.norm() > 1e-14) u1 = d1.normalized();
        if (d2.norm() > 1e-14) u2 = d2.normalized();
        if (next - value < 1e-13 && iter > 2) {
          value = next;
          break;
        }
        value = next;
      }
      if (value > pt.value) {
        pt.value = value;
        pt.argmax = {r1, r2, r3};
      }
    }
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<SweepPoint> tn_sweep(int n_bits, std::span<const double> w_grid,
                                 const SweepOptions& opts) {
  if (n_bits < 2 || n_bits > 4) {
    throw std::invalid_argument("t_N sweep supports N in {2, 3, 4}");
  }
  const double w_min = facet_witness_qubit_min();
  const int n_states = 1 << n_bits;
  const int n_reps = n_states / 2;  // XOR partners are antipodal
  const std::string name = "tnw:" + std::to_string(n_bits);

  auto sign_of = [n_bits](int x, int y) {
    return ((x >> (n_bits - 1 - y)) & 1) ? -1.0 : 1.0;
  };

  std::vector<SweepPoint> out;
  out.reserve(w_grid.size());
  for (std::size_t idx = 0; idx < w_grid.size(); ++idx) {
    const double w = w_grid[idx];
    const double c = shell_radius_from_witness(w);

    SweepPoint pt;
    pt.w = w;
    pt.w_normalized = w / w_min;
    pt.value = -std::numeric_limits<double>::infinity();

    std::vector<Vec3> u(n_bits), r(n_reps), best_r(n_reps);
    for (int restart = 0; restart < opts.restarts; ++restart) {
      std::mt19937_64 rng(
          mix_seed(opts.seed ^ hash_name(name), idx * 1009 + restart));
      for (auto& v : u) v = random_unit_vector(rng);

      double value = -std::numeric_limits<double>::infinity();
      for (int iter = 0; iter < opts.max_iters; ++iter) {
        // Reduced objective: sum_y || sum_{x < 2^{N-1}} (-1)^{x_y} r_x ||.
        for (int x = 0; x < n_reps; ++x) {
          Vec3 v = Vec3::Zero();
          for (int y = 0; y < n_bits; ++y) v += sign_of(x, y) * u[y];
          r[x] = shell_linear_max(v, c).point;
        }
        double next = 0.0;
        for (int y = 0; y < n_bits; ++y) {
          Vec3 sum = Vec3::Zero();
          for (int x = 0; x < n_reps; ++x) sum += sign_of(x, y) * r[x];
          next += sum.norm();
          if (sum.norm() > 1e-14) u[y] = sum.normalized();
        }
        if (next - value < 1e-13 && iter > 2) {
          value = next;
          break;
        }
        value = next;
      }
      if (value > pt.value) {
        pt.value = value;
        best_r = r;
      }
    }

    pt.argmax.resize(n_states);
    for (int x = 0; x < n_reps; ++x) {
      pt.argmax[x] = best_r[x];
      pt.argmax[x ^ (n_states - 1)] = -best_r[x];
    }
    out.push_back(std::move(pt));
  }
  return out;
}

// --- Mixed stabilizer table --------------------------------------------------

namespace {

// The 48 signed permutations act on integer direction sums; patterns whose
// sums agree up to this action reach the same optimum.
struct SignedPerm {
  std::array<int, 3> perm;
  std::array<int, 3> sign;
};

const std::vector<SignedPerm>& octahedral_group() {
  static const std::vector<SignedPerm> group = [] {
    std::vector<SignedPerm> g;
    std::array<int, 3> p = {0, 1, 2};
    std::sort(p.begin(), p.end());
    do {
      for (int bits = 0; bits < 8; ++bits) {
        g.push_back({p,
                     {(bits & 1) ? -1 : 1, (bits & 2) ? -1 : 1,
                      (bits & 4) ? -1 : 1}});
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return g;
  }();
  return group;
}

using SumKey = std::array<std::int8_t, 12>;  // up to 4 directions x 3 coords

struct SumKeyHash {
  std::size_t operator()(const SumKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : k) h = (h ^ static_cast<std::uint8_t>(v)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

SumKey canonical_sum_key(const std::array<std::array<int, 3>, 4>& sums,
                         int n_bits) {
  SumKey best;
  best.fill(127);
  SumKey cur{};
  for (const auto& g : octahedral_group()) {
    for (int y = 0; y < n_bits; ++y) {
      for (int i = 0; i < 3; ++i) {
        cur[y * 3 + i] =
            static_cast<std::int8_t>(g.sign[i] * sums[y][g.perm[i]]);
      }
    }
    for (int i = n_bits * 3; i < 12; ++i) cur[i] = 0;
    if (cur < best) best = cur;
  }
  return best;
}

// max_u (1/2)[sum_y u_y.A_y + sum_{x free} ||V_x(u)||] over unit u_y;
// equals the mixed maximum with the free states eliminated in closed form.
double mixed_value_for_sums(const SumKey& key, int n_bits,
                            const std::vector<int>& free_slots, int restarts,
                            std::uint64_t seed) {
  std::array<Vec3, 4> a;
  for (int y = 0; y < n_bits; ++y) {
    a[y] = Vec3(key[y * 3], key[y * 3 + 1], key[y * 3 + 2]);
  }
  auto sign_of = [n_bits](int x, int y) {
    return ((x >> (n_bits - 1 - y)) & 1) ? -1.0 : 1.0;
  };

  auto f = [&](std::span<const Vec3> u) {
    double total = 0.0;
    for (int y = 0; y < n_bits; ++y) total += u[y].dot(a[y]);
    for (int x : free_slots) {
      Vec3 v = Vec3::Zero();
      for (int y = 0; y < n_bits; ++y) v += sign_of(x, y) * u[y];
      total += v.norm();
    }
    return 0.5 * total;
  };
  auto grad = [&](std::span<const Vec3> u, std::span<Vec3> g) {
    std::array<Vec3, 16> dir;
    int k = 0;
    for (int x : free_slots) {
      Vec3 v = Vec3::Zero();
      for (int y = 0; y < n_bits; ++y) v += sign_of(x, y) * u[y];
      const double n = v.norm();
      dir[k++] = n < 1e-14 ? Vec3::Zero() : Vec3(v / n);
    }
    for (int y = 0; y < n_bits; ++y) {
      Vec3 v = a[y];
      k = 0;
      for (int x : free_slots) v += sign_of(x, y) * dir[k++];
      g[y] = 0.5 * v;
    }
  };

  if (free_slots.empty()) {
    double total = 0.0;
    for (int y = 0; y < n_bits; ++y) total += a[y].norm();
    return 0.5 * total;
  }

  const std::uint64_t key_seed = SumKeyHash{}(key);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Vec3> u(n_bits);
  for (int t = 0; t < restarts; ++t) {
    std::mt19937_64 rng(mix_seed(seed ^ key_seed, t));
    for (auto& v : u) v = random_unit_vector(rng);
    best = std::max(best, sphere_ascent(f, grad, u, 400));
  }
  return best;
}

double mixed_value_for_subset(int n_bits, std::uint32_t subset_mask,
                              const MixedOptions& opts) {
  const int n_states = 1 << n_bits;
  std::vector<int> stab_slots, free_slots;
  for (int x = 0; x < n_states; ++x) {
    ((subset_mask >> x) & 1u ? stab_slots : free_slots).push_back(x);
  }
  const int s = static_cast<int>(stab_slots.size());

  long long total = 1;
  for (int i = 0; i < s; ++i) {
    total *= 6;
    if (total > 10'000'000) {
      throw CapacityError("mixed table enumeration exceeds capacity");
    }
  }

  const auto octa = qubit_stabilizer_octahedron();
  // Integer octahedron directions for exact sum keys.
  std::array<std::array<int, 3>, 6> vert{};
  for (int v = 0; v < 6; ++v) {
    for (int i = 0; i < 3; ++i) {
      vert[v][i] = static_cast<int>(std::lround(octa[v](i)));
    }
  }

  std::unordered_map<SumKey, double, SumKeyHash, std::equal_to<SumKey>> memo;
  std::vector<int> assign(std::max(s, 1), 0);
  std::array<std::array<int, 3>, 4> sums{};

  for (long long cfg = 0; cfg < total; ++cfg) {
    for (auto& row : sums) row = {0, 0, 0};
    for (int k = 0; k < s; ++k) {
      const int x = stab_slots[k];
      const auto& v = vert[assign[k]];
      for (int y = 0; y < n_bits; ++y) {
        const int sgn = ((x >> (n_bits - 1 - y)) & 1) ? -1 : 1;
        for (int i = 0; i < 3; ++i) sums[y][i] += sgn * v[i];
      }
    }
    memo.emplace(canonical_sum_key(sums, n_bits), -1.0);
    for (int k = s - 1; k >= 0; --k) {
      if (++assign[k] < 6) break;
      assign[k] = 0;
    }
  }

  // Coarse pass over distinct direction-sum patterns, then refinement of
  // the leaders.
  std::vector<std::pair<double, const SumKey*>> scored;
  scored.reserve(memo.size());
  for (auto& [key, value] : memo) {
    value = mixed_value_for_sums(key, n_bits, free_slots, opts.restarts,
                                 opts.seed);
    scored.emplace_back(value, &key);
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  double best = scored.empty() ? 0.0 : scored.front().first;
  const int refine = std::min<std::size_t>(opts.refine_top, scored.size());
  for (int i = 0; i < refine; ++i) {
    best = std::max(best, mixed_value_for_sums(*scored[i].second, n_bits,
                                               free_slots,
                                               opts.refine_restarts,
                                               opts.seed ^ 0x5eedULL));
  }
  return best;
}

// Subsets of slots are equivalent under bit permutations and XOR
// translations of the bit strings.
std::uint32_t canonical_subset(int n_bits, std::uint32_t mask) {
  const int n_states = 1 << n_bits;
  std::array<int, 4> p = {0, 1, 2, 3};
  std::uint32_t best = mask;
  std::sort(p.begin(), p.begin() + n_bits);
  do {
    for (int z = 0; z < n_states; ++z) {
      std::uint32_t m = 0;
      for (int x = 0; x < n_states; ++x) {
        if (!((mask >> x) & 1u)) continue;
        int xx = 0;
        for (int y = 0; y < n_bits; ++y) {
          if ((x >> y) & 1) xx |= 1 << p[y];
        }
        m |= 1u << (xx ^ z);
      }
      best = std::min(best, m);
    }
  } while (std::next_permutation(p.begin(), p.begin() + n_bits));
  return best;
}

}  // namespace

MixedStabRow mixed_stab_table(int n_bits, int s, const MixedOptions& opts) {
  if (n_bits != 3 && n_bits != 4) {
    throw std::invalid_argument("mixed table supports N in {3, 4}");
  }
  const int n_states = 1 << n_bits;
  if (s < 0 || s > n_states) {
    throw std::invalid_argument("stabilizer count out of range");
  }
  if (s > 8) {
    throw CapacityError("mixed table enumeration exceeds capacity (s > 8)");
  }

  MixedStabRow row;
  row.n_bits = n_bits;
  row.s = s;
  row.exact = (s == n_states);

  if (s == 0) {
    OptimOptions qopts;
    qopts.seed = opts.seed;
    qopts.restarts = 200;
    const BoundReport q = quantum_bound_qubit(BlochWitness::tn(n_bits), qopts);
    row.value = row.lex_value = q.value;
    if (!q.argmax.empty()) row.argmax = q.argmax.front();
    return row;
  }

  const std::uint32_t lex_mask = (s == 32 ? ~0u : ((1u << s) - 1u));
  row.lex_value = mixed_value_for_subset(n_bits, lex_mask, opts);
  row.value = row.lex_value;

  if (opts.max_over_subsets && s < n_states) {
    std::vector<std::uint32_t> reps;
    const std::uint32_t limit = (n_states == 32) ? 0xffffffffu
                                                 : ((1u << n_states) - 1u);
    for (std::uint32_t mask = 0; mask <= limit; ++mask) {
      if (std::popcount(mask) != s) continue;
      if (canonical_subset(n_bits, mask) == mask) reps.push_back(mask);
      if (mask == limit) break;
    }
    for (std::uint32_t mask : reps) {
      if (mask == canonical_subset(n_bits, lex_mask)) continue;
      const double v = mixed_value_for_subset(n_bits, mask, opts);
      if (std::abs(v - row.lex_value) > 1e-6) row.subset_dependent = true;
      row.value = std::max(row.value, v);
    }
  }
  return row;
}

}  // namespace stabcert
