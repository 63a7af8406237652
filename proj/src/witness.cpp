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

#include "stabcert/witness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stabcert {

namespace {

constexpr long long kEnumerationCap = 10'000'000;
constexpr double kTieTol = 1e-9;
constexpr int kMaxArgmaxConfigs = 64;

Vec3 safe_normalized(const Vec3& v) {
  const double n = v.norm();
  return n < 1e-14 ? Vec3::Zero() : Vec3(v / n);
}

}  // namespace

Behavior::Behavior(int nx, int ny, int nb, std::vector<double> probabilities)
    : nx_(nx), ny_(ny), nb_(nb), p_(std::move(probabilities)) {
  if (nx < 1 || ny < 1 || nb < 1 ||
      p_.size() != static_cast<std::size_t>(nx) * ny * nb) {
    throw std::invalid_argument("behavior table has wrong shape");
  }
  for (double v : p_) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
      throw std::invalid_argument("behavior entry outside [0, 1]");
    }
  }
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      double sum = 0.0;
      for (int b = 0; b < nb; ++b) sum += p(b, x, y);
      if (std::abs(sum - 1.0) > 1e-10) {
        throw std::invalid_argument("behavior rows must sum to 1");
      }
    }
  }
}

WitnessSpec::WitnessSpec(int d, int nx, int ny, int nb,
                         std::vector<double> coeffs)
    : d_(d), nx_(nx), ny_(ny), nb_(nb), w_(std::move(coeffs)) {
  if (d < 2 || nx < 1 || ny < 1 || nb < 1 ||
      w_.size() != static_cast<std::size_t>(nx) * ny * nb) {
    throw std::invalid_argument("witness tensor has wrong shape");
  }
  for (double v : w_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("witness coefficients must be finite");
    }
  }
}

Povm::Povm(std::vector<Mat> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw std::invalid_argument("POVM has no effects");
  d_ = static_cast<int>(effects_[0].rows());
  Mat sum = Mat::Zero(d_, d_);
  for (const Mat& e : effects_) {
    if (e.rows() != d_ || e.cols() != d_) {
      throw std::invalid_argument("POVM effects have mixed shapes");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(
        Mat(0.5 * (e + e.adjoint())), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kStructTol) {
      throw std::invalid_argument("POVM effect is not PSD");
    }
    sum += e;
  }
  if ((sum - Mat::Identity(d_, d_)).cwiseAbs().maxCoeff() > kStructTol) {
    throw std::invalid_argument("POVM effects do not sum to identity");
  }
}

Povm qubit_projective_povm(const Vec3& s) {
  const Vec3 u = s.normalized();
  Mat plus(2, 2), minus(2, 2);
  plus << Cx(1.0 + u.z(), 0.0), Cx(u.x(), -u.y()), Cx(u.x(), u.y()),
      Cx(1.0 - u.z(), 0.0);
  plus *= 0.5;
  minus = Mat::Identity(2, 2) - plus;
  return Povm({plus, minus});
}

Behavior behavior_from(const std::vector<DensityMatrix>& states,
                       const std::vector<Povm>& povms) {
  if (states.empty() || povms.empty()) {
    throw std::invalid_argument("behavior_from needs states and POVMs");
  }
  const int d = states[0].d();
  const int nb = povms[0].outcomes();
  for (const auto& s : states) {
    if (s.d() != d) throw std::invalid_argument("state dimension mismatch");
  }
  for (const auto& m : povms) {
    if (m.d() != d) throw std::invalid_argument("POVM dimension mismatch");
    if (m.outcomes() != nb) {
      throw std::invalid_argument("POVMs have different outcome counts");
    }
  }
  const int nx = static_cast<int>(states.size());
  const int ny = static_cast<int>(povms.size());
  std::vector<double> p(static_cast<std::size_t>(nx) * ny * nb);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      for (int b = 0; b < nb; ++b) {
        const Cx tr =
            (states[x].matrix() * povms[y].effects()[b]).trace();
        p[(static_cast<std::size_t>(x) * ny + y) * nb + b] =
            std::clamp(tr.real(), 0.0, 1.0);
      }
    }
  }
  return Behavior(nx, ny, nb, std::move(p));
}

double evaluate(const WitnessSpec& spec, const Behavior& behavior) {
  if (spec.nx() != behavior.nx() || spec.ny() != behavior.ny() ||
      spec.nb() != behavior.nb()) {
    throw std::invalid_argument("witness/behavior shape mismatch");
  }
  double value = 0.0;
  for (int x = 0; x < spec.nx(); ++x) {
    for (int y = 0; y < spec.ny(); ++y) {
      for (int b = 0; b < spec.nb(); ++b) {
        value += spec.w(b, x, y) * behavior.p(b, x, y);
      }
    }
  }
  return value;
}

namespace {

// E_xy coefficient c applied as W^0 = c, W^1 = -c.
void add_correlator(std::vector<double>& w, int ny, int x, int y, double c) {
  w[(static_cast<std::size_t>(x) * ny + y) * 2 + 0] += c;
  w[(static_cast<std::size_t>(x) * ny + y) * 2 + 1] -= c;
}

}  // namespace

WitnessSpec s3_spec() {
  std::vector<double> w(3 * 2 * 2, 0.0);
  add_correlator(w, 2, 0, 0, 1.0);   // E11
  add_correlator(w, 2, 0, 1, 1.0);   // E12
  add_correlator(w, 2, 1, 0, 1.0);   // E21
  add_correlator(w, 2, 1, 1, -1.0);  // E22
  add_correlator(w, 2, 2, 0, -1.0);  // E31
  return WitnessSpec(2, 3, 2, 2, std::move(w));
}

WitnessSpec s3_tilted_spec(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("tilt parameter must be in [0, 1]");
  }
  std::vector<double> w(3 * 2 * 2, 0.0);
  add_correlator(w, 2, 0, 0, 2.0 * t);
  add_correlator(w, 2, 1, 0, 2.0 * t);
  add_correlator(w, 2, 2, 0, -2.0 * t);
  add_correlator(w, 2, 0, 1, 2.0 * (1.0 - t));
  add_correlator(w, 2, 1, 1, -2.0 * (1.0 - t));
  return WitnessSpec(2, 3, 2, 2, std::move(w));
}

namespace {

// x_y for bit string index x in [0, 2^N), y in [0, N), MSB first.
inline int bit_of(int x, int n_bits, int y) {
  return (x >> (n_bits - 1 - y)) & 1;
}

}  // namespace

WitnessSpec tn_spec(int n_bits) {
  if (n_bits < 2 || n_bits > 20) {
    throw std::invalid_argument("T_N needs 2 <= N <= 20");
  }
  const int nx = 1 << n_bits;
  std::vector<double> w(static_cast<std::size_t>(nx) * n_bits * 2, 0.0);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < n_bits; ++y) {
      w[(static_cast<std::size_t>(x) * n_bits + y) * 2 + 0] =
          bit_of(x, n_bits, y) ? -1.0 : 1.0;
    }
  }
  return WitnessSpec(2, nx, n_bits, 2, std::move(w));
}

double s3_bloch(const Vec3& r1, const Vec3& r2, const Vec3& r3) {
  return (r1 + r2 - r3).norm() + (r1 - r2).norm();
}

double s3_tilted_bloch(double t, const Vec3& r1, const Vec3& r2,
                       const Vec3& r3) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("tilt parameter must be in [0, 1]");
  }
  return 2.0 * t * (r1 + r2 - r3).norm() + 2.0 * (1.0 - t) * (r1 - r2).norm();
}

double tn_bloch(int n_bits, std::span<const Vec3> r) {
  if (n_bits < 2 || static_cast<int>(r.size()) != (1 << n_bits)) {
    throw std::invalid_argument("T_N expects 2^N Bloch vectors");
  }
  double total = 0.0;
  for (int y = 0; y < n_bits; ++y) {
    Vec3 sum = Vec3::Zero();
    for (int x = 0; x < static_cast<int>(r.size()); ++x) {
      sum += bit_of(x, n_bits, y) ? -r[x] : r[x];
    }
    total += sum.norm();
  }
  return 0.5 * total;
}

BlochWitness::BlochWitness(Kind kind, double t, int n_bits)
    : kind_(kind), t_(t), n_bits_(n_bits) {
  switch (kind_) {
    case Kind::kS3:
      n_slots_ = 3;
      id_ = "s3";
      break;
    case Kind::kTilted:
      n_slots_ = 3;
      id_ = "tilted:" + std::to_string(t);
      break;
    case Kind::kTn:
      n_slots_ = 1 << n_bits_;
      id_ = "tn:" + std::to_string(n_bits_);
      break;
  }
}

BlochWitness BlochWitness::s3() { return BlochWitness(Kind::kS3, 0.5, 0); }

BlochWitness BlochWitness::s3_tilted(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("tilt parameter must be in [0, 1]");
  }
  return BlochWitness(Kind::kTilted, t, 0);
}

BlochWitness BlochWitness::tn(int n_bits) {
  if (n_bits < 2 || n_bits > 20) {
    throw std::invalid_argument("T_N needs 2 <= N <= 20");
  }
  return BlochWitness(Kind::kTn, 0.0, n_bits);
}

int BlochWitness::antipode(int slot) const {
  if (kind_ != Kind::kTn) return -1;
  return slot ^ (n_slots_ - 1);  // bitwise complement of the bit string
}

double BlochWitness::value(std::span<const Vec3> r) const {
  switch (kind_) {
    case Kind::kS3:
      return s3_bloch(r[0], r[1], r[2]);
    case Kind::kTilted:
      return s3_tilted_bloch(t_, r[0], r[1], r[2]);
    case Kind::kTn:
      return tn_bloch(n_bits_, r);
  }
  return 0.0;
}

void BlochWitness::gradient(std::span<const Vec3> r,
                            std::span<Vec3> g) const {
  switch (kind_) {
    case Kind::kS3:
    case Kind::kTilted: {
      const double a = kind_ == Kind::kS3 ? 1.0 : 2.0 * t_;
      const double b = kind_ == Kind::kS3 ? 1.0 : 2.0 * (1.0 - t_);
      const Vec3 u = safe_normalized(r[0] + r[1] - r[2]);
      const Vec3 v = safe_normalized(r[0] - r[1]);
      g[0] = a * u + b * v;
      g[1] = a * u - b * v;
      g[2] = -a * u;
      return;
    }
    case Kind::kTn: {
      std::array<Vec3, 20> dir;
      for (int y = 0; y < n_bits_; ++y) {
        Vec3 sum = Vec3::Zero();
        for (int x = 0; x < n_slots_; ++x) {
          sum += bit_of(x, n_bits_, y) ? -r[x] : r[x];
        }
        dir[y] = safe_normalized(sum);
      }
      for (int x = 0; x < n_slots_; ++x) {
        Vec3 v = Vec3::Zero();
        for (int y = 0; y < n_bits_; ++y) {
          v += bit_of(x, n_bits_, y) ? -dir[y] : dir[y];
        }
        g[x] = 0.5 * v;
      }
      return;
    }
  }
}

namespace {

const char* kOctahedronLabels[6] = {"X+", "X-", "Y+", "Y-", "Z+", "Z-"};

struct SlotStructure {
  std::vector<int> stab_reps;       // enumerated slots
  std::vector<int> free_reps;       // continuously optimized slots
  std::vector<int> mirror;          // mirror[i] = slot forced to -r_i, or -1
  int n_stab = 0;
};

// Splits slots into enumerated and free parts and applies the antipodal
// reduction when every pair stays on one side of the split.
SlotStructure analyze_slots(const BlochWitness& w, int n_free) {
  const int n = w.n_slots();
  if (n_free < 0 || n_free > n) {
    throw std::invalid_argument("invalid free slot count");
  }
  SlotStructure s;
  s.n_stab = n - n_free;
  s.mirror.assign(n, -1);

  bool reducible = true;
  for (int i = 0; i < n; ++i) {
    const int j = w.antipode(i);
    if (j >= 0 && ((i < s.n_stab) != (j < s.n_stab))) reducible = false;
  }
  for (int i = 0; i < n; ++i) {
    const int j = w.antipode(i);
    const bool is_rep = !reducible || j < 0 || j > i;
    if (is_rep) {
      (i < s.n_stab ? s.stab_reps : s.free_reps).push_back(i);
      if (reducible && j > i) s.mirror[i] = j;
    }
  }
  return s;
}

struct SearchAccumulator {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<Vec3>> argmax;
  std::vector<std::string> labels;

  void offer(double value, const std::vector<Vec3>& config,
             std::string label) {
    if (value > best + kTieTol) {
      best = value;
      argmax.clear();
      labels.clear();
    }
    if (value >= best - kTieTol &&
        static_cast<int>(argmax.size()) < kMaxArgmaxConfigs) {
      argmax.push_back(config);
      labels.push_back(std::move(label));
    }
  }
};

std::string describe_config(const std::vector<Vec3>& r,
                            std::span<const Vec3> vertex_set,
                            std::span<const char* const> vertex_labels) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) os << ",";
    bool named = false;
    for (std::size_t v = 0; v < vertex_set.size(); ++v) {
      if ((r[i] - vertex_set[v]).norm() < 1e-9) {
        os << vertex_labels[v];
        named = true;
        break;
      }
    }
    if (!named) {
      os << "(" << r[i].x() << " " << r[i].y() << " " << r[i].z() << ")";
    }
  }
  return os.str();
}

// Maximizes the witness over the free slots (stab part fixed in r).
double optimize_free_slots(const BlochWitness& w, const SlotStructure& s,
                           std::vector<Vec3>& r, const OptimOptions& opts,
                           std::uint64_t cfg_salt) {
  const int nf = static_cast<int>(s.free_reps.size());
  const int n = w.n_slots();
  std::vector<Vec3> full_grad(n);

  auto expand = [&](std::span<const Vec3> sub) {
    for (int k = 0; k < nf; ++k) {
      const int i = s.free_reps[k];
      r[i] = sub[k];
      if (s.mirror[i] >= 0) r[s.mirror[i]] = -sub[k];
    }
  };
  auto f = [&](std::span<const Vec3> sub) {
    expand(sub);
    return w.value(r);
  };
  auto g = [&](std::span<const Vec3> sub, std::span<Vec3> out) {
    expand(sub);
    w.gradient(r, full_grad);
    for (int k = 0; k < nf; ++k) {
      const int i = s.free_reps[k];
      out[k] = full_grad[i];
      if (s.mirror[i] >= 0) out[k] -= full_grad[s.mirror[i]];
    }
  };

  const int restarts = std::max(8, opts.restarts / 8);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Vec3> sub(nf), best_sub(nf);
  for (int t = 0; t < restarts; ++t) {
    std::mt19937_64 rng(mix_seed(opts.seed ^ hash_name(w.id()),
                                 cfg_salt * 131 + t));
    for (auto& v : sub) v = random_unit_vector(rng);
    const double val = sphere_ascent(f, g, sub, opts.max_iters);
    if (val > best) {
      best = val;
      best_sub = sub;
    }
  }
  expand(best_sub);
  return best;
}

BoundReport vertex_search(const BlochWitness& w,
                          std::span<const Vec3> vertex_set,
                          std::span<const char* const> vertex_labels,
                          int n_free, const OptimOptions& opts) {
  const SlotStructure s = analyze_slots(w, n_free);
  const int n = w.n_slots();
  const int nv = static_cast<int>(vertex_set.size());
  const int ns = static_cast<int>(s.stab_reps.size());

  long long total = 1;
  for (int i = 0; i < ns; ++i) {
    total *= nv;
    if (total > kEnumerationCap) {
      throw CapacityError("vertex enumeration exceeds capacity: " +
                          std::to_string(nv) + "^" + std::to_string(ns));
    }
  }

  SearchAccumulator acc;
  std::vector<Vec3> r(n, Vec3::Zero());
  std::vector<int> digits(std::max(ns, 1), 0);
  for (long long cfg = 0; cfg < total; ++cfg) {
    for (int k = 0; k < ns; ++k) {
      const int i = s.stab_reps[k];
      r[i] = vertex_set[digits[k]];
      if (s.mirror[i] >= 0) r[s.mirror[i]] = -vertex_set[digits[k]];
    }
    double value;
    if (s.free_reps.empty()) {
      value = w.value(r);
    } else {
      value = optimize_free_slots(w, s, r, opts, static_cast<std::uint64_t>(cfg));
    }
    if (value >= acc.best - kTieTol) {
      acc.offer(value, r, describe_config(r, vertex_set, vertex_labels));
    }

    for (int k = ns - 1; k >= 0; --k) {
      if (++digits[k] < nv) break;
      digits[k] = 0;
    }
  }

  BoundReport report;
  report.value = acc.best;
  report.exact = s.free_reps.empty();
  report.argmax = std::move(acc.argmax);
  report.argmax_labels = std::move(acc.labels);
  report.configurations = total;
  report.restarts = s.free_reps.empty() ? 0 : std::max(8, opts.restarts / 8);
  report.tol = opts.tol;
  report.seed = opts.seed;
  return report;
}

}  // namespace

BoundReport classical_bound(const WitnessSpec& spec) {
  const int d = spec.d();
  const int nx = spec.nx();
  const int ny = spec.ny();
  const int nb = spec.nb();

  long long total = 1;
  for (int x = 0; x < nx; ++x) {
    total *= d;
    if (total > kEnumerationCap) {
      throw CapacityError("classical enumeration exceeds capacity: " +
                          std::to_string(d) + "^" + std::to_string(nx));
    }
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_m;
  std::vector<int> m(nx, 0);
  std::vector<double> acc(static_cast<std::size_t>(d) * ny * nb);
  for (long long n = 0; n < total; ++n) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) {
        for (int b = 0; b < nb; ++b) {
          acc[(static_cast<std::size_t>(m[x]) * ny + y) * nb + b] +=
              spec.w(b, x, y);
        }
      }
    }
    // The optimal deterministic decoding picks the best outcome per
    // (message, y) independently.
    double value = 0.0;
    for (int mm = 0; mm < d; ++mm) {
      for (int y = 0; y < ny; ++y) {
        double top = -std::numeric_limits<double>::infinity();
        for (int b = 0; b < nb; ++b) {
          top = std::max(top,
                         acc[(static_cast<std::size_t>(mm) * ny + y) * nb + b]);
        }
        value += top;
      }
    }
    if (value > best) {
      best = value;
      best_m = m;
    }
    for (int x = nx - 1; x >= 0; --x) {
      if (++m[x] < d) break;
      m[x] = 0;
    }
  }

  BoundReport report;
  report.scenario = Scenario::kClassical;
  report.value = best;
  report.exact = true;
  report.configurations = total;
  std::ostringstream os;
  os << "encoding m=[";
  for (std::size_t i = 0; i < best_m.size(); ++i) {
    os << (i ? "," : "") << best_m[i];
  }
  os << "]";
  report.argmax_labels.push_back(os.str());
  return report;
}

BoundReport classical_bound_qubit(const BlochWitness& witness) {
  static const Vec3 classical_vertices[2] = {Vec3(0, 0, 1), Vec3(0, 0, -1)};
  static const char* classical_labels[2] = {"Z+", "Z-"};
  OptimOptions opts;  // no continuous part
  BoundReport report = vertex_search(witness, classical_vertices,
                                     classical_labels, 0, opts);
  report.scenario = Scenario::kClassical;
  report.exact = true;
  return report;
}

BoundReport stabilizer_bound_qubit(const BlochWitness& witness, int n_free,
                                   const OptimOptions& opts) {
  const auto octa = qubit_stabilizer_octahedron();
  BoundReport report =
      vertex_search(witness, octa, kOctahedronLabels, n_free, opts);
  report.scenario = n_free == 0 ? Scenario::kStabilizer : Scenario::kKStab;
  report.stabilizer_slots = witness.n_slots() - n_free;
  return report;
}

BoundReport stabilizer_bound_heuristic(const BlochWitness& witness,
                                       const OptimOptions& opts) {
  const auto octa = qubit_stabilizer_octahedron();
  const SlotStructure s = analyze_slots(witness, 0);
  const int n = witness.n_slots();
  const int ns = static_cast<int>(s.stab_reps.size());

  SearchAccumulator acc;
  std::vector<Vec3> r(n);
  std::vector<int> assign(ns);
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::mt19937_64 rng(mix_seed(opts.seed ^ hash_name(witness.id()),
                                 0xabcd0000ULL + restart));
    std::uniform_int_distribution<int> pick(0, 5);
    for (int k = 0; k < ns; ++k) assign[k] = pick(rng);

    auto apply = [&]() {
      for (int k = 0; k < ns; ++k) {
        const int i = s.stab_reps[k];
        r[i] = octa[assign[k]];
        if (s.mirror[i] >= 0) r[s.mirror[i]] = -octa[assign[k]];
      }
    };
    apply();
    double value = witness.value(r);

    // Best-improvement sweeps over single-slot vertex changes.
    bool improved = true;
    while (improved) {
      improved = false;
      for (int k = 0; k < ns; ++k) {
        const int old = assign[k];
        int best_v = old;
        for (int v = 0; v < 6; ++v) {
          if (v == old) continue;
          assign[k] = v;
          apply();
          const double trial = witness.value(r);
          if (trial > value + 1e-12) {
            value = trial;
            best_v = v;
          }
        }
        assign[k] = best_v;
        improved = improved || best_v != old;
      }
    }
    apply();
    acc.offer(value, r, describe_config(r, octa, kOctahedronLabels));
  }

  BoundReport report;
  report.scenario = Scenario::kStabilizer;
  report.stabilizer_slots = n;
  report.value = acc.best;
  report.exact = false;
  report.argmax = std::move(acc.argmax);
  report.argmax_labels = std::move(acc.labels);
  report.restarts = opts.restarts;
  report.tol = opts.tol;
  report.seed = opts.seed;
  return report;
}

BoundReport quantum_bound_qubit(const BlochWitness& witness,
                                const OptimOptions& opts) {
  const SlotStructure s = analyze_slots(witness, witness.n_slots());
  const int n = witness.n_slots();
  const int nf = static_cast<int>(s.free_reps.size());

  std::vector<Vec3> r(n), full_grad(n), sub(nf);
  auto expand = [&](std::span<const Vec3> x) {
    for (int k = 0; k < nf; ++k) {
      const int i = s.free_reps[k];
      r[i] = x[k];
      if (s.mirror[i] >= 0) r[s.mirror[i]] = -x[k];
    }
  };
  auto f = [&](std::span<const Vec3> x) {
    expand(x);
    return witness.value(r);
  };
  auto g = [&](std::span<const Vec3> x, std::span<Vec3> out) {
    expand(x);
    witness.gradient(r, full_grad);
    for (int k = 0; k < nf; ++k) {
      const int i = s.free_reps[k];
      out[k] = full_grad[i];
      if (s.mirror[i] >= 0) out[k] -= full_grad[s.mirror[i]];
    }
  };

  SearchAccumulator acc;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::mt19937_64 rng(
        mix_seed(opts.seed ^ hash_name(witness.id()), restart));
    for (auto& v : sub) v = random_unit_vector(rng);
    const double value = sphere_ascent(f, g, sub, opts.max_iters);
    expand(sub);
    acc.offer(value, r, "");
  }

  BoundReport report;
  report.scenario = Scenario::kQuantum;
  report.value = acc.best;
  report.exact = false;
  report.argmax = std::move(acc.argmax);
  report.restarts = opts.restarts;
  report.tol = opts.tol;
  report.seed = opts.seed;
  return report;
}

TiltedBounds tilted_bounds(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("tilt parameter must be in [0, 1]");
  }
  const double s2 = std::sqrt(2.0);
  const double s5 = std::sqrt(5.0);
  TiltedBounds b;
  b.classical = std::max(4.0 - 2.0 * t, 6.0 * t);
  b.stab = std::max({6.0 * t, 4.0 - 2.0 * t,
                     2.0 * t * s5 + 2.0 * (1.0 - t) * s2});
  b.two_stab = std::max({6.0 * t, 4.0 - 2.0 * t, 2.0 * t + 2.0 * s2});
  b.quantum = 2.0 * t + 4.0 * std::sqrt(t * t + (1.0 - t) * (1.0 - t));
  return b;
}

std::pair<double, double> tilted_stab_breakpoints() {
  const double s2 = std::sqrt(2.0);
  const double s5 = std::sqrt(5.0);
  return {(s2 - 2.0) / (s2 - s5 - 1.0), s2 / (3.0 + s2 - s5)};
}

Certification certify(double value, const BoundSet& bounds) {
  const double slack = 1e-9;
  const double two_stab = bounds.two_stab.value_or(bounds.quantum);
  if (bounds.classical > bounds.stab + slack ||
      bounds.stab > two_stab + slack || two_stab > bounds.quantum + slack) {
    throw std::logic_error("inconsistent bound ordering");
  }
  if (value <= bounds.stab) return Certification::kNone;
  if (bounds.two_stab.has_value() && value > *bounds.two_stab) {
    return Certification::kAtLeastTwoNs;
  }
  return Certification::kAtLeastOneNs;
}

double s3_two_stab_value(const Vec3& r) {
  const auto octa = qubit_stabilizer_octahedron();
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      best = std::max(best, s3_bloch(octa[i], octa[j], r));
    }
  }
  return best;
}

namespace {

// One refinement step: for the active vertex pair, the best third state is
// the antipode of the normalized pair sum.
Vec3 refine_selftest_point(const Vec3& start) {
  const auto octa = qubit_stabilizer_octahedron();
  Vec3 r = start;
  for (int iter = 0; iter < 30; ++iter) {
    double best = -std::numeric_limits<double>::infinity();
    Vec3 sum = Vec3::Zero();
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        const double v = s3_bloch(octa[i], octa[j], r);
        if (v > best) {
          best = v;
          sum = octa[i] + octa[j];
        }
      }
    }
    if (sum.norm() < 1e-12) break;
    const Vec3 next = -sum.normalized();
    if ((next - r).norm() < 1e-15) break;
    r = next;
  }
  return r;
}

bool lex_less(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(a(i) - b(i)) > 1e-9) return a(i) < b(i);
  }
  return false;
}

}  // namespace

SelftestResult s3_h_selftest(int grid_points) {
  SelftestResult result;
  result.grid_points = grid_points;
  const double target = 1.0 + 2.0 * std::sqrt(2.0);
  result.scan_threshold = target - 1e-3;

  std::vector<Vec3> candidates;
  for (const Vec3& r : sphere_grid(grid_points)) {
    if (s3_two_stab_value(r) >= result.scan_threshold) candidates.push_back(r);
  }
  for (const Vec3& c : candidates) {
    const Vec3 refined = refine_selftest_point(c);
    bool known = false;
    for (const Vec3& m : result.maximizers) {
      if ((m - refined).norm() < 1e-6) {
        known = true;
        break;
      }
    }
    if (!known) result.maximizers.push_back(refined);
  }
  std::sort(result.maximizers.begin(), result.maximizers.end(), lex_less);
  result.values.reserve(result.maximizers.size());
  for (const Vec3& m : result.maximizers) {
    result.values.push_back(s3_two_stab_value(m));
  }
  return result;
}

void s3_optimal_ensemble(std::vector<DensityMatrix>& states,
                         std::vector<Povm>& povms) {
  const double s2 = std::sqrt(2.0);
  const Vec3 r1(1, 0, 0), r2(0, 1, 0);
  const Vec3 r3 = -(r1 + r2) / s2;
  states.clear();
  states.push_back(qubit_state(r1));
  states.push_back(qubit_state(r2));
  states.push_back(qubit_state(r3));
  povms.clear();
  povms.push_back(qubit_projective_povm((r1 + r2) / s2));
  povms.push_back(qubit_projective_povm((r1 - r2) / s2));
}

}  // namespace stabcert
