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

#include "stabcert/qrac.hpp"

#include <cmath>

namespace stabcert {

namespace {

double real_trace_product(const Mat& a, const Mat& b) {
  return (a * b).trace().real();
}

Mat psd_part(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

// Metric projection onto {M_b >= 0 for all b} intersect {sum_b M_b = I}.
void project_povm_set(std::vector<Mat>& m) {
  const int n = static_cast<int>(m.size());
  const int d = static_cast<int>(m[0].rows());
  std::vector<Mat> p(n, Mat::Zero(d, d)), q(n, Mat::Zero(d, d));
  std::vector<Mat> x = m, y(n);

  for (int iter = 0; iter < 200; ++iter) {
    double shift = 0.0;
    for (int b = 0; b < n; ++b) {
      y[b] = psd_part(x[b] + p[b]);
      p[b] = x[b] + p[b] - y[b];
    }
    Mat defect = -Mat::Identity(d, d);
    for (int b = 0; b < n; ++b) defect += y[b] + q[b];
    defect /= static_cast<double>(n);
    for (int b = 0; b < n; ++b) {
      const Mat next = y[b] + q[b] - defect;
      shift = std::max(shift, (next - x[b]).cwiseAbs().maxCoeff());
      q[b] = y[b] + q[b] - next;
      x[b] = next;
    }
    if (shift < 1e-12) break;
  }
  // End on the PSD side up to tolerance, exactly on the affine side.
  m = x;
}

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

// Haar-ish random unitary from the QR decomposition of a Ginibre matrix.
Mat random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = Cx(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Cx diag = r(i, i);
    q.col(i) *= std::abs(diag) < 1e-15 ? Cx(1, 0) : diag / std::abs(diag);
  }
  return q;
}

}  // namespace

double pd_value(const QracStrategy& strategy) {
  const int d = strategy.d;
  if (static_cast<int>(strategy.states.size()) != d * d ||
      static_cast<int>(strategy.povms[0].size()) != d ||
      static_cast<int>(strategy.povms[1].size()) != d) {
    throw std::invalid_argument("QRAC strategy has wrong shape");
  }
  double total = 0.0;
  for (int x = 0; x < d; ++x) {
    for (int xp = 0; xp < d; ++xp) {
      const Mat& rho = strategy.states[x * d + xp];
      total += real_trace_product(rho, strategy.povms[0][x]) +
               real_trace_product(rho, strategy.povms[1][xp]);
    }
  }
  return total / (2.0 * d * d);
}

QracStrategy mub_quantum_strategy(PrimeDimension dim) {
  const int d = dim.value();
  QracStrategy strategy;
  strategy.d = d;

  for (int b = 0; b < d; ++b) {
    Mat e = Mat::Zero(d, d);
    e(b, b) = 1.0;
    strategy.povms[0].push_back(e);
  }
  for (int b = 0; b < d; ++b) {
    Eigen::VectorXcd f(d);
    for (int k = 0; k < d; ++k) {
      f(k) = root_of_unity(d, static_cast<long long>(b) * k) / std::sqrt(d);
    }
    strategy.povms[1].push_back(f * f.adjoint());
  }
  for (int x = 0; x < d; ++x) {
    for (int xp = 0; xp < d; ++xp) {
      const Mat sum = strategy.povms[0][x] + strategy.povms[1][xp];
      Eigen::SelfAdjointEigenSolver<Mat> es(sum);
      const Eigen::VectorXcd top = es.eigenvectors().col(d - 1);
      strategy.states.push_back(top * top.adjoint());
    }
  }
  return strategy;
}

QracStrategy classical_optimal_strategy(PrimeDimension dim) {
  const int d = dim.value();
  QracStrategy strategy;
  strategy.d = d;
  std::vector<Mat> basis;
  for (int b = 0; b < d; ++b) {
    Mat e = Mat::Zero(d, d);
    e(b, b) = 1.0;
    basis.push_back(e);
  }
  strategy.povms[0] = basis;
  strategy.povms[1] = basis;
  for (int x = 0; x < d; ++x) {
    for (int xp = 0; xp < d; ++xp) strategy.states.push_back(basis[x]);
  }
  return strategy;
}

PovmOptResult povm_optimize(const std::vector<Mat>& targets, double tol,
                            int max_iters, const std::vector<Mat>* warm_start) {
  if (targets.empty()) throw std::invalid_argument("no optimization targets");
  const int n = static_cast<int>(targets.size());
  const int d = static_cast<int>(targets[0].rows());
  for (const Mat& h : targets) {
    if (h.rows() != d || h.cols() != d ||
        (h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
      throw std::invalid_argument("targets must be Hermitian and same size");
    }
  }

  std::vector<Mat> m(n);
  if (warm_start != nullptr && static_cast<int>(warm_start->size()) == n) {
    m = *warm_start;
  } else {
    for (auto& e : m) e = Mat::Identity(d, d) / static_cast<double>(n);
  }

  auto objective = [&](const std::vector<Mat>& eff) {
    double v = 0.0;
    for (int b = 0; b < n; ++b) v += real_trace_product(eff[b], targets[b]);
    return v;
  };
  // Dual feasibility defect of Y = sym(sum_b H_b M_b): the largest
  // eigenvalue of H_b - Y over b.  Tr(Y) equals the primal value, so the
  // duality gap is at most d * max(defect, 0).
  auto certificate_gap = [&](const std::vector<Mat>& eff) {
    Mat y = Mat::Zero(d, d);
    for (int b = 0; b < n; ++b) y += targets[b] * eff[b];
    y = hermitian_part(y);
    double defect = 0.0;
    for (int b = 0; b < n; ++b) {
      Eigen::SelfAdjointEigenSolver<Mat> es(Mat(targets[b] - y),
                                            Eigen::EigenvaluesOnly);
      defect = std::max(defect, es.eigenvalues().maxCoeff());
    }
    return d * std::max(defect, 0.0);
  };

  PovmOptResult result;
  result.effects = m;
  result.objective = objective(m);
  result.gap = certificate_gap(m);
  result.certified = result.gap <= tol;

  double scale = 0.0;
  for (const Mat& h : targets) scale = std::max(scale, h.cwiseAbs().maxCoeff());
  if (scale < 1e-15) {
    result.certified = true;
    result.gap = 0.0;
    return result;
  }

  std::vector<Mat> trial(n);
  for (int iter = 1; iter <= max_iters && !result.certified; ++iter) {
    const double eta = 1.0 / (scale * std::sqrt(static_cast<double>(iter)));
    for (int b = 0; b < n; ++b) trial[b] = m[b] + eta * targets[b];
    project_povm_set(trial);
    m = trial;
    const double value = objective(m);
    if (value > result.objective) {
      result.objective = value;
      result.effects = m;
      result.gap = certificate_gap(m);
      result.certified = result.gap <= tol;
    }
    result.iterations = iter;
  }
  return result;
}

SeesawResult seesaw_stabilizer(PrimeDimension dim, const SeesawOptions& opts) {
  const int d = dim.value();
  const auto vertices = stabilizer_vertices(dim);
  const int nv = static_cast<int>(vertices.size());

  SeesawResult result;
  result.best_value = -1.0;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::mt19937_64 rng(mix_seed(opts.seed ^ hash_name("qrac-seesaw"),
                                 restart));
    QracStrategy strategy;
    strategy.d = d;
    strategy.states.assign(d * d, vertices[0].state.matrix());
    for (int y = 0; y < 2; ++y) {
      const Mat u = random_unitary(d, rng);
      for (int b = 0; b < d; ++b) {
        Mat e = Mat::Zero(d, d);
        e(b, b) = 1.0;
        strategy.povms[y].push_back(u * e * u.adjoint());
      }
    }

    SeesawTrace trace;
    double value = -1.0;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
      // State half-step: the objective is linear in each state, so the
      // best stabilizer state is a vertex.
      for (int x = 0; x < d; ++x) {
        for (int xp = 0; xp < d; ++xp) {
          const Mat h = strategy.povms[0][x] + strategy.povms[1][xp];
          int best_v = 0;
          double best = -std::numeric_limits<double>::infinity();
          for (int v = 0; v < nv; ++v) {
            const double t = real_trace_product(vertices[v].state.matrix(), h);
            if (t > best) {
              best = t;
              best_v = v;
            }
          }
          strategy.states[x * d + xp] = vertices[best_v].state.matrix();
        }
      }
      // Measurement half-steps, one per requested digit; keep the incumbent
      // POVM unless the ascent improves on it.
      for (int y = 0; y < 2; ++y) {
        std::vector<Mat> targets(d, Mat::Zero(d, d));
        for (int x = 0; x < d; ++x) {
          for (int xp = 0; xp < d; ++xp) {
            const int b = (y == 0) ? x : xp;
            targets[b] += strategy.states[x * d + xp];
          }
        }
        const PovmOptResult opt =
            povm_optimize(targets, 1e-6, 120, &strategy.povms[y]);
        double incumbent = 0.0;
        for (int b = 0; b < d; ++b) {
          incumbent += real_trace_product(strategy.povms[y][b], targets[b]);
        }
        if (opt.objective > incumbent) strategy.povms[y] = opt.effects;
      }

      const double next = pd_value(strategy);
      trace.values.push_back(next);
      if (iter > 0 && next - value < opts.tol) {
        trace.converged = true;
        value = next;
        break;
      }
      value = next;
    }
    trace.final = strategy;

    if (value > result.best_value) {
      result.best_value = value;
      result.best = trace;
    }
    result.traces.push_back(std::move(trace));
  }
  return result;
}

}  // namespace stabcert
