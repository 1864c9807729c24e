// Copyright 2026 The fga-vqe Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fga {

struct OptimizerConfig {
    int max_evals = 0;        // 0 lets the caller pick a default (50 * qubits)
    double rho_begin = 0.5;   // initial trust radius, radians
    double rho_end = 1e-4;    // final trust radius, radians
    std::uint64_t seed = 0;   // unused: the minimizer is deterministic

    void validate() const {
        if (max_evals < 1)
            throw std::invalid_argument("optimizer: max_evals must be >= 1");
        if (!(rho_begin > rho_end) || !(rho_end > 0.0))
            throw std::invalid_argument(
                "optimizer: need rho_begin > rho_end > 0");
    }
};

struct EvalRecord {
    std::vector<double> theta;
    double cost = 0.0;
};

struct MinimizeResult {
    std::vector<double> theta_best;
    double cost_best = 0.0;
    int evals_used = 0;
    std::vector<EvalRecord> eval_log;  // every evaluation, in call order
};

namespace detail {

/// Gauss-Jordan inverse with partial pivoting; nullopt when singular.
inline std::optional<std::vector<std::vector<double>>> invert_matrix(
    const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<double>> a(m);
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::nullopt;
    const double tol = 1e-12 * scale;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < tol) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        double d = a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Unconstrained COBYLA: a simplex of n+1 points carries a linear
/// interpolation model of the cost; trust-region steps go to the radius
/// boundary along the model gradient; the radius only ever shrinks, from
/// rho_begin down to rho_end. The simplex stays acceptable in Powell's sense
/// (no vertex closer than alpha*rho to the opposite face, no edge longer
/// than beta*rho); geometry-improving points are placed gamma*rho along the
/// face normal. The radius shrinks only when a trust-region step fails while
/// the geometry is acceptable, so a failure is never blamed on a bad model.
///
/// Hard contracts: cost_fn is called at most max_evals times; the returned
/// point is the best of every evaluation made; eval_log records each call in
/// order; the run stops when a step fails at the final radius or the budget
/// runs out. No randomness is used, so reruns are bit-identical.
inline MinimizeResult minimize(
    const std::function<double(const std::vector<double>&)>& cost_fn,
    const std::vector<double>& theta0, const OptimizerConfig& cfg) {
    cfg.validate();
    const int n = static_cast<int>(theta0.size());
    constexpr double kAlpha = 0.25;  // least acceptable face distance / rho
    constexpr double kBeta = 2.1;    // longest acceptable edge / rho
    constexpr double kGamma = 0.5;   // geometry step length / rho
    constexpr double kDelta = 1.1;   // on success, evict vertices beyond this

    MinimizeResult res;
    int best_idx = -1;
    bool budget_left = true;
    auto try_eval = [&](const std::vector<double>& th, double& out) -> bool {
        if (static_cast<int>(res.eval_log.size()) >= cfg.max_evals) {
            budget_left = false;
            return false;
        }
        double v = cost_fn(th);
        if (!std::isfinite(v))
            throw std::runtime_error("minimize: cost function returned a "
                                     "non-finite value");
        res.eval_log.push_back({th, v});
        if (best_idx < 0 || v < res.eval_log[best_idx].cost)
            best_idx = static_cast<int>(res.eval_log.size()) - 1;
        out = v;
        return true;
    };
    auto finish = [&]() {
        res.theta_best = res.eval_log[best_idx].theta;
        res.cost_best = res.eval_log[best_idx].cost;
        res.evals_used = static_cast<int>(res.eval_log.size());
        return res;
    };

    double fbase;
    try_eval(theta0, fbase);
    if (n == 0) return finish();

    double rho = cfg.rho_begin;
    std::vector<double> base = theta0;
    // Column j holds the offset of vertex j from the base point.
    std::vector<std::vector<double>> offset(n, std::vector<double>(n, 0.0));
    std::vector<double> fvert(n, fbase);
    auto respan = [&]() {
        for (int j = 0; j < n && budget_left; ++j) {
            offset[j].assign(n, 0.0);
            offset[j][j] = rho;
            std::vector<double> point(base);
            point[j] += rho;
            try_eval(point, fvert[j]);
        }
    };
    respan();

    bool after_success = false;  // Powell's IBRNCH
    while (budget_left) {
        // Promote the best vertex to the base point.
        int kbest = -1;
        for (int j = 0; j < n; ++j)
            if (fvert[j] < fbase && (kbest < 0 || fvert[j] < fvert[kbest]))
                kbest = j;
        if (kbest >= 0) {
            std::vector<double> shift = offset[kbest];
            for (int j = 0; j < n; ++j) {
                if (j == kbest) continue;
                for (int i = 0; i < n; ++i) offset[j][i] -= shift[i];
            }
            for (int i = 0; i < n; ++i) {
                offset[kbest][i] = -shift[i];
                base[i] += shift[i];
            }
            std::swap(fbase, fvert[kbest]);
        }

        // Inverse of the offset matrix drives everything: row norms give the
        // vertex-to-face distances, transposed products the model gradient.
        std::vector<std::vector<double>> columns(n, std::vector<double>(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) columns[i][j] = offset[j][i];
        auto inverse = detail::invert_matrix(columns);
        if (!inverse) {
            respan();
            after_success = false;
            continue;
        }
        const auto& w = *inverse;

        std::vector<double> edge_len(n), face_dist(n);
        for (int j = 0; j < n; ++j) {
            double e2 = 0.0, w2 = 0.0;
            for (int i = 0; i < n; ++i) {
                e2 += offset[j][i] * offset[j][i];
                w2 += w[j][i] * w[j][i];
            }
            edge_len[j] = std::sqrt(e2);
            face_dist[j] = w2 > 0.0 ? 1.0 / std::sqrt(w2) : 0.0;
        }
        bool acceptable = true;
        for (int j = 0; j < n; ++j) {
            if (face_dist[j] < kAlpha * rho || edge_len[j] > kBeta * rho) {
                acceptable = false;
                break;
            }
        }

        std::vector<double> grad(n, 0.0);
        for (int j = 0; j < n; ++j) {
            double df = fvert[j] - fbase;
            for (int i = 0; i < n; ++i) grad[i] += w[j][i] * df;
        }
        double gnorm = 0.0;
        for (double g : grad) gnorm += g * g;
        gnorm = std::sqrt(gnorm);

        if (!after_success && !acceptable) {
            // Geometry step: move the worst offender to gamma*rho along the
            // normal of the face spanned by the other vertices, on the side
            // the model prefers.
            int jdrop = -1;
            double worst_eta = kBeta * rho;
            for (int j = 0; j < n; ++j) {
                if (edge_len[j] > worst_eta) {
                    worst_eta = edge_len[j];
                    jdrop = j;
                }
            }
            if (jdrop < 0) {
                double worst_sig = kAlpha * rho;
                for (int j = 0; j < n; ++j) {
                    if (face_dist[j] < worst_sig) {
                        worst_sig = face_dist[j];
                        jdrop = j;
                    }
                }
            }
            if (jdrop < 0) jdrop = 0;
            std::vector<double> u(n);
            double unorm = 0.0;
            for (int i = 0; i < n; ++i) {
                u[i] = w[jdrop][i];
                unorm += u[i] * u[i];
            }
            unorm = std::sqrt(unorm);
            double along = 0.0;
            for (int i = 0; i < n; ++i) along += grad[i] * u[i];
            double step = (along > 0.0 ? -kGamma : kGamma) * rho / unorm;
            std::vector<double> point(base);
            for (int i = 0; i < n; ++i) {
                offset[jdrop][i] = step * u[i];
                point[i] += offset[jdrop][i];
            }
            double fg;
            if (!try_eval(point, fg)) break;
            fvert[jdrop] = fg;
            continue;
        }

        // Trust-region step on the interpolated linear model.
        if (rho * gnorm < 1e-12 * std::max(1.0, std::abs(fbase))) {
            after_success = false;
            if (!acceptable) continue;
            if (rho <= cfg.rho_end) break;
            rho = rho * 0.5 < 1.5 * cfg.rho_end ? cfg.rho_end : rho * 0.5;
            continue;
        }
        std::vector<double> d(n), cand(base);
        for (int i = 0; i < n; ++i) {
            d[i] = -rho * grad[i] / gnorm;
            cand[i] += d[i];
        }
        double fc;
        if (!try_eval(cand, fc)) break;
        double predicted = rho * gnorm;
        double actual = fbase - fc;
        bool success = actual > 0.1 * predicted;

        // Vertex replacement. On success prefer evicting a far vertex; the
        // fallback keeps the simplex volume as large as possible. A failed
        // point only enters if it grows the volume (|lambda| > 1).
        std::vector<double> lambda(n, 0.0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) lambda[j] += w[j][i] * d[i];
        int jdrop = -1;
        if (success) {
            double far = kDelta * rho;
            for (int j = 0; j < n; ++j) {
                if (edge_len[j] > far) {
                    far = edge_len[j];
                    jdrop = j;
                }
            }
        }
        if (jdrop < 0) {
            double weight = success ? 0.0 : 1.0;
            for (int j = 0; j < n; ++j) {
                if (std::abs(lambda[j]) > weight) {
                    weight = std::abs(lambda[j]);
                    jdrop = j;
                }
            }
        }
        if (jdrop >= 0) {
            offset[jdrop] = d;
            fvert[jdrop] = fc;
        }

        if (success) {
            after_success = true;
            continue;
        }
        after_success = false;
        if (!acceptable) continue;
        if (rho <= cfg.rho_end) break;
        rho = rho * 0.5 < 1.5 * cfg.rho_end ? cfg.rho_end : rho * 0.5;
    }
    return finish();
}

}  // namespace fga
