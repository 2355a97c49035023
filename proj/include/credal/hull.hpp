/* Copyright 2026 The credal-bounds Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace credal {

/**
 * Convex-combination membership: is `target` = sum_j w_j * points[j] with
 * w >= 0, sum w = 1, up to `tol` in the residual?
 *
 * Solved as a Phase-I simplex on
 *     [ A ] w + I s = [ b ],   minimize sum(s),
 *     [ 1 ]           [ 1 ]
 * where columns of A are the candidate generators. All right-hand sides are
 * nonnegative (probabilities), so the all-artificial basis is feasible.
 * Bland's rule; problem sizes here are tiny (rows <= 25).
 */
inline bool in_convex_hull(const std::vector<double>& target,
                           const std::vector<const std::vector<double>*>& points,
                           double tol = 1e-9) {
    const std::size_t dim = target.size();
    const std::size_t rows = dim + 1;
    const std::size_t nvars = points.size();
    if (nvars == 0) return false;

    // tableau: rows x (nvars + rows + 1), artificials start at column nvars
    const std::size_t cols = nvars + rows + 1;
    std::vector<std::vector<double>> t(rows, std::vector<double>(cols, 0.0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t j = 0; j < nvars; ++j) t[r][j] = (*points[j])[r];
        t[r][nvars + r] = 1.0;
        t[r][cols - 1] = target[r];
    }
    for (std::size_t j = 0; j < nvars; ++j) t[dim][j] = 1.0;
    t[dim][nvars + dim] = 1.0;
    t[dim][cols - 1] = 1.0;

    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) basis[r] = nvars + r;

    // objective row: minimize sum of artificials, expressed in reduced costs
    std::vector<double> obj(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) obj[c] -= t[r][c];
    for (std::size_t a = nvars; a < nvars + rows; ++a) obj[a] += 1.0;

    const double pivot_eps = 1e-11;
    for (std::size_t iter = 0; iter < 10000; ++iter) {
        // Bland: smallest-index column with negative reduced cost
        std::size_t enter = cols;
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            if (obj[c] < -pivot_eps) {
                enter = c;
                break;
            }
        }
        if (enter == cols) break;  // optimal

        std::size_t leave = rows;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            if (t[r][enter] > pivot_eps) {
                double ratio = t[r][cols - 1] / t[r][enter];
                if (leave == rows || ratio < best_ratio - pivot_eps ||
                    (std::fabs(ratio - best_ratio) <= pivot_eps && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == rows) break;  // unbounded cannot happen here

        double piv = t[leave][enter];
        for (std::size_t c = 0; c < cols; ++c) t[leave][c] /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave) continue;
            double f = t[r][enter];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols; ++c) t[r][c] -= f * t[leave][c];
        }
        double fo = obj[enter];
        for (std::size_t c = 0; c < cols; ++c) obj[c] -= fo * t[leave][c];
        basis[leave] = enter;
    }

    double infeas = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        if (basis[r] >= nvars && basis[r] < nvars + rows) infeas += t[r][cols - 1];
    return infeas <= tol;
}

}  // namespace credal
