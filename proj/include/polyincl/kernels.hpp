#pragma once

#include <vector>

#include "polyincl/containment.hpp"

namespace polyincl::kernels {

// Batch kernels over independent orientations. Each `_parallel` variant is an
// OpenMP loop over the same per-item code as its `_serial` reference, writing
// into a pre-sized output slot, so both produce identical results.

std::vector<double> scale_batch_serial(const ContainmentProblem& prob, const std::vector<Orientation>& rots);
std::vector<double> scale_batch_parallel(const ContainmentProblem& prob, const std::vector<Orientation>& rots);

std::vector<LocalResult> polish_batch_serial(const ContainmentProblem& prob, const std::vector<Orientation>& starts,
                                             const PolishOptions& opts);
std::vector<LocalResult> polish_batch_parallel(const ContainmentProblem& prob, const std::vector<Orientation>& starts,
                                               const PolishOptions& opts);

/// Euler ZYZ lattice with `res` steps per angle (beta sampled at cell centers),
/// or `res` equally spaced angles in 2D. Index = (ia * res + ib) * res + ig.
std::vector<Orientation> rotation_grid(int dim, int res);

/// Indices of grid points not beaten by any lattice neighbor.
std::vector<int> grid_local_maxima(int dim, int res, const std::vector<double>& values);

}  // namespace polyincl::kernels
