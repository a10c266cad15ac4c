#include "polyincl/kernels.hpp"

#include <cmath>
#include <numbers>

namespace polyincl::kernels {

namespace {

double scale_or_zero(const ContainmentProblem& prob, const Orientation& r) {
  auto s = evaluate_scale(prob, r.matrix());
  return s.feasible ? s.sigma : 0.0;
}

}  // namespace

std::vector<double> scale_batch_serial(const ContainmentProblem& prob, const std::vector<Orientation>& rots) {
  std::vector<double> out(rots.size());
  for (std::size_t i = 0; i < rots.size(); ++i) out[i] = scale_or_zero(prob, rots[i]);
  return out;
}

std::vector<double> scale_batch_parallel(const ContainmentProblem& prob, const std::vector<Orientation>& rots) {
  std::vector<double> out(rots.size());
  const long count = static_cast<long>(rots.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out[i] = scale_or_zero(prob, rots[i]);
  return out;
}

std::vector<LocalResult> polish_batch_serial(const ContainmentProblem& prob, const std::vector<Orientation>& starts,
                                             const PolishOptions& opts) {
  std::vector<LocalResult> out(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) out[i] = polish_orientation(prob, starts[i], opts);
  return out;
}

std::vector<LocalResult> polish_batch_parallel(const ContainmentProblem& prob, const std::vector<Orientation>& starts,
                                               const PolishOptions& opts) {
  std::vector<LocalResult> out(starts.size());
  const long count = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) out[i] = polish_orientation(prob, starts[i], opts);
  return out;
}

std::vector<Orientation> rotation_grid(int dim, int res) {
  std::vector<Orientation> out;
  const double two_pi = 2 * std::numbers::pi;
  if (dim == 2) {
    out.reserve(static_cast<std::size_t>(res));
    for (int i = 0; i < res; ++i) out.push_back(Orientation::planar(two_pi * i / res));
    return out;
  }
  out.reserve(static_cast<std::size_t>(res) * res * res);
  for (int ia = 0; ia < res; ++ia)
    for (int ib = 0; ib < res; ++ib)
      for (int ig = 0; ig < res; ++ig)
        out.push_back(Orientation::euler_zyz(two_pi * ia / res, std::numbers::pi * (ib + 0.5) / res, two_pi * ig / res));
  return out;
}

std::vector<int> grid_local_maxima(int dim, int res, const std::vector<double>& values) {
  std::vector<int> out;
  auto wrap = [res](int i) { return (i % res + res) % res; };
  if (dim == 2) {
    for (int i = 0; i < res; ++i) {
      double v = values[i];
      if (v > 0 && v >= values[wrap(i - 1)] && v >= values[wrap(i + 1)]) out.push_back(i);
    }
    return out;
  }
  auto at = [&](int ia, int ib, int ig) { return values[(static_cast<std::size_t>(ia) * res + ib) * res + ig]; };
  for (int ia = 0; ia < res; ++ia)
    for (int ib = 0; ib < res; ++ib)
      for (int ig = 0; ig < res; ++ig) {
        double v = at(ia, ib, ig);
        if (v <= 0) continue;
        bool is_max = true;
        for (int da = -1; da <= 1 && is_max; ++da)
          for (int db = -1; db <= 1 && is_max; ++db)
            for (int dg = -1; dg <= 1 && is_max; ++dg) {
              if (da == 0 && db == 0 && dg == 0) continue;
              int jb = ib + db;
              if (jb < 0 || jb >= res) continue;
              if (at(wrap(ia + da), jb, wrap(ig + dg)) > v) is_max = false;
            }
        if (is_max) out.push_back((ia * res + ib) * res + ig);
      }
  return out;
}

}  // namespace polyincl::kernels
