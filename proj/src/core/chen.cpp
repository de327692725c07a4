#include "grp/core/chen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace grp {

std::vector<std::size_t> chen_anchor_indices(std::size_t n_steps, const TripleSampling& sampling) {
  std::vector<std::size_t> out;
  if (n_steps < 2) return out;
  if (n_steps <= sampling.exhaustive_max_steps) {
    out.resize(n_steps);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  // Anchors are only used as i or j, so they live in [0, n-1].
  const std::size_t last = n_steps - 1;
  out.push_back(0);
  out.push_back(last);
  for (std::size_t m = 1; m <= sampling.spread_anchors; ++m)
    out.push_back(m * last / (sampling.spread_anchors + 1));
  std::mt19937_64 gen(sampling.seed);
  std::uniform_int_distribution<std::size_t> pick(0, last);
  for (std::size_t m = 0; m < sampling.random_anchors; ++m) out.push_back(pick(gen));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

using RowFn = std::function<std::vector<double>(std::size_t)>;

double defect_over_anchors(const GridPath& path, const RowFn& make_row, const TripleSampling& sampling) {
  const std::size_t n = path.grid().n_steps();
  const std::size_t d = path.dim();
  const std::size_t dd = d * d;
  const auto anchors = chen_anchor_indices(n, sampling);
  std::map<std::size_t, std::vector<double>> rows;
  for (std::size_t a : anchors) rows.emplace(a, make_row(a));

  std::vector<double> xij(d), xjk(d);
  double worst = 0.0;
  for (std::size_t ai = 0; ai < anchors.size(); ++ai) {
    const std::size_t i = anchors[ai];
    const auto& row_i = rows.at(i);
    for (std::size_t aj = ai + 1; aj < anchors.size(); ++aj) {
      const std::size_t j = anchors[aj];
      const auto& row_j = rows.at(j);
      path.increment(i, j, xij);
      const double* ij = row_i.data() + (j - i) * dd;
      for (std::size_t k = j + 1; k <= n; ++k) {
        path.increment(j, k, xjk);
        const double* ik = row_i.data() + (k - i) * dd;
        const double* jk = row_j.data() + (k - j) * dd;
        double s = 0.0;
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b) {
            const std::size_t idx = a * d + b;
            const double r = ik[idx] - ij[idx] - jk[idx] - xij[a] * xjk[b];
            s += r * r;
          }
        worst = std::max(worst, std::sqrt(s));
      }
    }
  }
  return worst;
}

}  // namespace

double chen_defect(const GridPath& path, const Level2Fn& level2, const TripleSampling& sampling) {
  const std::size_t n = path.grid().n_steps();
  const std::size_t d = path.dim();
  const RowFn make_row = [&](std::size_t i) {
    std::vector<double> row((n - i + 1) * d * d, 0.0);
    for (std::size_t k = i + 1; k <= n; ++k) {
      const Matrix m = level2(i, k);
      if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d)
        throw std::invalid_argument("chen_defect: level-2 value has the wrong shape");
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          row[(k - i) * d * d + a * d + b] = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    return row;
  };
  return defect_over_anchors(path, make_row, sampling);
}

double chen_defect(const RoughPath& rp, const TripleSampling& sampling) {
  return defect_over_anchors(rp.path(), [&](std::size_t i) { return level2_row(rp, i); }, sampling);
}

}  // namespace grp
