#include "gcrkit/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gcrkit/error.hpp"

namespace gcrkit {
namespace {

class Stencil {
 public:
  Stencil(const ScalarField& f, std::span<const double> p, const std::vector<std::pair<double, double>>* box)
      : f_(f), base_(p.begin(), p.end()), box_(box) {}

  // f(p + sum_k offsets[k].second * e_{offsets[k].first})
  double at(std::initializer_list<std::pair<int, double>> offsets) const {
    std::vector<double> q = base_;
    for (const auto& [axis, delta] : offsets) q[axis] += delta;
    if (box_ != nullptr) {
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < (*box_)[i].first || q[i] > (*box_)[i].second) {
          throw OracleError("finite-difference stencil leaves the chart domain on axis " + std::to_string(i));
        }
      }
    }
    return f_(q);
  }

 private:
  const ScalarField& f_;
  std::vector<double> base_;
  const std::vector<std::pair<double, double>>* box_;
};

}  // namespace

Jet finite_difference_jet(const ScalarField& f, std::span<const double> point, std::optional<double> step,
                          const std::vector<std::pair<double, double>>* box) {
  const int n = static_cast<int>(point.size());
  if (n < 1 || n > Jet::kMaxVars) throw ArgumentError("finite_difference_jet: chart dimension must be 1..3");
  if (step && !(*step > 0.0)) throw ArgumentError("finite_difference_jet: step must be positive");
  if (box != nullptr && static_cast<int>(box->size()) != n) {
    throw ArgumentError("finite_difference_jet: box dimension mismatch");
  }

  const double eps = std::numeric_limits<double>::epsilon();
  auto h_for = [&](int order, int axis) {
    const double scale = std::max(1.0, std::abs(point[axis]));
    if (step) return *step * scale;
    return std::pow(eps, 1.0 / (order + 2)) * scale;
  };

  Stencil st(f, point, box);
  const double f0 = st.at({});

  double grad[3] = {};
  double hess[3][3] = {};
  double third[3][3][3] = {};

  for (int i = 0; i < n; ++i) {
    const double h = h_for(1, i);
    grad[i] = (st.at({{i, h}}) - st.at({{i, -h}})) / (2.0 * h);
  }

  for (int i = 0; i < n; ++i) {
    const double hi = h_for(2, i);
    hess[i][i] = (st.at({{i, hi}}) - 2.0 * f0 + st.at({{i, -hi}})) / (hi * hi);
    for (int j = i + 1; j < n; ++j) {
      const double hj = h_for(2, j);
      const double v = (st.at({{i, hi}, {j, hj}}) - st.at({{i, hi}, {j, -hj}}) - st.at({{i, -hi}, {j, hj}}) +
                        st.at({{i, -hi}, {j, -hj}})) /
                       (4.0 * hi * hj);
      hess[i][j] = hess[j][i] = v;
    }
  }

  // Second difference along i at a point shifted by dj along j.
  auto d2_along = [&](int i, double hi, int j, double dj) {
    return (st.at({{i, hi}, {j, dj}}) - 2.0 * st.at({{j, dj}}) + st.at({{i, -hi}, {j, dj}})) / (hi * hi);
  };

  for (int i = 0; i < n; ++i) {
    const double h = h_for(3, i);
    third[i][i][i] = (st.at({{i, 2 * h}}) - 2.0 * st.at({{i, h}}) + 2.0 * st.at({{i, -h}}) - st.at({{i, -2 * h}})) /
                     (2.0 * h * h * h);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double hj = h_for(3, j);
      const double v = (d2_along(i, h, j, hj) - d2_along(i, h, j, -hj)) / (2.0 * hj);
      third[i][i][j] = third[i][j][i] = third[j][i][i] = v;
    }
  }
  if (n == 3) {
    const double h0 = h_for(3, 0), h1 = h_for(3, 1), h2 = h_for(3, 2);
    double acc = 0.0;
    for (int a : {1, -1}) {
      for (int b : {1, -1}) {
        for (int c : {1, -1}) {
          acc += a * b * c * st.at({{0, a * h0}, {1, b * h1}, {2, c * h2}});
        }
      }
    }
    const double v = acc / (8.0 * h0 * h1 * h2);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          if (i != j && j != k && i != k) third[i][j][k] = v;
        }
      }
    }
  }

  return Jet::from_partials(n, 3, [&](std::span<const int> axes) {
    switch (axes.size()) {
      case 0: return f0;
      case 1: return grad[axes[0]];
      case 2: return hess[axes[0]][axes[1]];
      default: return third[axes[0]][axes[1]][axes[2]];
    }
  });
}

}  // namespace gcrkit
