#include "sta_otto/quintic_spline.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>

#include "sta_otto/errors.hpp"

namespace sta_otto {

namespace {

// Power-basis coefficients a3, a4, a5 of the quintic Hermite segment in the
// local variable u = (x - x_j) / h are affine in the knot data
// (m_j, k_j, m_{j+1}, k_{j+1}); these are the weights for each and the
// constant term coming from dy = y_{j+1} - y_j.
struct Affine {
  std::array<double, 4> w;  // m0, k0, m1, k1
  double c;
};

std::array<Affine, 3> segment_coefficients(double h, double dy) {
  const double h2 = h * h;
  return {{
      {{-6 * h, -1.5 * h2, -4 * h, 0.5 * h2}, 10 * dy},
      {{8 * h, 1.5 * h2, 7 * h, -h2}, -15 * dy},
      {{-3 * h, -0.5 * h2, -3 * h, 0.5 * h2}, 6 * dy},
  }};
}

}  // namespace

QuinticSpline::QuinticSpline(std::span<const double> knots, std::span<const double> values)
    : x_(knots.begin(), knots.end()), y_(values.begin(), values.end()) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw InvalidProtocol("quintic spline needs at least two knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw InvalidProtocol("spline knots must be strictly increasing");

  d1_.assign(n, 0.0);
  d2_.assign(n, 0.0);
  if (n == 2) return;

  // Unknowns (m_i, k_i) for interior knots i = 1..n-2 at columns 2(i-1), 2(i-1)+1.
  const std::size_t unknowns = 2 * (n - 2);
  auto column = [&](std::size_t knot, int which) -> long {
    if (knot == 0 || knot == n - 1) return -1;
    return static_cast<long>(2 * (knot - 1) + which);
  };

  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(unknowns));

  // Row 2(i-1): third derivative continuity, row 2(i-1)+1: fourth.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    const auto left = segment_coefficients(hl, y_[i] - y_[i - 1]);
    const auto right = segment_coefficients(hr, y_[i + 1] - y_[i]);
    const std::array<std::size_t, 4> lknots{i - 1, i - 1, i, i};
    const std::array<std::size_t, 4> rknots{i, i, i + 1, i + 1};
    const std::array<int, 4> which{0, 1, 0, 1};

    // third: (6a3 + 24a4 + 60a5)_left / hl^3 - 6 a3_right / hr^3 = 0
    // fourth: (24a4 + 120a5)_left / hl^4 - 24 a4_right / hr^4 = 0
    const std::array<std::array<double, 3>, 2> lmul{{{6 / std::pow(hl, 3), 24 / std::pow(hl, 3),
                                                      60 / std::pow(hl, 3)},
                                                     {0.0, 24 / std::pow(hl, 4),
                                                      120 / std::pow(hl, 4)}}};
    const std::array<std::array<double, 3>, 2> rmul{
        {{6 / std::pow(hr, 3), 0.0, 0.0}, {0.0, 24 / std::pow(hr, 4), 0.0}}};

    for (int eq = 0; eq < 2; ++eq) {
      const long row = static_cast<long>(2 * (i - 1) + eq);
      double constant = 0.0;
      for (int p = 0; p < 3; ++p) {
        constant += lmul[eq][p] * left[p].c - rmul[eq][p] * right[p].c;
        for (int q = 0; q < 4; ++q) {
          const long lc = column(lknots[q], which[q]);
          if (lc >= 0 && lmul[eq][p] != 0.0)
            triplets.emplace_back(row, lc, lmul[eq][p] * left[p].w[q]);
          const long rc = column(rknots[q], which[q]);
          if (rc >= 0 && rmul[eq][p] != 0.0)
            triplets.emplace_back(row, rc, -rmul[eq][p] * right[p].w[q]);
        }
      }
      rhs[row] = -constant;
    }
  }

  Eigen::SparseMatrix<double> a(static_cast<long>(unknowns), static_cast<long>(unknowns));
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(a);
  if (solver.info() != Eigen::Success) throw InvalidProtocol("quintic spline system is singular");
  const Eigen::VectorXd z = solver.solve(rhs);
  if (solver.info() != Eigen::Success || !z.allFinite())
    throw InvalidProtocol("quintic spline solve failed");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d1_[i] = z[static_cast<long>(2 * (i - 1))];
    d2_[i] = z[static_cast<long>(2 * (i - 1) + 1)];
  }
}

SplinePoint QuinticSpline::evaluate(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t j = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  j = std::min(j, x_.size() - 2);
  const double h = x_[j + 1] - x_[j];
  const double u = (x - x_[j]) / h;
  const auto co = segment_coefficients(h, y_[j + 1] - y_[j]);
  const std::array<double, 4> knot{d1_[j], d2_[j], d1_[j + 1], d2_[j + 1]};
  std::array<double, 6> a{y_[j], h * d1_[j], 0.5 * h * h * d2_[j], 0, 0, 0};
  for (int p = 0; p < 3; ++p) {
    double v = co[p].c;
    for (int q = 0; q < 4; ++q) v += co[p].w[q] * knot[q];
    a[3 + p] = v;
  }
  const double value = a[0] + u * (a[1] + u * (a[2] + u * (a[3] + u * (a[4] + u * a[5]))));
  const double du = a[1] + u * (2 * a[2] + u * (3 * a[3] + u * (4 * a[4] + u * 5 * a[5])));
  const double ddu = 2 * a[2] + u * (6 * a[3] + u * (12 * a[4] + u * 20 * a[5]));
  return {value, du / h, ddu / (h * h)};
}

}  // namespace sta_otto
