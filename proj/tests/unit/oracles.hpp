#pragma once

// Independent reference computations used only by tests.

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

/// Spherical linear interpolation between unit vectors a and b.
inline Eigen::Vector3d slerp(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double s) {
  const double th = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  if (th < 1e-15) return a;
  return (std::sin((1 - s) * th) * a + std::sin(s * th) * b) / std::sin(th);
}

/// Normalized area of a cap of half-angle theta: (1 - cos theta) / 2.
inline double cap_area(double theta) { return (1.0 - std::cos(theta)) / 2.0; }

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Inertia of a real symmetric matrix by eigenvalues.
inline int inertia(const Eigen::MatrixXd& s) {
  if (s.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  int r = 0;
  for (double ev : es.eigenvalues()) r += ev > 1e-9 ? 1 : (ev < -1e-9 ? -1 : 0);
  return r;
}

/// Signature of a braid closure from the symmetrized Seifert matrix of the
/// canonical Seifert surface (one disc per strand, one band per crossing).
/// Word letters are +-i on n strands.
inline int seifert_signature(int n, const std::vector<int>& w) {
  if (w.empty()) return 0;
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(n));
  for (int q = 0; q < static_cast<int>(w.size()); ++q) cols[static_cast<std::size_t>(std::abs(w[q]))].push_back(q);
  for (int g = 1; g < n; ++g) {
    if (!cols[static_cast<std::size_t>(g)].empty()) continue;
    std::vector<int> left, right;
    for (int x : w) {
      if (std::abs(x) < g) left.push_back(x);
      else right.push_back(x > 0 ? x - g : x + g);
    }
    return seifert_signature(g, left) + seifert_signature(n - g, right);
  }
  struct Gen {
    int col, p0, p1;
  };
  std::vector<Gen> gens;
  for (int i = 1; i < n; ++i) {
    const auto& ps = cols[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j + 1 < ps.size(); ++j) gens.push_back({i, ps[j], ps[j + 1]});
  }
  auto sg = [&](int q) { return w[static_cast<std::size_t>(q)] > 0 ? 1 : -1; };
  const auto N = static_cast<Eigen::Index>(gens.size());
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index x = 0; x < N; ++x) {
    const Gen& a = gens[static_cast<std::size_t>(x)];
    S(x, x) = -(sg(a.p0) + sg(a.p1));
    for (Eigen::Index y = 0; y < N; ++y) {
      if (y == x) continue;
      const Gen& b = gens[static_cast<std::size_t>(y)];
      if (b.col == a.col && b.p0 == a.p1) S(x, y) = S(y, x) = sg(a.p1);
      if (b.col == a.col + 1) {
        if (a.p0 < b.p0 && b.p0 < a.p1 && a.p1 < b.p1) S(x, y) = S(y, x) = 1;
        else if (b.p0 < a.p0 && a.p0 < b.p1 && b.p1 < a.p1) S(x, y) = S(y, x) = -1;
      }
    }
  }
  return inertia(S);
}

/// Signature of the torus link T(p, q) by the Brieskorn lattice-point count
/// over i/p + j/q in (0, 2).
inline int brieskorn_signature(int p, int q) {
  int cnt = 0;
  for (int i = 1; i < p; ++i) {
    for (int j = 1; j < q; ++j) {
      // Compare 2(iq + jp) against pq and 3pq to stay in integers.
      const int t = 2 * (i * q + j * p);
      if (t > p * q && t < 3 * p * q) ++cnt;
      else if (t < p * q || t > 3 * p * q) --cnt;
    }
  }
  return -cnt;
}

/// Spectral radius of the reduced Burau matrix of a 3-braid at t = -1: for
/// pseudo-Anosov 3-braids its logarithm is the topological entropy.
inline double burau3_entropy(const std::vector<int>& w) {
  Eigen::Matrix2d s1, s2;
  s1 << 1, 1, 0, 1;
  s2 << 1, 0, -1, 1;
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  for (int x : w) {
    const Eigen::Matrix2d g = std::abs(x) == 1 ? s1 : s2;
    m = m * (x > 0 ? g : Eigen::Matrix2d(g.inverse()));
  }
  const double tr = std::abs(m.trace());
  if (tr <= 2.0) return 0.0;
  return std::log((tr + std::sqrt(tr * tr - 4.0)) / 2.0);
}

struct MeanSe {
  double mean, se;
};

inline MeanSe mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1) / n)};
}

}  // namespace oracle
