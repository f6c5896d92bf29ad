#include "gg/signature.hpp"

#include <gmpxx.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>

namespace gg {

namespace {

struct Layout {
  int n = 0;
  std::vector<std::vector<std::size_t>> columns;  // crossing positions per generator
  std::vector<int> first_region;                  // id of region 0 of each gap
  int region_count = 0;

  int region(int gap, std::size_t q) const {
    if (gap == 0 || gap == n) return first_region[static_cast<std::size_t>(gap)];
    const auto& ps = columns[static_cast<std::size_t>(gap)];
    const int base = first_region[static_cast<std::size_t>(gap)];
    if (ps.empty()) return base;
    for (std::size_t j = 0; j + 1 < ps.size(); ++j) {
      if (ps[j] < q && q < ps[j + 1]) return base + static_cast<int>(j);
    }
    return base + static_cast<int>(ps.size()) - 1;
  }
};

Layout make_layout(const BraidWord& w) {
  Layout l;
  l.n = w.strands();
  l.columns.assign(static_cast<std::size_t>(l.n), {});
  for (std::size_t q = 0; q < w.size(); ++q) {
    l.columns[static_cast<std::size_t>(std::abs(w.letters()[q]))].push_back(q);
  }
  l.first_region.assign(static_cast<std::size_t>(l.n) + 1, 0);
  int next = 0;
  for (int g = 0; g <= l.n; ++g) {
    l.first_region[static_cast<std::size_t>(g)] = next;
    const bool interior = g > 0 && g < l.n;
    next += interior ? std::max<int>(1, static_cast<int>(l.columns[static_cast<std::size_t>(g)].size())) : 1;
  }
  l.region_count = next;
  return l;
}

bool white_gap(int n, int g) { return (n - g) % 2 == 0; }

}  // namespace

GoeritzData closure_diagram(const BraidWord& w) {
  GoeritzData d;
  const int n = w.strands();
  d.strands = n;
  if (w.empty()) return d;
  const Layout l = make_layout(w);
  d.region_count = l.region_count;
  for (int g = 1; g < n; ++g) d.split = d.split || l.columns[static_cast<std::size_t>(g)].empty();

  // White regions get compact ids in region order.
  std::map<int, int> white_id;
  for (int g = 0; g <= n; ++g) {
    if (!white_gap(n, g)) continue;
    const int first = l.first_region[static_cast<std::size_t>(g)];
    const int last = g < n ? l.first_region[static_cast<std::size_t>(g) + 1] : l.region_count;
    for (int r = first; r < last; ++r) white_id.emplace(r, static_cast<int>(white_id.size()));
  }
  d.white_region_count = static_cast<int>(white_id.size());
  d.unbounded_region = white_id.at(l.first_region[static_cast<std::size_t>(n)]);

  d.full_matrix = IntMatrix::Zero(d.white_region_count, d.white_region_count);
  for (std::size_t q = 0; q < w.size(); ++q) {
    const int letter = w.letters()[q];
    const int i = std::abs(letter);
    const int s = letter > 0 ? 1 : -1;
    GoeritzData::Crossing c{q, i, s, false, 0, 0, 0};
    if ((n - i) % 2 == 1) {
      // Gaps i-1 and i+1 are white and sit left and right of the crossing.
      c.type_two = true;
      c.eta = s;
      d.mu += c.eta;
      c.region_a = white_id.at(l.region(i - 1, q));
      c.region_b = white_id.at(l.region(i + 1, q));
    } else {
      // Gap i is white; the crossing separates its regions below and above.
      c.eta = -s;
      const auto& ps = l.columns[static_cast<std::size_t>(i)];
      const auto j = static_cast<std::size_t>(std::find(ps.begin(), ps.end(), q) - ps.begin());
      const int base = l.first_region[static_cast<std::size_t>(i)];
      c.region_a = white_id.at(base + static_cast<int>((j + ps.size() - 1) % ps.size()));
      c.region_b = white_id.at(base + static_cast<int>(j));
    }
    if (c.region_a != c.region_b) {
      d.full_matrix(c.region_a, c.region_a) += c.eta;
      d.full_matrix(c.region_b, c.region_b) += c.eta;
      d.full_matrix(c.region_a, c.region_b) -= c.eta;
      d.full_matrix(c.region_b, c.region_a) -= c.eta;
    }
    d.crossings.push_back(c);
  }

  const int k = d.white_region_count;
  const int u = d.unbounded_region;
  d.matrix = IntMatrix(k - 1, k - 1);
  for (int r = 0, rr = 0; r < k; ++r) {
    if (r == u) continue;
    for (int c = 0, cc = 0; c < k; ++c) {
      if (c == u) continue;
      d.matrix(rr, cc++) = d.full_matrix(r, c);
    }
    ++rr;
  }
  return d;
}

int symmetric_signature_exact(const IntMatrix& s) {
  const auto n = static_cast<std::size_t>(s.rows());
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  }
  std::vector<bool> alive(n, true);
  int sig = 0;
  for (;;) {
    // Pick a nonzero diagonal pivot; otherwise create one by congruence.
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i) {
      if (alive[i] && sgn(a[i][i]) != 0) piv = i;
    }
    if (piv == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (!alive[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (alive[j] && j != i && sgn(a[i][j]) != 0) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi == n) break;  // remaining block is zero
      for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      piv = pi;
    }
    sig += sgn(a[piv][piv]) > 0 ? 1 : -1;
    alive[piv] = false;
    const mpq_class p = a[piv][piv];
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || sgn(a[i][piv]) == 0) continue;
      const mpq_class f = a[i][piv] / p;
      for (std::size_t j = 0; j < n; ++j) {
        if (alive[j]) a[i][j] -= f * a[piv][j];
      }
    }
  }
  return sig;
}

int symmetric_signature(const IntMatrix& full) {
  // Zero rows (nugatory crossings, isolated regions) carry no signature.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < full.rows(); ++i) {
    if (full.row(i).any()) keep.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(keep.size());
  if (k == 0) return 0;
  IntMatrix s(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) s(i, j) = full(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
  }
  const Eigen::MatrixXd m = s.cast<double>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return symmetric_signature_exact(s);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double cut = 1e-9 * scale * static_cast<double>(s.rows());
  int sig = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < cut) return symmetric_signature_exact(s);
    sig += ev(i) > 0.0 ? 1 : -1;
  }
  return sig;
}

int signature_of_closure(const BraidWord& w) {
  const BraidWord r = w.reduced();
  if (r.empty()) return 0;
  const int n = r.strands();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int l : r.letters()) used[static_cast<std::size_t>(std::abs(l))] = true;
  for (int g = 1; g < n; ++g) {
    if (used[static_cast<std::size_t>(g)]) continue;
    std::vector<int> left, right;
    for (int l : r.letters()) {
      if (std::abs(l) < g) left.push_back(l);
      else right.push_back(l > 0 ? l - g : l + g);
    }
    return signature_of_closure(BraidWord(g, std::move(left))) +
           signature_of_closure(BraidWord(n - g, std::move(right)));
  }
  const GoeritzData d = closure_diagram(r);
  return symmetric_signature(d.matrix) - d.mu;
}

}  // namespace gg
