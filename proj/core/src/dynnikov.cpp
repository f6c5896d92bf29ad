#include "gg/dynnikov.hpp"

#include <cmath>
#include <stdexcept>

namespace gg {

DynnikovCoords::DynnikovCoords(int strands, std::vector<mpz_class> values) : n_(strands), c_(std::move(values)) {
  if (n_ < 3) throw std::invalid_argument("DynnikovCoords: need at least 3 strands");
  if (c_.size() != static_cast<std::size_t>(2 * n_ - 4)) {
    throw std::invalid_argument("DynnikovCoords: expected 2n - 4 coordinates");
  }
}

DynnikovCoords DynnikovCoords::unit(int strands, std::size_t index, int sign) {
  std::vector<mpz_class> v(static_cast<std::size_t>(std::max(0, 2 * strands - 4)));
  if (index >= v.size()) throw std::invalid_argument("DynnikovCoords::unit: index out of range");
  v[index] = sign;
  return DynnikovCoords(strands, std::move(v));
}

mpz_class DynnikovCoords::l1_norm() const {
  mpz_class s = 0;
  for (const auto& x : c_) s += abs(x);
  return s;
}

std::string DynnikovCoords::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i > 0) out += i == c_.size() / 2 ? "; " : ", ";
    out += c_[i].get_str();
  }
  return out + ")";
}

namespace {

mpz_class pos(const mpz_class& x) { return sgn(x) > 0 ? x : mpz_class(0); }
mpz_class neg(const mpz_class& x) { return sgn(x) < 0 ? x : mpz_class(0); }

}  // namespace

DynnikovCoords& dynnikov_apply(DynnikovCoords& coords, int letter) {
  const int n = coords.n_;
  const int i = std::abs(letter);
  if (letter == 0 || i >= n) throw std::invalid_argument("dynnikov_step: letter out of range");
  const std::size_t m = static_cast<std::size_t>(n - 2);
  auto& c = coords.c_;
  auto a = [&](std::size_t k) -> mpz_class& { return c[k]; };
  auto b = [&](std::size_t k) -> mpz_class& { return c[m + k]; };

  if (i == 1) {
    const mpz_class a0 = a(0), b0 = b(0);
    if (letter > 0) {
      b(0) = a0 + pos(b0);
      a(0) = -b0 + pos(b(0));
    } else {
      b(0) = pos(b0) - a0;
      a(0) = b0 - pos(b(0));
    }
  } else if (i == n - 1) {
    const std::size_t k = m - 1;
    const mpz_class ak = a(k), bk = b(k);
    if (letter > 0) {
      b(k) = ak + neg(bk);
      a(k) = -bk + neg(b(k));
    } else {
      b(k) = neg(bk) - ak;
      a(k) = bk - neg(b(k));
    }
  } else {
    const auto k0 = static_cast<std::size_t>(i - 2);
    const auto k1 = static_cast<std::size_t>(i - 1);
    const mpz_class ap = a(k0), bp = b(k0), aa = a(k1), bb = b(k1);
    if (letter > 0) {
      const mpz_class d = ap - aa - pos(bb) + neg(bp);
      a(k0) = ap - pos(bp) - pos(mpz_class(pos(bb) + d));
      b(k0) = bb + neg(d);
      a(k1) = aa - neg(bb) - neg(mpz_class(neg(bp) - d));
      b(k1) = bp - neg(d);
    } else {
      const mpz_class e = ap - aa + pos(bb) - neg(bp);
      a(k0) = ap + pos(bp) + pos(mpz_class(pos(bb) - e));
      b(k0) = bb - pos(e);
      a(k1) = aa + neg(bb) + neg(mpz_class(neg(bp) + e));
      b(k1) = bp + pos(e);
    }
  }
  return coords;
}

DynnikovCoords dynnikov_step(DynnikovCoords c, int letter) {
  dynnikov_apply(c, letter);
  return c;
}

DynnikovCoords dynnikov_act(DynnikovCoords c, const BraidWord& w) {
  if (w.strands() != c.strands()) throw std::invalid_argument("dynnikov_act: strand count mismatch");
  for (int l : w.letters()) dynnikov_apply(c, l);
  return c;
}

namespace {

double log_of(const mpz_class& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// True when N_{k+2P} - 2 N_{k+P} + N_k = 0 for every k in [start, end - 2P].
bool eventually_quasi_linear(const std::vector<mpz_class>& norms, std::size_t start) {
  const std::size_t end = norms.size();
  const std::size_t max_period = (end - start) / 3;
  for (std::size_t p = 1; p <= max_period; ++p) {
    bool ok = true;
    for (std::size_t k = start; k + 2 * p < end && ok; ++k) {
      ok = norms[k + 2 * p] - 2 * norms[k + p] + norms[k] == 0;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

double braid_entropy_estimate(const BraidWord& w, int iters) {
  const BraidWord r = w.reduced();
  if (r.empty()) return 0.0;
  if (r.strands() < 3) return 0.0;  // B_2 is abelian: every braid is periodic
  if (iters < 10) throw std::invalid_argument("braid_entropy_estimate: iters must be at least 10");
  const int n = r.strands();
  const std::size_t dim = static_cast<std::size_t>(2 * n - 4);
  const auto count = static_cast<std::size_t>(iters);
  const std::size_t start = count / 2;

  double best = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    for (int sign : {1, -1}) {
      DynnikovCoords c = DynnikovCoords::unit(n, j, sign);
      std::vector<mpz_class> norms;
      norms.reserve(count);
      for (std::size_t k = 0; k < count; ++k) {
        for (int l : r.letters()) dynnikov_apply(c, l);
        norms.push_back(c.l1_norm());
      }
      if (eventually_quasi_linear(norms, start)) continue;
      // Least-squares slope of log N_k against k over the window.
      const double len = static_cast<double>(count - start);
      double mx = 0.0, my = 0.0;
      std::vector<double> ys(count - start);
      for (std::size_t k = start; k < count; ++k) {
        ys[k - start] = log_of(norms[k]);
        mx += static_cast<double>(k);
        my += ys[k - start];
      }
      mx /= len;
      my /= len;
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t k = start; k < count; ++k) {
        const double dx = static_cast<double>(k) - mx;
        sxy += dx * (ys[k - start] - my);
        sxx += dx * dx;
      }
      best = std::max(best, sxy / sxx);
    }
  }
  return best;
}

ReducibilityVerdict is_probably_reducible(const BraidWord& w, int iters, double threshold) {
  ReducibilityVerdict v;
  const BraidWord r = w.reduced();
  if (r.empty()) {
    v.reducible_or_periodic = true;
    v.reason = "empty";
    return v;
  }
  const int n = r.strands();
  for (const auto& comp : crossing_components(r)) {
    if (comp.size() >= 2 && static_cast<int>(comp.size()) < n) {
      v.reducible_or_periodic = true;
      v.witness = comp;
      v.reason = "confined";
      return v;
    }
  }
  v.entropy = braid_entropy_estimate(r, iters);
  v.reducible_or_periodic = v.entropy < threshold;
  v.reason = v.reducible_or_periodic ? "low-entropy" : "pseudo-anosov-like";
  return v;
}

}  // namespace gg
