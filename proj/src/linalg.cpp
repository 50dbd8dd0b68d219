#include "mnv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mnv {

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::adjoint() const {
  CMat m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double CMat::hermiticity_defect() const {
  double m = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

CMat CMat::operator*(const CMat& rhs) const {
  CMat out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < dim_; ++j) out(i, j) += aik * rhs(k, j);
    }
  return out;
}

std::vector<cplx> CMat::operator*(const std::vector<cplx>& v) const {
  std::vector<cplx> out(dim_, 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

CMat CMat::operator+(const CMat& rhs) const {
  CMat out(dim_);
  for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] + rhs.a_[k];
  return out;
}

CMat CMat::operator-(const CMat& rhs) const {
  CMat out(dim_);
  for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] - rhs.a_[k];
  return out;
}

CMat CMat::scaled(cplx s) const {
  CMat out(dim_);
  for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] * s;
  return out;
}

namespace {

double offdiag_norm(const CMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenSystem eigh(const CMat& h, double tol) {
  const int n = h.dim();
  CMat a = h;
  CMat v = CMat::identity(n);
  const double scale = std::max(h.max_abs(), 1.0);

  for (int sweep = 0; sweep < 100 && offdiag_norm(a) > tol * scale; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        // Unitary 2x2 rotation zeroing a(p,q): standard complex Jacobi.
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const cplx phase = apq / std::abs(apq);
        const cplx s = t * c * phase;

        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - std::conj(s) * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = std::conj(s) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(s) * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = CMat(n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

void tridiag_eigh(std::vector<double>& d, std::vector<double>& e,
                  std::vector<std::vector<double>>* z) {
  // EISPACK tql2-style implicit-shift QL.
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  std::vector<double> sub(n, 0.0);
  for (int i = 0; i < n - 1; ++i) sub[i] = e[i];

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(sub[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) throw std::runtime_error("tridiag_eigh: too many QL iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * sub[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + sub[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * sub[i];
          const double b = c * sub[i];
          r = std::hypot(f, g);
          sub[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            sub[m] = 0.0;
            underflow = (i >= l);
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (auto& row : *z) {
              f = row[i + 1];
              row[i + 1] = s * row[i] + c * f;
              row[i] = c * row[i] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        sub[l] = g;
        sub[m] = 0.0;
      }
    } while (m != l);
  }

  // Sort ascending, permuting vector columns alongside.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });
  std::vector<double> ds(n);
  for (int i = 0; i < n; ++i) ds[i] = d[order[i]];
  d = ds;
  if (z) {
    for (auto& row : *z) {
      std::vector<double> rs(n);
      for (int i = 0; i < n; ++i) rs[i] = row[order[i]];
      row = rs;
    }
  }
}

double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("spearman: need two equal vectors, n >= 2");
  auto ranks = [](const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * (i + j) + 1.0;  // mid-rank for ties
      for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) { mx += rx[i]; my += ry[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace mnv
