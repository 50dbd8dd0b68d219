// linalg.hpp — small dense complex matrices, Hermitian Jacobi eigensolver,
// and a symmetric tridiagonal QL solver. Everything here is sized for the
// problem at hand (dense dims <= 8, tridiagonal dims of a few hundred).

#pragma once

#include <complex>
#include <vector>

namespace mnv {

using cplx = std::complex<double>;

// Row-major dense complex matrix, dim x dim.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

  static CMat identity(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

  CMat adjoint() const;
  cplx trace() const;
  double max_abs() const;
  // max_ij |A_ij - conj(A_ji)|
  double hermiticity_defect() const;

  CMat operator*(const CMat& rhs) const;
  std::vector<cplx> operator*(const std::vector<cplx>& v) const;
  CMat operator+(const CMat& rhs) const;
  CMat operator-(const CMat& rhs) const;
  CMat scaled(cplx s) const;

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMat vectors;                // columns are eigenvectors
};

// Cyclic Jacobi for Hermitian matrices (complex rotations), tolerance on the
// off-diagonal Frobenius norm. Intended for dim <= 8.
EigenSystem eigh(const CMat& h, double tol = 1e-13);

// Eigenvalues (and optionally eigenvectors in `z`, pre-seeded with the basis
// change that produced the tridiagonal form, usually identity) of a symmetric
// tridiagonal matrix given by diagonal d and off-diagonal e (size n-1).
// QL with implicit shifts; values come back sorted ascending together with
// the corresponding vector columns.
void tridiag_eigh(std::vector<double>& d, std::vector<double>& e,
                  std::vector<std::vector<double>>* z);

double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mnv
