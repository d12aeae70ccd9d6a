#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "majorana/chain.hpp"
#include "majorana/errors.hpp"

namespace majorana {

// Result of bringing A into block form: W A W^T = diag of [[0, eps_m], [-eps_m, 0]]
// with eps_m >= 0 ascending. Rows 2m, 2m+1 of W hold the Majorana-basis
// components of the canonical pair (gamma'_{2m+1}, gamma'_{2m+2}).
struct CanonicalForm {
  int n_sites = 0;
  Eigen::MatrixXd w;             // 2N x 2N, real orthogonal
  std::vector<double> epsilons;  // N values, ascending
  int det_w = 1;                 // +1 or -1, tracked exactly
  double residual = 0.0;         // max |W A W^T - canonical form|
};

namespace detail {

// Rotate rows (row1, row2) of w inside their span so row1 carries the maximal
// weight on the first n_left components, then flip signs so the largest-|.|
// entry of row1 is positive. Both operations are special orthogonal on the
// pair, so canonical 2x2 blocks and det W are preserved. Returns the achieved
// weight (largest eigenvalue of the 2x2 overlap form).
inline double localize_rows(Eigen::MatrixXd& w, int row1, int row2, int n_left) {
  const double p = w.row(row1).head(n_left).squaredNorm();
  const double r = w.row(row2).head(n_left).squaredNorm();
  const double q = w.row(row1).head(n_left).dot(w.row(row2).head(n_left));

  const double d = std::hypot(0.5 * (p - r), q);
  const double lam = 0.5 * (p + r) + d;

  double c = 1.0, s = 0.0;
  if (d > 0.0) {
    // Eigenvector of [[p, q], [q, r]] for lam; pick the better-conditioned form.
    double x, y;
    if (std::abs(lam - p) > std::abs(lam - r)) {
      x = q;
      y = lam - p;
    } else {
      x = lam - r;
      y = q;
    }
    const double norm = std::hypot(x, y);
    if (norm > 0.0) {
      c = x / norm;
      s = y / norm;
    }
  }

  Eigen::RowVectorXd m1 = c * w.row(row1) + s * w.row(row2);
  Eigen::RowVectorXd m2 = -s * w.row(row1) + c * w.row(row2);
  Eigen::Index imax = 0;
  m1.cwiseAbs().maxCoeff(&imax);
  if (m1(imax) < 0.0) {
    m1 = -m1;
    m2 = -m2;
  }
  w.row(row1) = m1;
  w.row(row2) = m2;
  return lam;
}

inline int permutation_sign(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int length = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)])
      seen[static_cast<std::size_t>(j)] = true, ++length;
    if (length % 2 == 0) sign = -sign;
  }
  return sign;
}

inline int unit_determinant(const Eigen::MatrixXd& m, const char* where) {
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
  const double rounded = std::round(det);
  if (std::abs(rounded) != 1.0 || std::abs(det - rounded) > 1e-10)
    throw numerical_error(std::string(where) + ": determinant " + std::to_string(det) +
                          " is not +-1; matrix is not numerically orthogonal");
  return static_cast<int>(rounded);
}

}  // namespace detail

// Real Schur route: A = U T U^T with T quasi-triangular. For antisymmetric A
// the standardized T is exactly the canonical block pattern up to block order
// and sign, so W starts as U^T and is fixed up by row swaps and a stable sort.
inline CanonicalForm canonicalize(const MajoranaForm& form, double zero_tol = 1e-12) {
  const Eigen::MatrixXd& a = form.matrix;
  const int n = static_cast<int>(a.rows());
  if (n == 0 || n != static_cast<int>(a.cols()) || n != 2 * form.n_sites)
    throw std::invalid_argument("canonicalize: matrix must be 2 n_sites x 2 n_sites");
  const double magnitude = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-13 * magnitude)
    throw std::invalid_argument("canonicalize: matrix is not antisymmetric");

  Eigen::RealSchur<Eigen::MatrixXd> schur(a);
  if (schur.info() != Eigen::Success)
    throw numerical_error("canonicalize: Schur iteration did not converge");
  const Eigen::MatrixXd& t = schur.matrixT();
  Eigen::MatrixXd w0 = schur.matrixU().transpose();

  // Partition T into 2x2 blocks (conjugate eigenvalue pair +-i eps) and 1x1
  // zero blocks. A 1x1 block of an antisymmetric matrix must be a zero mode;
  // anything larger signals a broken input.
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> singles;
  for (int i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      pairs.emplace_back(i, i + 1);
      i += 2;
    } else {
      if (std::abs(t(i, i)) > zero_tol * magnitude)
        throw numerical_error("canonicalize: real Schur eigenvalue " + std::to_string(t(i, i)) +
                              " exceeds the zero tolerance");
      singles.push_back(i);
      ++i;
    }
  }
  if (singles.size() % 2 != 0)
    throw numerical_error("canonicalize: odd number of zero Schur blocks");
  for (std::size_t k = 0; k + 1 < singles.size(); k += 2)
    pairs.emplace_back(singles[k], singles[k + 1]);

  // Coupling of each Schur row pair under A; the sign fixes the row order
  // inside the block, the magnitude is the quasiparticle energy.
  struct Entry {
    double eps;
    int first, second;
  };
  std::vector<Entry> entries;
  entries.reserve(pairs.size());
  for (const auto& [r1, r2] : pairs) {
    const double beta = (w0.row(r1) * a * w0.row(r2).transpose()).value();
    if (beta >= 0.0)
      entries.push_back({beta, r1, r2});
    else
      entries.push_back({-beta, r2, r1});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.eps < y.eps; });

  std::vector<int> perm;  // perm[new row] = old row
  perm.reserve(static_cast<std::size_t>(n));
  for (const Entry& e : entries) {
    perm.push_back(e.first);
    perm.push_back(e.second);
  }

  CanonicalForm canon;
  canon.n_sites = form.n_sites;
  canon.w.resize(n, n);
  for (int i = 0; i < n; ++i) canon.w.row(i) = w0.row(perm[static_cast<std::size_t>(i)]);
  canon.epsilons.reserve(entries.size());
  for (const Entry& e : entries) canon.epsilons.push_back(e.eps);

  // Track det W exactly (Schur factor times the row permutation parity) and
  // cross-check against an independent LU determinant of the final matrix.
  canon.det_w = detail::unit_determinant(w0, "canonicalize") * detail::permutation_sign(perm);
  if (detail::unit_determinant(canon.w, "canonicalize") != canon.det_w)
    throw numerical_error("canonicalize: tracked determinant disagrees with LU determinant");

  if ((canon.w * canon.w.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() >=
      1e-10)
    throw numerical_error("canonicalize: transform lost orthogonality");

  Eigen::MatrixXd r = canon.w * a * canon.w.transpose();
  for (int m = 0; m < form.n_sites; ++m) {
    r(2 * m, 2 * m + 1) -= canon.epsilons[static_cast<std::size_t>(m)];
    r(2 * m + 1, 2 * m) += canon.epsilons[static_cast<std::size_t>(m)];
  }
  canon.residual = r.cwiseAbs().maxCoeff();
  const double bound = 1e-9 * std::max(1.0, canon.epsilons.back());
  if (canon.residual >= bound)
    throw numerical_error("canonicalize: residual " + std::to_string(canon.residual) +
                          " exceeds bound " + std::to_string(bound));
  return canon;
}

// Number of quasiparticle energies strictly below the tolerance.
inline int zero_mode_count(const CanonicalForm& canon, double energy_tol = 0.002) {
  return static_cast<int>(std::count_if(canon.epsilons.begin(), canon.epsilons.end(),
                                        [energy_tol](double e) { return e < energy_tol; }));
}

// Lowest canonical pair after the localizing gauge rotation. Components are
// over the site-Majorana basis (entries 2j-1, 2j belong to site j), and
// localization is the weight of gamma1 on the left half of the chain.
struct ZeroModePair {
  Eigen::VectorXd gamma1_components;
  Eigen::VectorXd gamma2_components;
  double eps1 = 0.0;
  double localization = 0.0;
};

// Rotate the lowest canonical pair in place to the localized gauge. Valid for
// any eps1 (the rotation commutes with the block), so callers that need a
// reproducible phase convention can apply it unconditionally. Returns the
// localization of the rotated first row.
inline double gauge_fix_lowest_pair(CanonicalForm& canon) {
  if (canon.w.rows() < 2) throw std::invalid_argument("gauge_fix_lowest_pair: empty form");
  return detail::localize_rows(canon.w, 0, 1, canon.n_sites);
}

// Extract the lowest pair as near-zero modes; requires eps1 below tolerance.
// The input form is not modified.
inline ZeroModePair extract_zero_modes(const CanonicalForm& canon, double energy_tol = 0.002) {
  if (canon.epsilons.empty()) throw std::invalid_argument("extract_zero_modes: empty form");
  if (!(canon.epsilons.front() < energy_tol))
    throw empty_result_error("extract_zero_modes: lowest energy " +
                             std::to_string(canon.epsilons.front()) +
                             " is not below the tolerance " + std::to_string(energy_tol));
  Eigen::MatrixXd rows = canon.w.topRows(2);
  ZeroModePair pair;
  pair.localization = detail::localize_rows(rows, 0, 1, canon.n_sites);
  pair.gamma1_components = rows.row(0).transpose();
  pair.gamma2_components = rows.row(1).transpose();
  pair.eps1 = canon.epsilons.front();
  return pair;
}

}  // namespace majorana
