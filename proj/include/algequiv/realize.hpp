#pragma once

#include <string>
#include <vector>

#include "algequiv/statespace.hpp"

namespace algequiv {

// Markov parameters M_0, M_1, ..., M_k of a proper transfer matrix with all
// parameters instantiated: H(z) = M_0 + M_1 z^{-1} + M_2 z^{-2} + ...
struct MarkovSequence {
  QMatrix M0;
  std::vector<QMatrix> tail;  // M_1 .. M_count

  const QMatrix& at(int k) const {  // k >= 1
    return tail.at(k - 1);
  }
};

inline MarkovSequence markov(const TransferMatrix& h, int count) {
  int p = h.H.rows(), m = h.H.cols();
  MarkovSequence seq;
  seq.M0 = QMatrix(p, m);
  seq.tail.assign(count, QMatrix(p, m));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < m; ++j) {
      require(h.H(i, j).is_numeric(), Errc::free_parameter,
              "Markov parameters need instantiated parameters at entry (" +
                  std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      require(h.H(i, j).is_proper(), Errc::improper_entry,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") is improper");
      std::vector<Rational> c = h.H(i, j).series(count);
      seq.M0(i, j) = c[0];
      for (int k = 1; k <= count; ++k) seq.tail[k - 1](i, j) = c[k];
    }
  return seq;
}

// Block-N x N Hankel matrix assembled from M_1 .. M_{2N-1}, plus the shifted
// block matrix from M_2 .. M_{2N}.
struct HankelBlock {
  int N = 0;
  QMatrix data;     // block (i,j) = M_{i+j-1}
  QMatrix shifted;  // block (i,j) = M_{i+j}
};

inline HankelBlock hankel_block(const TransferMatrix& h, int N) {
  require(N >= 1, Errc::dimension_mismatch, "Hankel truncation order must be >= 1");
  int p = h.H.rows(), m = h.H.cols();
  MarkovSequence seq = markov(h, 2 * N);
  HankelBlock hb;
  hb.N = N;
  hb.data = QMatrix(p * N, m * N);
  hb.shifted = QMatrix(p * N, m * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      hb.data.set_block(i * p, j * m, seq.at(i + j + 1));
      hb.shifted.set_block(i * p, j * m, seq.at(i + j + 2));
    }
  return hb;
}

inline int hankel_rank(const TransferMatrix& h, int N) {
  return rank(hankel_block(h, N).data);
}

// Truncation order for the Hankel analysis. Starts from the degree of the
// denominator of det H (when the determinant is nonzero) and escalates while
// the rank has not stabilized; the sum of entry denominator degrees is a
// certain upper bound on the minimal order, so the escalation always stops.
inline int default_hankel_order(const TransferMatrix& h) {
  int certain = 0;
  for (int i = 0; i < h.H.rows(); ++i)
    for (int j = 0; j < h.H.cols(); ++j)
      certain += std::max(0, h.H(i, j).den().degree());
  certain = std::max(1, certain);
  int n0 = 1;
  if (h.H.rows() == h.H.cols()) {
    RatFunc det = determinant(h.H);
    if (!det.is_zero()) n0 = std::max(1, det.den().degree());
  }
  int N = std::min(n0, certain);
  while (N < certain && hankel_rank(h, N) != hankel_rank(h, N + 1)) N = std::min(2 * N, certain);
  return N;
}

// Exact Ho-Kalman realization. The SVD of the floating-point formulation is
// replaced by a full-rank factorization from the reduced row echelon form:
// O = pivot columns of H_N, Cf = nonzero rows of rref(H_N), then
// A solves O A Cf = H_N^+ exactly. The result is minimal by construction and
// its transfer function is asserted to equal the input.
namespace detail {

inline StateSpace ho_kalman_at(const TransferMatrix& h, int N) {
  int p = h.H.rows(), m = h.H.cols();
  HankelBlock hb = hankel_block(h, N);

  QMatrix r = hb.data;
  std::vector<int> pivots = rref(r);
  int n = static_cast<int>(pivots.size());

  StateSpace ss;
  ss.oracles = h.oracles;
  if (n == 0) {
    ss.A = RatMatrix(0, 0);
    ss.B = RatMatrix(0, p);
    ss.C = RatMatrix(p, 0);
    ss.D = limit_at_infinity(h.H);
    ss.validate();
    return ss;
  }

  QMatrix obs(p * N, n), ctr(n, m * N);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < p * N; ++i) obs(i, j) = hb.data(i, pivots[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m * N; ++j) ctr(i, j) = r(i, j);

  // O A Cf = H_N^+:  first solve O Y = H_N^+, then A Cf = Y.
  QMatrix y = solve_full_column_rank(obs, hb.shifted);
  QMatrix at = solve_full_column_rank(ctr.transpose(), y.transpose());
  QMatrix a = at.transpose();

  ss.A = q_to_rat(a);
  ss.B = q_to_rat(ctr.block(0, 0, n, m));
  ss.C = q_to_rat(obs.block(0, 0, p, n));
  ss.D = limit_at_infinity(h.H);
  for (int i = 0; i < n; ++i) ss.state_names.push_back("x" + std::to_string(i + 1));
  ss.validate();
  return ss;
}

}  // namespace detail

inline StateSpace ho_kalman(const TransferMatrix& h) {
  require(h.is_numeric(), Errc::free_parameter,
          "ho_kalman needs instantiated parameters (generic rank is refused)");
  int certain = 0;
  for (int i = 0; i < h.H.rows(); ++i)
    for (int j = 0; j < h.H.cols(); ++j)
      certain += std::max(0, h.H(i, j).den().degree());
  certain = std::max(1, certain);
  StateSpace ss = detail::ho_kalman_at(h, default_hankel_order(h));
  if (transfer_function(ss).H != h.H) ss = detail::ho_kalman_at(h, certain);
  require(transfer_function(ss).H == h.H, Errc::internal,
          "Ho-Kalman output does not reproduce the input transfer function");
  return ss;
}

// Minimal realization with the same transfer function.
inline StateSpace minreal(const StateSpace& ss) {
  require(ss.is_numeric(), Errc::free_parameter, "minreal needs instantiated parameters");
  return ho_kalman(transfer_function(ss));
}

}  // namespace algequiv
