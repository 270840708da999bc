#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algequiv/statespace.hpp"

namespace algequiv {

// Per-channel delays m = (m_1, ..., m_p), m_i >= 0. The associated transfer
// matrix is diag(z^{-m_1}, ..., z^{-m_p}). Normalized form has min(m) = 0.
struct MultiShift {
  std::vector<int> m;

  int p() const { return static_cast<int>(m.size()); }
  bool is_zero() const {
    for (int v : m)
      if (v != 0) return false;
    return true;
  }
  MultiShift normalized() const {
    MultiShift out = *this;
    if (out.m.empty()) return out;
    int lo = out.m[0];
    for (int v : out.m) lo = std::min(lo, v);
    for (int& v : out.m) v -= lo;
    return out;
  }
  bool operator==(const MultiShift& o) const { return m == o.m; }
  bool operator<(const MultiShift& o) const { return m < o.m; }
};

struct ShiftCertificate {
  MultiShift m;
  std::map<std::pair<int, int>, int> b;  // 1-based (i,j) -> exponent, b_ij = m_j - m_i
};

inline RatMatrix multishift_tf(const MultiShift& ms) {
  RatMatrix out(ms.p(), ms.p());
  for (int i = 0; i < ms.p(); ++i) {
    require(ms.m[i] >= 0, Errc::dimension_mismatch, "multi-shift entries must be nonnegative");
    out(i, i) = RatFunc::z_power(-ms.m[i]);
  }
  return out;
}

inline void check_same_oracles(const TransferMatrix& h1, const TransferMatrix& h2) {
  require(h1.H.rows() == h2.H.rows() && h1.H.cols() == h2.H.cols(), Errc::oracle_mismatch,
          "transfer matrices have different dimensions");
  require(h1.oracles.size() == h2.oracles.size(), Errc::oracle_mismatch,
          "oracle label lists have different lengths");
  for (std::size_t i = 0; i < h1.oracles.size(); ++i)
    require(h1.oracles[i] == h2.oracles[i], Errc::oracle_mismatch,
            "oracle channel " + std::to_string(i + 1) + " differs: '" + h1.oracles[i].name +
                "' vs '" + h2.oracles[i].name + "'");
}

// Same oracles and identical transfer functions, entrywise.
inline bool oracle_equivalent(const TransferMatrix& h1, const TransferMatrix& h2) {
  check_same_oracles(h1, h2);
  return h1.H == h2.H;
}

// Delta_m H Delta_m^{-1}: entry (i,j) is multiplied by z^{m_j - m_i}.
// Every entry of the result must stay proper.
inline TransferMatrix conj_by_multishift(const TransferMatrix& h, const MultiShift& ms) {
  require(ms.p() == h.H.rows() && h.H.rows() == h.H.cols(), Errc::dimension_mismatch,
          "multi-shift length must equal the oracle count");
  TransferMatrix out = h;
  for (int i = 0; i < h.H.rows(); ++i)
    for (int j = 0; j < h.H.cols(); ++j) {
      if (h.H(i, j).is_zero()) continue;
      RatFunc v = h.H(i, j) * RatFunc::z_power(ms.m[j] - ms.m[i]);
      require(v.is_proper(), Errc::improper_result,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") becomes improper under the multi-shift");
      out.H(i, j) = v;
    }
  return out;
}

// Decision procedure for H1 = Delta_m H2 Delta_m^{-1}:
//   1. diagonal entries must match;
//   2. sparsity patterns must match;
//   3. off-diagonal ratios H1_ij / H2_ij must be pure powers z^{b_ij};
//   4. b_ij = m_j - m_i must be integer feasible, solved by BFS potentials
//      on the constraint graph, components normalized to min 0.
// The returned certificate is re-verified against the definition.
inline std::optional<ShiftCertificate> shift_equivalent(const TransferMatrix& h1,
                                                        const TransferMatrix& h2) {
  check_same_oracles(h1, h2);
  int p = h1.H.rows();
  ShiftCertificate cert;
  for (int i = 0; i < p; ++i)
    if (h1.H(i, i) != h2.H(i, i)) return std::nullopt;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      if (h1.H(i, j).is_zero() != h2.H(i, j).is_zero()) return std::nullopt;
      if (h1.H(i, j).is_zero()) continue;
      auto b = ratio_pure_shift(h2.H(i, j), h1.H(i, j));
      if (!b) return std::nullopt;
      cert.b[{i + 1, j + 1}] = *b;
    }
  // Difference constraints m_j - m_i = b_ij on the sparsity graph.
  std::vector<int> comp(p, -1), val(p, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(p);  // (neighbor, m_nb - m_self)
  for (auto& [ij, b] : cert.b) {
    int i = ij.first - 1, j = ij.second - 1;
    adj[i].push_back({j, b});
    adj[j].push_back({i, -b});
  }
  int ncomp = 0;
  for (int root = 0; root < p; ++root) {
    if (comp[root] >= 0) continue;
    comp[root] = ncomp;
    val[root] = 0;
    std::vector<int> queue{root};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (auto& [w, d] : adj[v]) {
        if (comp[w] < 0) {
          comp[w] = ncomp;
          val[w] = val[v] + d;
          queue.push_back(w);
        } else if (val[w] != val[v] + d) {
          return std::nullopt;  // contradictory cycle
        }
      }
    }
    ++ncomp;
  }
  // Translate each connected component so its own minimum is 0.
  std::vector<int> lo(ncomp, INT_MAX);
  for (int i = 0; i < p; ++i) lo[comp[i]] = std::min(lo[comp[i]], val[i]);
  cert.m.m.resize(p);
  for (int i = 0; i < p; ++i) cert.m.m[i] = val[i] - lo[comp[i]];
  // Verify the definitional identity before returning.
  TransferMatrix check = conj_by_multishift(h2, cert.m);
  if (check.H != h1.H) return std::nullopt;
  return cert;
}

// Entrywise relative-degree matrix; nullopt encodes +infinity.
inline std::vector<std::vector<std::optional<int>>> relative_degree_matrix(const RatMatrix& h) {
  std::vector<std::vector<std::optional<int>>> r(h.rows());
  for (int i = 0; i < h.rows(); ++i) {
    r[i].resize(h.cols());
    for (int j = 0; j < h.cols(); ++j) r[i][j] = h(i, j).relative_degree();
  }
  return r;
}

// All normalized multi-shifts with max(m) <= cap whose conjugate of `h`
// stays proper (-r_ij <= m_i - m_j <= r_ji), each paired with the conjugated
// transfer matrix. Deterministic lexicographic order.
inline std::vector<std::pair<MultiShift, TransferMatrix>> enumerate_shift_class(
    const TransferMatrix& h, int cap) {
  require(cap >= 0, Errc::dimension_mismatch, "enumeration cap must be nonnegative");
  int p = h.H.rows();
  auto r = relative_degree_matrix(h.H);
  std::vector<std::pair<MultiShift, TransferMatrix>> out;
  std::vector<int> m(p, 0);
  auto feasible = [&]() {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        if (i == j) continue;
        // m_j - m_i <= r_ij keeps entry (i,j) proper; infinite r never binds.
        if (r[i][j] && m[j] - m[i] > *r[i][j]) return false;
      }
    return true;
  };
  while (true) {
    bool has_zero = false;
    for (int v : m) has_zero = has_zero || v == 0;
    if (has_zero && feasible()) {
      MultiShift ms{m};
      out.push_back({ms, conj_by_multishift(h, ms)});
    }
    int i = p - 1;
    while (i >= 0 && m[i] == cap) m[i--] = 0;
    if (i < 0) break;
    ++m[i];
  }
  return out;
}

}  // namespace algequiv
