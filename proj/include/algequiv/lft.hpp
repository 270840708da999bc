#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algequiv/equiv.hpp"

namespace algequiv {

// Invertible 2p x 2p block transfer matrix M = [P Q; R S] relating the graph
// of one oracle family to another: [y1; u1] = M [y2; u2].
struct LftMatrix {
  RatMatrix P, Q, R, S;
  std::string note;

  LftMatrix(RatMatrix p_, RatMatrix q_, RatMatrix r_, RatMatrix s_, std::string note_ = "")
      : P(std::move(p_)), Q(std::move(q_)), R(std::move(r_)), S(std::move(s_)),
        note(std::move(note_)) {
    require(P.rows() == P.cols() && Q.rows() == Q.cols() && R.rows() == R.cols() &&
                S.rows() == S.cols() && P.rows() == Q.rows() && P.rows() == R.rows() &&
                P.rows() == S.rows(),
            Errc::dimension_mismatch, "LFT blocks must be square and equally sized");
    require(is_invertible(full()), Errc::singular, "LFT block matrix is singular");
  }

  int p() const { return P.rows(); }

  RatMatrix full() const {
    RatMatrix m(2 * p(), 2 * p());
    m.set_block(0, 0, P);
    m.set_block(0, p(), Q);
    m.set_block(p(), 0, R);
    m.set_block(p(), p(), S);
    return m;
  }

  static LftMatrix from_full(const RatMatrix& m, std::string note = "") {
    require(m.rows() == m.cols() && m.rows() % 2 == 0, Errc::dimension_mismatch,
            "full LFT matrix must be square of even dimension");
    int p = m.rows() / 2;
    return LftMatrix(m.block(0, 0, p, p), m.block(0, p, p, p), m.block(p, 0, p, p),
                     m.block(p, p, p, p), std::move(note));
  }

  LftMatrix inverted() const { return from_full(inverse(full()), "inverse of " + note); }
};

// ---------------------------------------------------------------------------
// Closed-form linear relations between {subdiff, subdiff_conj, prox,
// prox_conj} on a common function symbol. prox carries stepsize t and
// represents prox_{t f}; prox_conj represents prox_{(1/t) f*}. The returned
// M satisfies graph(from) = M * graph(to).

inline LftMatrix prox_table(OracleKind from, OracleKind to, const RatFunc& t) {
  require(from != OracleKind::generic && to != OracleKind::generic, Errc::unsupported_pair,
          "no closed-form relation for generic oracles");
  require(!t.is_zero(), Errc::unsupported_pair, "prox relations need a nonzero stepsize");
  auto scalar = [](const RatFunc& a, const RatFunc& b, const RatFunc& c, const RatFunc& d,
                   std::string note) {
    RatMatrix p(1, 1), q(1, 1), r(1, 1), s(1, 1);
    p(0, 0) = a;
    q(0, 0) = b;
    r(0, 0) = c;
    s(0, 0) = d;
    return LftMatrix(p, q, r, s, std::move(note));
  };
  const RatFunc one(1L), zero;
  const RatFunc tinv = t.inverse();
  std::string note = std::string(kind_name(from)) + "<-" + kind_name(to);
  if (from == to) return scalar(one, zero, zero, one, note);
  switch (from) {
    case OracleKind::subdiff:
      if (to == OracleKind::subdiff_conj) return scalar(zero, one, one, zero, note);
      if (to == OracleKind::prox) return scalar(zero, one, tinv, -tinv, note);
      return scalar(t, -t, zero, one, note);  // -> prox_conj
    case OracleKind::subdiff_conj:
      if (to == OracleKind::subdiff) return scalar(zero, one, one, zero, note);
      if (to == OracleKind::prox) return scalar(tinv, -tinv, zero, one, note);
      return scalar(zero, one, t, -t, note);  // -> prox_conj
    case OracleKind::prox:
      if (to == OracleKind::subdiff) return scalar(one, t, one, zero, note);
      if (to == OracleKind::subdiff_conj) return scalar(t, one, zero, one, note);
      return scalar(t, zero, t, -t, note);  // -> prox_conj
    case OracleKind::prox_conj:
      if (to == OracleKind::subdiff) return scalar(tinv, one, zero, one, note);
      if (to == OracleKind::subdiff_conj) return scalar(one, tinv, one, zero, note);
      return scalar(tinv, zero, tinv, -tinv, note);  // -> prox
    default:
      break;
  }
  raise(Errc::unsupported_pair, "unsupported oracle pair");
}

// Embeds a single-channel relation at `index` (1-based) among p channels,
// identity on the common channels.
inline LftMatrix embed_common(const LftMatrix& m2, int index, int p) {
  require(m2.p() == 1, Errc::dimension_mismatch, "embed_common expects a 1-channel relation");
  require(index >= 1 && index <= p, Errc::dimension_mismatch, "channel index out of range");
  RatMatrix P = RatMatrix::identity(p), Q(p, p), R(p, p), S = RatMatrix::identity(p);
  P(index - 1, index - 1) = m2.P(0, 0);
  Q(index - 1, index - 1) = m2.Q(0, 0);
  R(index - 1, index - 1) = m2.R(0, 0);
  S(index - 1, index - 1) = m2.S(0, 0);
  return LftMatrix(P, Q, R, S, m2.note + " on channel " + std::to_string(index));
}

// Residual [I -H1] M [H2; I]; LFT equivalence holds iff it vanishes.
inline RatMatrix lft_residual(const RatMatrix& h1, const RatMatrix& h2, const LftMatrix& m) {
  int p = m.p();
  require(h1.rows() == p && h1.cols() == p && h2.rows() == p && h2.cols() == p,
          Errc::dimension_mismatch, "transfer matrices do not conform with the LFT relation");
  return m.P * h2 + m.Q - h1 * (m.R * h2 + m.S);
}

// Theorem-style algebraic test. Also evaluates the dual identity
// [I -H2] M^{-1} [H1; I] = 0 and insists the two verdicts agree.
inline bool lft_equivalent(const TransferMatrix& h1, const TransferMatrix& h2,
                           const LftMatrix& m) {
  bool primal = lft_residual(h1.H, h2.H, m).all_zero();
  LftMatrix minv = m.inverted();
  bool dual = lft_residual(h2.H, h1.H, minv).all_zero();
  require(primal == dual, Errc::internal, "primal and dual LFT identities disagree");
  return primal;
}

// H1 = (P H2 + Q)(R H2 + S)^{-1}, verified via lft_equivalent before
// returning. Oracle labels can be supplied by the caller; by default the
// input labels are kept.
inline TransferMatrix lft_transform(const TransferMatrix& h2, const LftMatrix& m,
                                    std::optional<std::vector<OracleSig>> new_oracles =
                                        std::nullopt) {
  RatMatrix den = m.R * h2.H + m.S;
  require(is_invertible(den), Errc::singular_denominator,
          "(R H + S) is singular over the rational-function field");
  TransferMatrix out;
  out.H = (m.P * h2.H + m.Q) * inverse(den);
  out.oracles = new_oracles ? *new_oracles : h2.oracles;
  require(lft_equivalent(out, h2, m), Errc::internal, "lft_transform failed its own check");
  return out;
}

// Permutes oracle channels: new channel i is old channel perm[i] (0-based).
inline TransferMatrix swap_oracles(const TransferMatrix& h, const std::vector<int>& perm) {
  int p = h.H.rows();
  require(static_cast<int>(perm.size()) == p, Errc::dimension_mismatch, "permutation length");
  TransferMatrix out;
  out.H = RatMatrix(p, p);
  out.oracles.resize(p);
  for (int i = 0; i < p; ++i) {
    require(perm[i] >= 0 && perm[i] < p, Errc::dimension_mismatch, "permutation entry");
    out.oracles[i] = h.oracles[perm[i]];
    for (int j = 0; j < p; ++j) out.H(i, j) = h.H(perm[i], perm[j]);
  }
  return out;
}

// Conjugation by diag(1, ..., C at `index`, ..., 1) for an oracle commuting
// with the scalar LTI system C: row `index` scaled by C, column by C^{-1}.
// With C = z^{-m} this is conj_by_multishift on one channel.
inline TransferMatrix commutation_transform(const TransferMatrix& h, const RatFunc& c,
                                            int index) {
  require(!c.is_zero(), Errc::zero_input, "commutation factor must be nonzero");
  int p = h.H.rows();
  require(index >= 1 && index <= p, Errc::dimension_mismatch, "channel index out of range");
  TransferMatrix out = h;
  for (int j = 0; j < p; ++j) {
    if (j != index - 1) {
      out.H(index - 1, j) = h.H(index - 1, j) * c;
      out.H(j, index - 1) = h.H(j, index - 1) / c;
    }
  }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      require(out.H(i, j).is_proper(), Errc::improper_result,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") becomes improper under the commutation transform");
  return out;
}

// Row `index` scaled by A, column `index` scaled by B^{-1}; the equivariance
// relation phi1(A y) = B phi2(y).
inline TransferMatrix equivariance_transform(const TransferMatrix& h, const RatFunc& a,
                                             const RatFunc& b, int index) {
  require(!a.is_zero() && !b.is_zero(), Errc::zero_input,
          "equivariance factors must be nonzero");
  int p = h.H.rows();
  require(index >= 1 && index <= p, Errc::dimension_mismatch, "channel index out of range");
  TransferMatrix out = h;
  for (int j = 0; j < p; ++j) out.H(index - 1, j) = out.H(index - 1, j) * a;
  for (int i = 0; i < p; ++i) out.H(i, index - 1) = out.H(i, index - 1) / b;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      require(out.H(i, j).is_proper(), Errc::improper_result,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") becomes improper under the equivariance transform");
  return out;
}

namespace detail {

inline std::string conj_name(const std::string& base) {
  const std::string suffix = "~conj";
  if (base.size() > suffix.size() &&
      base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0)
    return base.substr(0, base.size() - suffix.size());
  return base + suffix;
}

inline OracleSig derived_sig(const OracleSig& from, OracleKind to, const RatFunc& t) {
  OracleSig out = from;
  out.kind = to;
  bool conj_from = from.kind == OracleKind::prox_conj || from.kind == OracleKind::subdiff_conj;
  bool conj_to = to == OracleKind::prox_conj || to == OracleKind::subdiff_conj;
  if (conj_from != conj_to) out.name = conj_name(from.name);
  if (to == OracleKind::prox || to == OracleKind::prox_conj) {
    out.step = t.is_constant() ? t.as_rational().get_str() : t.str();
  } else {
    out.step.clear();
  }
  return out;
}

}  // namespace detail

// Rewrites the oracle on `channel` (1-based) into the `target` kind using the
// closed forms for prox sources (needs (I - H22) invertible) and
// subdifferential sources (needs H22 invertible). The closed form is checked
// against the generic lft_transform route before returning.
inline TransferMatrix prox_family_transform(const TransferMatrix& h, int channel,
                                            OracleKind target,
                                            std::optional<RatFunc> step = std::nullopt) {
  int p = h.H.rows();
  require(channel >= 1 && channel <= p, Errc::dimension_mismatch, "channel index out of range");
  OracleKind from = h.oracles[channel - 1].kind;
  require(from == OracleKind::prox || from == OracleKind::subdiff, Errc::unsupported_pair,
          "the transformed channel must be a prox or subdiff oracle");
  RatFunc t;
  if (step) {
    t = *step;
  } else if (!h.oracles[channel - 1].step.empty()) {
    t = parse_ratfunc(h.oracles[channel - 1].step);
  } else {
    t = RatFunc::param("t");
  }

  // Permute the transformed channel to the last position.
  std::vector<int> perm;
  for (int i = 0; i < p; ++i)
    if (i != channel - 1) perm.push_back(i);
  perm.push_back(channel - 1);
  TransferMatrix hp = swap_oracles(h, perm);

  int q = p - 1;
  RatMatrix h11 = hp.H.block(0, 0, q, q), h12 = hp.H.block(0, q, q, 1);
  RatMatrix h21 = hp.H.block(q, 0, 1, q), h22 = hp.H.block(q, q, 1, 1);
  RatMatrix eye1 = RatMatrix::identity(1);
  RatMatrix out(p, p);
  const RatFunc tinv = t.inverse();

  if (from == target) {
    out = hp.H;
  } else if (from == OracleKind::prox) {
    RatMatrix imh = eye1 - h22;
    require(is_invertible(imh), Errc::singular_block, "(I - H22) is singular");
    RatMatrix w = inverse(imh);
    if (target == OracleKind::prox_conj) {
      out.set_block(0, 0, h11 + h12 * w * h21);
      out.set_block(0, q, (h12 * w) * (-t));
      out.set_block(q, 0, (w * h21) * tinv);
      out.set_block(q, q, -(h22 * w));
    } else if (target == OracleKind::subdiff) {
      out.set_block(0, 0, h11 + h12 * w * h21);
      out.set_block(0, q, (h12 * w) * (-t));
      out.set_block(q, 0, w * h21);
      out.set_block(q, q, w * (-t));
    } else {  // subdiff_conj
      out.set_block(0, 0, h11);
      out.set_block(0, q, h12);
      out.set_block(q, 0, h21 * tinv);
      out.set_block(q, q, (eye1 - h22) * (-tinv));
    }
  } else {  // from == subdiff
    if (target == OracleKind::prox_conj) {
      out.set_block(0, 0, h11);
      out.set_block(0, q, h12);
      out.set_block(q, 0, h21 * tinv);
      out.set_block(q, q, h22 * tinv + eye1);
    } else {
      require(is_invertible(h22), Errc::singular_block, "H22 is singular");
      RatMatrix v = inverse(h22);
      out.set_block(0, 0, h11 - h12 * v * h21);
      out.set_block(0, q, h12 * v);
      if (target == OracleKind::subdiff_conj) {
        out.set_block(q, 0, -(v * h21));
        out.set_block(q, q, v);
      } else {  // prox
        out.set_block(q, 0, (v * h21) * (-t));
        out.set_block(q, q, eye1 + v * t);
      }
    }
  }

  TransferMatrix res;
  res.H = out;
  res.oracles = hp.oracles;
  res.oracles[p - 1] = detail::derived_sig(hp.oracles[p - 1], target, t);

  // The closed form must agree with the generic route before it is returned.
  LftMatrix m = embed_common(prox_table(target, from, t), p, p);
  TransferMatrix generic = lft_transform(hp, m, res.oracles);
  require(generic.H == res.H, Errc::internal,
          "closed-form prox transform disagrees with the generic LFT route");

  // Permute back to the original channel order.
  std::vector<int> inv(p);
  for (int i = 0; i < p; ++i) inv[perm[i]] = i;
  return swap_oracles(res, inv);
}

}  // namespace algequiv
