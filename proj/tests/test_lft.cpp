#include <doctest.h>

#include "algequiv/corpus.hpp"
#include "algequiv/expr.hpp"
#include "algequiv/lft.hpp"

using namespace algequiv;

namespace {
RatFunc rf(const std::string& s) { return parse_ratfunc(s); }
const RatFunc tsym = RatFunc::param("t");
}

TEST_CASE("prox relation table") {
  LftMatrix m = prox_table(OracleKind::prox, OracleKind::subdiff, tsym);
  CHECK(m.P(0, 0) == rf("1"));
  CHECK(m.Q(0, 0) == rf("t"));
  CHECK(m.R(0, 0) == rf("1"));
  CHECK(m.S(0, 0) == rf("0"));

  LftMatrix swap = prox_table(OracleKind::subdiff, OracleKind::subdiff_conj, tsym);
  CHECK(swap.full() ==
        RatMatrix(2, 2, {rf("0"), rf("1"), rf("1"), rf("0")}));

  CHECK(prox_table(OracleKind::prox, OracleKind::prox, tsym).full() == RatMatrix::identity(2));
  CHECK_THROWS_AS((void)prox_table(OracleKind::generic, OracleKind::prox, tsym), Error);
}

TEST_CASE("every table pair is mutually inverse") {
  const OracleKind kinds[] = {OracleKind::subdiff, OracleKind::subdiff_conj, OracleKind::prox,
                              OracleKind::prox_conj};
  for (auto a : kinds)
    for (auto b : kinds) {
      RatMatrix prod = prox_table(a, b, tsym).full() * prox_table(b, a, tsym).full();
      CHECK(prod == RatMatrix::identity(2));
    }
}

TEST_CASE("table relations compose transitively") {
  const OracleKind kinds[] = {OracleKind::subdiff, OracleKind::subdiff_conj, OracleKind::prox,
                              OracleKind::prox_conj};
  for (auto a : kinds)
    for (auto b : kinds)
      for (auto c : kinds) {
        RatMatrix prod = prox_table(a, b, tsym).full() * prox_table(b, c, tsym).full();
        CHECK(prod == prox_table(a, c, tsym).full());
      }
}

TEST_CASE("embedding a single-channel relation") {
  LftMatrix m2 = prox_table(OracleKind::prox, OracleKind::prox_conj, tsym);
  LftMatrix m = embed_common(m2, 2, 2);
  // [[I,0,0,0],[0,P,0,Q],[0,0,I,0],[0,R,0,S]]
  RatMatrix f = m.full();
  CHECK(f(0, 0) == rf("1"));
  CHECK(f(1, 1) == m2.P(0, 0));
  CHECK(f(1, 3) == m2.Q(0, 0));
  CHECK(f(2, 2) == rf("1"));
  CHECK(f(3, 1) == m2.R(0, 0));
  CHECK(f(3, 3) == m2.S(0, 0));
  CHECK(embed_common(prox_table(OracleKind::prox, OracleKind::prox, tsym), 1, 3).full() ==
        RatMatrix::identity(6));

  // the 6x6 relation used for the Davis-Yin / PD3O check
  RatMatrix six = embed_common(prox_table(OracleKind::prox, OracleKind::prox_conj, tsym), 2, 3)
                      .full();
  RatMatrix want(6, 6);
  want(0, 0) = rf("1");
  want(1, 1) = rf("t");
  want(2, 2) = rf("1");
  want(3, 3) = rf("1");
  want(4, 1) = rf("t");
  want(4, 4) = rf("-t");
  want(5, 5) = rf("1");
  CHECK(six == want);
}

TEST_CASE("identity relation reduces LFT equivalence to oracle equivalence") {
  TransferMatrix h = builtin_tf("davis_yin");
  LftMatrix eye = LftMatrix::from_full(RatMatrix::identity(6));
  CHECK(lft_equivalent(h, h, eye));
  TransferMatrix other = builtin_tf("pd3o");
  CHECK(!lft_equivalent(h, other, eye));
}

TEST_CASE("lft_transform round trips through the inverse relation") {
  TransferMatrix pg = builtin_tf("proximal_gradient");
  LftMatrix m = embed_common(prox_table(OracleKind::prox_conj, OracleKind::prox, tsym), 2, 2);
  TransferMatrix moved = lft_transform(pg, m);
  CHECK(moved.H == builtin_tf("proximal_gradient_conj").H);
  TransferMatrix back = lft_transform(moved, m.inverted());
  CHECK(back.H == pg.H);
  // the identity relation leaves the transfer function unchanged
  CHECK(lft_transform(pg, LftMatrix::from_full(RatMatrix::identity(4))).H == pg.H);
}

TEST_CASE("singular matrices are rejected") {
  RatMatrix bad(2, 2, {rf("1"), rf("1"), rf("1"), rf("1")});
  CHECK_THROWS_AS((void)LftMatrix::from_full(bad), Error);
}

TEST_CASE("swap_oracles") {
  TransferMatrix dy = builtin_tf("davis_yin");
  TransferMatrix sw = swap_oracles(dy, {0, 2, 1});
  CHECK(sw.H(0, 0) == dy.H(0, 0));
  CHECK(sw.H(1, 1) == dy.H(2, 2));
  CHECK(sw.H(1, 2) == dy.H(2, 1));
  CHECK(sw.oracles[1].name == "grad_h");
  CHECK(swap_oracles(sw, {0, 2, 1}).H == dy.H);
  CHECK(swap_oracles(dy, {0, 1, 2}).H == dy.H);
}

TEST_CASE("commutation transform") {
  TransferMatrix dr = builtin_tf("douglas_rachford");
  // a linear first prox commutes with 1/(z - alpha); conjugating gives the
  // corresponding variant of DR
  TransferMatrix got = commutation_transform(dr, rf("z - alpha"), 1);
  CHECK(got.H == RatMatrix(2, 2,
                           {rf("-1/(z - 1)"), rf("(z - alpha)/(z - 1)"),
                            rf("(2*z - 1)/((z - 1)*(z - alpha))"), rf("-1/(z - 1)")}));
  CHECK(got.H == builtin_tf("dr_quadratic").H);

  CHECK(commutation_transform(dr, rf("1"), 1).H == dr.H);
  // C = z^{-1} on channel 1 is the (1,0) multi-shift
  CHECK(commutation_transform(builtin_tf("admm"), RatFunc::z_power(-1), 1).H == dr.H);
  // C = z on channel 1 of ADMM would make the (1,2) entry improper
  CHECK_THROWS_AS((void)commutation_transform(builtin_tf("admm"), RatFunc::z_power(1), 1),
                  Error);
  CHECK_THROWS_AS((void)commutation_transform(dr, RatFunc(), 1), Error);  // zero
}

TEST_CASE("equivariance transform") {
  TransferMatrix gd = builtin_tf("gradient_descent");
  // A = B = C recovers the commutation transform
  TransferMatrix a = equivariance_transform(builtin_tf("douglas_rachford"), rf("z - alpha"),
                                            rf("z - alpha"), 1);
  CHECK(a.H == commutation_transform(builtin_tf("douglas_rachford"), rf("z - alpha"), 1).H);
  // A = 2, B = 1 on a one-oracle method scales the transfer function
  TransferMatrix b = equivariance_transform(gd, rf("2"), rf("1"), 1);
  CHECK(b.H(0, 0) == rf("-2/(5*(z - 1))"));
  // homogeneous oracle phi(2y) = 2phi(y): conjugating by 2 changes nothing
  TransferMatrix c = equivariance_transform(gd, rf("2"), rf("2"), 1);
  CHECK(c.H == gd.H);
}

TEST_CASE("prox family closed forms (single oracle remark)") {
  // proximal point: x[k+1] = prox_tf(x[k])
  TransferMatrix pp = transfer_function(lower_text(
      "algorithm pp(oracles prox_f: prox[t]; params t) { x[k+1] = prox_f(x[k]); }"));
  TransferMatrix conj = prox_family_transform(pp, 1, OracleKind::prox_conj);
  // -H(I - H)^{-1} with H = 1/z gives -1/(z - 1)
  CHECK(conj.H(0, 0) == rf("-1/(z - 1)"));
  CHECK(conj.oracles[0].kind == OracleKind::prox_conj);

  // -t(I - H)^{-1} with H = 1/z gives -t z/(z - 1)
  TransferMatrix sub = prox_family_transform(pp, 1, OracleKind::subdiff);
  CHECK(sub.H(0, 0) == rf("-t*z/(z - 1)"));
}

TEST_CASE("prox family transform on a middle channel") {
  // Davis-Yin with the middle prox rewritten through Moreau's identity
  TransferMatrix dy = builtin_tf("davis_yin");
  TransferMatrix got = prox_family_transform(dy, 2, OracleKind::prox_conj);
  RatMatrix want(3, 3,
                 {rf("1/z"), rf("-t/z"), rf("-t/z"),
                  rf("(2*z - 1)/(t*z)"), rf("1/z"), rf("-(z - 1)/z"),
                  rf("1"), rf("0"), rf("0")});
  CHECK(got.H == want);
  CHECK(got.oracles[0].kind == OracleKind::prox);
  CHECK(got.oracles[1].kind == OracleKind::prox_conj);

  // the rewritten method matches PD3O at a = 1, tau = t, sigma = 1/t
  TransferMatrix pd = builtin_tf("pd3o").subst(std::map<std::string, RatFunc>{
      {"a", rf("1")}, {"tau", tsym}, {"sigma", rf("1/t")}});
  CHECK(got.H == pd.H);
}

TEST_CASE("singular blocks are reported") {
  // H22 = 0 on a subdiff channel: the conjugate closed form needs H22^{-1}
  TransferMatrix h;
  h.H = RatMatrix(1, 1);
  h.oracles = {{"subg", OracleKind::subdiff, ""}};
  CHECK_THROWS_AS((void)prox_family_transform(h, 1, OracleKind::subdiff_conj, tsym), Error);
  // I - H22 singular on a prox channel
  TransferMatrix g;
  g.H = RatMatrix(1, 1, {rf("1")});
  g.oracles = {{"proxg", OracleKind::prox, "t"}};
  CHECK_THROWS_AS((void)prox_family_transform(g, 1, OracleKind::prox_conj), Error);
}

TEST_CASE("subdifferential closed forms invert the prox ones") {
  TransferMatrix pg = builtin_tf("proximal_gradient");
  TransferMatrix sub = prox_family_transform(pg, 2, OracleKind::subdiff);
  TransferMatrix back = prox_family_transform(sub, 2, OracleKind::prox);
  CHECK(back.H == pg.H);
  TransferMatrix sc = prox_family_transform(sub, 2, OracleKind::subdiff_conj);
  CHECK(sc.H == builtin_tf("proximal_gradient_subdiff_conj").H);
}
