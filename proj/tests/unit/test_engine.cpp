#include <doctest.h>

#include "gcf237/engine.hpp"
#include "gcf237/parse.hpp"
#include "support/oracle.hpp"

using namespace gcf237;

namespace {

LElem L(std::array<Rat, 6> d) { return LElem(std::move(d)); }
Rat half(long n) { return Rat(n, 2); }

QuadraticInput ex318() { return {LElem::theta(), LElem(), -1}; }
QuadraticInput ex319() {
  FElem eta = FElem::eta();
  return {(FElem(1) - eta * eta) * LElem::theta(), LElem(1), 1};
}
QuadraticInput ex321() { return {LElem::theta(), LElem(1), 1}; }
QuadraticInput ex322() {
  return {Rat(2) * LElem::theta(), LElem::theta(), 1};
}

bool cyclic_equal(const std::vector<int>& a, std::vector<int> b) {
  if (a.size() != b.size()) return false;
  for (size_t r = 0; r < b.size(); ++r) {
    if (a == b) return true;
    std::rotate(b.begin(), b.begin() + 1, b.end());
  }
  return false;
}

std::vector<int> period_block(const ExpansionResult& r) {
  std::vector<int> p;
  for (long t = 0; t < r.period; ++t) p.push_back(r.digits[size_t(r.preperiod + t)]);
  return p;
}

bool mat_equal_up_to_sign_inv(const GroupElement& g, const ZWMat& target) {
  GroupElement cands[2] = {g, g.inverse()};
  for (const auto& c : cands) {
    if (c.mat() == target) return true;
    if (c.z() == -target.z && c.w() == -target.w) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("from_quadratic conventions") {
  // w = 0: sign + gives (alpha, beta) = (inf, 0); sign - gives (0, inf)
  OrientedGeodesic gp = from_quadratic({LElem::theta(), LElem(), 1});
  CHECK(gp.alpha.is_infinity());
  CHECK(gp.beta.exact_value().sign() == 0);
  OrientedGeodesic gm = from_quadratic(ex318());
  CHECK(gm.beta.is_infinity());
  CHECK(gm.alpha.exact_value().sign() == 0);

  // Ex 3.19 endpoints: (1-eta^2) theta +- sqrt(1+3 eta-2 eta^2)
  OrientedGeodesic g = from_quadratic(ex319());
  FElem eta = FElem::eta();
  FElem D = FElem(4) * (FElem(1) + FElem(3) * eta - FElem(2) * (eta * eta));
  CHECK(*g.prov->D.c.data() == *D.c.data());
  QuadVal expect_alpha(((FElem(1) - eta * eta) * LElem::theta()), LElem(Rat(1, 2)), D);
  CHECK(g.alpha.exact_value() == expect_alpha);
  CHECK(g.beta.exact_value() == expect_alpha.conj_sqrtD());

  // z = w = 1 gives the geodesic c_0 itself: endpoints +-theta
  OrientedGeodesic gc = from_quadratic({LElem(1), LElem(1), 1});
  CHECK((gc.alpha.exact_value() - QuadVal(LElem::theta())).sign() == 0);
  CHECK((gc.beta.exact_value() - QuadVal(-LElem::theta())).sign() == 0);

  CHECK_THROWS_AS(from_quadratic({LElem(1), LElem(), 1}), DomainError);  // D = 0
}

TEST_CASE("example: alpha = 0, beta = inf") {
  ExpansionSession s(from_quadratic(ex318()));
  const ExpansionResult& r = s.result();
  CHECK(r.status == ExpStatus::Periodic);
  CHECK(r.b0 == GroupElement::identity());
  CHECK(r.preperiod == 0);
  CHECK(r.period == 3);
  CHECK(period_block(r) == std::vector<int>{3, -2, 3});

  ZWMat target{L({Rat(-1), Rat(-1), Rat(-1), Rat(1), Rat(0), Rat(1)}), LElem()};
  CHECK(mat_equal_up_to_sign_inv(*r.gamma0, target));

  REQUIRE(r.epsilon0.has_value());
  FElem eta = FElem::eta();
  CHECK(unit_equal_up_to_sign_inversion(*r.epsilon0, *r.D, -(FElem(1) + eta),
                                        FElem(1) - eta - eta * eta, eta));
  GroupElement unit = fundamental_unit(s);
  CHECK(is_hyperbolic(unit));
}

TEST_CASE("example: (1-eta^2) theta + sqrt(1+3 eta-2 eta^2)") {
  ExpansionSession s(from_quadratic(ex319()));
  const ExpansionResult& r = s.result();
  CHECK(r.status == ExpStatus::Periodic);
  CHECK(r.b0 == GroupElement::identity());
  CHECK(period_block(r) == std::vector<int>{1, -1});

  ZWMat target{L({half(-1), Rat(1), half(-1), Rat(0), Rat(0), half(-1)}),
               L({Rat(1), Rat(0), half(-1), Rat(0), half(-1), Rat(0)})};
  CHECK(mat_equal_up_to_sign_inv(*r.gamma0, target));

  FElem eta = FElem::eta();
  FElem td = eta * eta + FElem(2) * eta - FElem(3);
  CHECK(unit_equal_up_to_sign_inversion(*r.epsilon0, *r.D, FElem(Rat(-1, 2)) * (FElem(1) + eta),
                                        FElem(Rat(-1, 2)), td));
}

TEST_CASE("beta-free variant: same alpha, beta = -1") {
  OrientedGeodesic g = from_quadratic(ex319());
  g.beta = BoundaryPoint::exact_L(LElem(-1));
  g.prov->beta_is_conjugate = false;
  ExpansionSession s(g);
  const ExpansionResult& r = s.result();
  CHECK(r.status == ExpStatus::Periodic);
  CHECK(cyclic_equal(period_block(r), {-1, 1}));
  // identical unit to the conjugate-pair session
  ExpansionSession closed(from_quadratic(ex319()));
  CHECK(mat_equal_up_to_sign_inv(*r.gamma0, closed.result().gamma0->mat()));

  // forcing B0 = g7^-1 pins the digits to exactly 3, 2, (-1, 1)*
  SessionConfig cfg;
  cfg.b0_override = Word{{7, -1}};
  OrientedGeodesic g2 = from_quadratic(ex319());
  g2.beta = BoundaryPoint::exact_L(LElem(-1));
  g2.prov->beta_is_conjugate = false;
  ExpansionSession s2(g2, cfg);
  const ExpansionResult& r2 = s2.result();
  CHECK(r2.status == ExpStatus::Periodic);
  REQUIRE(r2.digits.size() >= 4);
  CHECK(r2.digits[0] == 3);
  CHECK(r2.digits[1] == 2);
  CHECK(cyclic_equal(period_block(r2), {-1, 1}));
  CHECK(mat_equal_up_to_sign_inv(*r2.gamma0, closed.result().gamma0->mat()));
}

TEST_CASE("examples with longer periods") {
  ExpansionSession s21(from_quadratic(ex321()));
  CHECK(s21.result().status == ExpStatus::Periodic);
  CHECK(s21.result().period == 10);
  CHECK(cyclic_equal(period_block(s21.result()),
                     {-2, 3, -3, 3, -2, 2, -3, 3, -3, 2}));
  FElem eta = FElem::eta();
  CHECK(unit_equal_up_to_sign_inversion(
      *s21.result().epsilon0, *s21.result().D,
      FElem(Rat(-11), Rat(-28), Rat(-12)), -FElem(Rat(6), Rat(18), Rat(8)), FElem(2) * eta));

  ExpansionSession s22(from_quadratic(ex322()));
  CHECK(s22.result().status == ExpStatus::Periodic);
  CHECK(s22.result().period == 12);
  CHECK(cyclic_equal(period_block(s22.result()),
                     {3, 3, -2, 2, -3, 3, -3, 3, -3, 2, -2, 3}));
  CHECK(unit_equal_up_to_sign_inversion(
      *s22.result().epsilon0, *s22.result().D, -FElem(Rat(28), Rat(80), Rat(36)),
      -FElem(Rat(16), Rat(43), Rat(19)), FElem(4) * eta - eta * eta));
}

TEST_CASE("stabilizer fixture z = w = 1 (the geodesic c_0)") {
  ExpansionSession s(from_quadratic({LElem(1), LElem(1), 1}));
  const ExpansionResult& r = s.result();
  // initial reduction applies the g3 correction
  CHECK(r.b0 == gen_g3().inverse());
  CHECK(r.status == ExpStatus::Periodic);
  // gamma0 fixes +-theta
  BoundaryPoint th = BoundaryPoint::exact_L(LElem::theta());
  BoundaryPoint mth = BoundaryPoint::exact_L(-LElem::theta());
  CHECK(mobius(*r.gamma0, th).same_exact(th));
  CHECK(mobius(*r.gamma0, mth).same_exact(mth));
}

TEST_CASE("hand-built (0, inf) endpoints get the quadratic data synthesized") {
  OrientedGeodesic g;
  g.beta = BoundaryPoint::infinity();
  g.alpha = BoundaryPoint::exact_L(LElem());
  ExpansionSession s(g);
  const ExpansionResult& r = s.result();
  CHECK(r.status == ExpStatus::Periodic);
  REQUIRE(r.epsilon0.has_value());
  FElem eta = FElem::eta();
  CHECK(unit_equal_up_to_sign_inversion(*r.epsilon0, *r.D, -(FElem(1) + eta),
                                        FElem(1) - eta - eta * eta, eta));
}

TEST_CASE("rho_alpha") {
  OrientedGeodesic g = from_quadratic(ex318());
  auto rho_id = rho_alpha(GroupElement::identity(), *g.prov);
  CHECK(rho_id.first == FElem(1));
  CHECK(rho_id.second == FElem());
  // the diagonal period matrix of the first example, on the nose
  GroupElement diag_gamma = GroupElement::from_zw(
      LElem({Rat(-1), Rat(-1), Rat(-1), Rat(1), Rat(0), Rat(1)}), LElem());
  auto eps = rho_alpha(diag_gamma, *g.prov);
  FElem eta = FElem::eta();
  // -1-eta + (1-eta-eta^2) sqrt(eta), reported over sqrt(4 eta)
  CHECK(eps.first == -(FElem(1) + eta));
  CHECK(eps.second == Rat(1, 2) * (FElem(1) - eta - eta * eta));
  // the session's gamma0 agrees up to sign and inversion
  ExpansionSession s(from_quadratic(ex318()));
  auto eps2 = rho_alpha(*s.result().gamma0, *g.prov);
  CHECK(unit_equal_up_to_sign_inversion(eps2, *s.result().D, eps.first, eps.second,
                                        FElem(4) * eta));
  // non-stabilizers are rejected
  CHECK_THROWS_AS(rho_alpha(gen_g7(), *from_quadratic(ex319()).prov), DomainError);
}

TEST_CASE("traditional convergents of the first example stay at infinity") {
  ExpansionSession s(from_quadratic(ex318()));
  for (long m = 1; m <= 10; ++m) {
    BoundaryPoint t = s.convergent_trad(3 * m - 1);  // = B_{3m} inf
    CHECK(t.is_infinity());
  }
  BoundaryPoint reg0 = s.convergent_reg(0);
  CHECK(reg0.exact_value().sign() == 0);  // B_0 = 1, so B_0 0 = 0
}

TEST_CASE("regularized convergents approach alpha") {
  ExpansionSession s(from_quadratic(ex319()));
  QuadVal alpha = s.input().alpha.exact_value();
  double prev = 1e9;
  for (long k : {8L, 16L, 24L}) {
    QuadVal diff = s.convergent_reg(k).exact_value() - alpha;
    double w = diff.eval(128).abs().hi_double();
    CHECK(w < prev);
    prev = w;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("traditional convergents converge when no digit is +-3") {
  // all digits of this expansion are +-1, so the full traditional sequence
  // converges to alpha
  ExpansionSession s(from_quadratic(ex319()));
  QuadVal alpha = s.input().alpha.exact_value();
  double prev = 1e9;
  for (long k : {10L, 18L, 26L}) {
    BoundaryPoint t = s.convergent_trad(k);
    REQUIRE(t.is_exact());
    double w = (t.exact_value() - alpha).eval(160).abs().hi_double();
    CHECK(w < prev);
    prev = w;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("initial reduction budget is enforced") {
  // push a geodesic ten tiles away; reducing it back needs that many steps
  GroupElement far = GroupElement::identity();
  for (int d : {3, -2, 3, 3, -2, 3, 3, -2, 3, 3}) far = far * digit_matrix(d);
  SessionConfig cfg;
  cfg.reduce.budget = 2;
  CHECK_THROWS_AS(ExpansionSession(transport(far, from_quadratic(ex319())), cfg),
                  BudgetExhausted);
  ExpansionSession ok(transport(far, from_quadratic(ex319())));
  CHECK(ok.result().status == ExpStatus::Periodic);
}

TEST_CASE("cf coefficients and the introductory identity") {
  const DigitConstants& dc = DigitConstants::get();
  auto terms = cf_coefficients({1, -3});
  CHECK(terms[0].a == dc.a(1));
  CHECK(terms[0].b == dc.b(1));
  CHECK(terms[0].c == dc.c(1));
  CHECK(terms[1].a == -dc.a(3));
  CHECK(terms[1].b == dc.b(3));
  CHECK(terms[1].c == -dc.c(3));

  // structure of the introductory expansion for the alternating digits (1, -1):
  FElem eta = FElem::eta();
  FElem u = FElem(1) + FElem(2) * eta - FElem(2) * (eta * eta);  // b_1 / 4
  FElem v = eta * eta - eta;
  CHECK(dc.b(1) == LElem::from_F(FElem(4) * u));
  CHECK(dc.c(1) + dc.a(-1) == LElem::from_F(FElem(-2) * v));
  CHECK(dc.c(-1) + dc.a(1) == LElem::from_F(FElem(2) * v));
  CHECK(dc.a(1).even_part() == v);

  // alpha = a_1 + 2u / (v + s), s = (-v + sqrt(v^2 + 4u)) / 2 the positive
  // fixed point of s = u/(v + s); v^2 + 4u = D/4 for the 3.19 data
  FElem D = FElem(4) * (FElem(1) + FElem(3) * eta - FElem(2) * (eta * eta));
  CHECK(FElem(4) * (v * v + FElem(4) * u) == D);
  QuadVal s(LElem::from_F(Rat(-1, 2) * v), LElem(Rat(1, 4)), D);
  QuadVal rhs = QuadVal(dc.a(1)) +
                QuadVal(LElem::from_F(FElem(2) * u)) * (QuadVal(LElem::from_F(v)) + s).inv();
  QuadVal alpha = from_quadratic(ex319()).alpha.exact_value();
  CHECK(rhs == alpha);

  std::string txt = render_cf_text({1, -1, 1, -1}, 4);
  CHECK(txt.find(format(LElem::from_F(u))) != std::string::npos);
  CHECK(txt.find(format(LElem::from_F(v))) != std::string::npos);
  CHECK(txt.find("periodic") != std::string::npos);
}

TEST_CASE("determinism and distinct tiles") {
  ExpansionSession a(from_quadratic(ex321()));
  ExpansionSession b(from_quadratic(ex321()));
  CHECK(a.result().digits == b.result().digits);
  CHECK(word_str(*a.result().b0.word()) == word_str(*b.result().b0.word()));

  // B_k D pairwise distinct: B_k^{-1} B_l is never +-g7^m
  for (long k = 0; k <= 8; ++k)
    for (long l = k + 1; l <= 8; ++l) {
      GroupElement q = a.B(k).inverse() * a.B(l);
      bool is_rot = false;
      for (int m = 0; m < 7; ++m)
        if (q.equal_up_to_sign(g7_pow(m))) is_rot = true;
      CHECK(!is_rot);
    }
}

TEST_CASE("every intermediate geodesic stays reduced") {
  ExpansionSession s(from_quadratic(ex322()));
  OrientedGeodesic g = s.input();
  for (long k = 0; k <= std::min<long>(10, s.digits_computed()); ++k) {
    OrientedGeodesic gk = transport(s.B(k).inverse(), g);
    CHECK(is_reduced(gk));
  }
}

TEST_CASE("long-period expansion satisfies the unit contract") {
  // a unit of large height: period 707 found within the default budget
  QuadraticInput q{
      L({Rat(0), Rat(-1, 2), Rat(2), Rat(2), Rat(-2), Rat(1)}),
      L({Rat(1), Rat(0), Rat(1), Rat(-1), Rat(0), Rat(2)}), 1};
  ExpansionSession s(from_quadratic(q));
  const ExpansionResult& r = s.result();
  REQUIRE(r.status == ExpStatus::Periodic);
  CHECK(r.period == 707);
  GroupElement g = fundamental_unit(s);
  ZWMat th{q.z, q.w};
  CHECK(g.mat().mul(th) == th.mul(g.mat()));
  const auto& [a, b] = *r.epsilon0;
  CHECK(a * a - b * b * *r.D == FElem(1));
}

TEST_CASE("numeric stream: alpha = e, beta = 1/e with a forced B0") {
  auto e = NumericExpr::constant_e();
  auto inv_e =
      NumericExpr::binary(NumericExpr::Op::Div, NumericExpr::exact(QuadVal(LElem(1))), e);
  OrientedGeodesic g;
  g.alpha = BoundaryPoint::numeric(e);
  g.beta = BoundaryPoint::numeric(inv_e);
  SessionConfig cfg;
  cfg.b0_override = Word{{7, 2}, {2, 1}, {7, -2}};
  cfg.max_digits = 8;
  cfg.numeric.start_prec = 200;
  ExpansionSession s(g, cfg);
  CHECK(s.result().status == ExpStatus::NumericStream);
  std::vector<int> first8(s.result().digits.begin(), s.result().digits.begin() + 8);
  CHECK(first8 == std::vector<int>{3, 3, -3, -3, 3, -3, 3, -3});
}

TEST_CASE("quaternion-state and endpoint-pair expansions agree") {
  // the same geodesic expanded through the conjugated-state route (with
  // quadratic data) and through plain endpoint tracking (data stripped)
  auto inputs = testsupport::random_quadratic_inputs(10, 424242);
  for (const auto& q : inputs) {
    OrientedGeodesic with_data = from_quadratic(q);
    OrientedGeodesic bare = with_data;
    bare.prov.reset();
    ExpansionSession a(with_data);
    ExpansionSession b(bare);
    REQUIRE(a.result().status == ExpStatus::Periodic);
    REQUIRE(b.result().status == ExpStatus::Periodic);
    CHECK(a.result().preperiod == b.result().preperiod);
    CHECK(a.result().period == b.result().period);
    long n = std::min(a.digits_computed(), b.digits_computed());
    for (long t = 0; t < n; ++t) CHECK(a.digit(t) == b.digit(t));
    CHECK(a.result().gamma0->equal_up_to_sign(*b.result().gamma0));
  }
}

TEST_CASE("numeric auto-reduction: alpha = pi") {
  OrientedGeodesic g;
  g.alpha = BoundaryPoint::numeric(NumericExpr::constant_pi());
  g.beta = BoundaryPoint::numeric(NumericExpr::binary(
      NumericExpr::Op::Div, NumericExpr::exact(QuadVal(LElem(1))), NumericExpr::constant_pi()));
  SessionConfig cfg;
  cfg.max_digits = 20;
  ExpansionSession s(g, cfg);
  CHECK(s.result().status == ExpStatus::NumericStream);
  CHECK(s.result().digits.size() == 20);
  CHECK(is_reduced(transport(s.result().b0.inverse(), s.input())));
  // the regularized convergents head toward pi
  IntervalReal x20 = s.convergent_reg(20).eval(128);
  IntervalReal diff = (x20 - pi_enclosure(128)).abs();
  CHECK(diff.hi_double() < 1e-4);
  ExpansionSession again(g, cfg);
  CHECK(again.result().digits == s.result().digits);
}

TEST_CASE("budget exhaustion is reported") {
  SessionConfig cfg;
  cfg.max_digits = 4;
  ExpansionSession s(from_quadratic(ex321()), cfg);  // period 10 cannot fit
  CHECK(s.result().status == ExpStatus::BudgetExhausted);
  CHECK(s.result().digits.size() == 4);
  CHECK_THROWS_AS(fundamental_unit(s), DomainError);
}
