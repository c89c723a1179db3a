#include <gtest/gtest.h>

#include "bracketlab/poisson.hpp"
#include "support/random.hpp"

using namespace blab;
using blab::testing::Gen;
using blab::testing::sgn;

namespace {

struct Qp {
  Context ctx = make_context({"q", "p"});
  Polynomial q = Polynomial::variable(ctx, 0), p = Polynomial::variable(ctx, 1);
  Multivector dq = Multivector::basis(ctx, 1), dp = Multivector::basis(ctx, 2);
  PoissonStructure ps{wedge(dp, dq)};
};

struct Xyz {
  Context ctx = blab::testing::vars(3);
  Polynomial x = Polynomial::variable(ctx, 0), y = Polynomial::variable(ctx, 1), z = Polynomial::variable(ctx, 2);
  Multivector dx = Multivector::basis(ctx, 1), dy = Multivector::basis(ctx, 2), dz = Multivector::basis(ctx, 4);
  Multivector so3() const { return z * wedge(dx, dy) + x * wedge(dy, dz) + y * wedge(dz, dx); }
};

// Bivectors in 3 variables: constant, linear and quadratic coefficients.
std::vector<Multivector> corpus(const Xyz& s, Gen& g) {
  std::vector<Multivector> out{s.so3(), wedge(s.dx, s.dy), s.x * s.z * wedge(s.dx, s.dy),
                               s.y * wedge(s.dy, s.dz) + wedge(s.dx, s.dy)};
  for (int t = 0; t < 20; ++t) out.push_back(g.multi(s.ctx, 2, g.integer(0, 2), 3));
  return out;
}

Multivector iota(const Form& w, const Multivector& x) {
  return Rational(sgn(static_cast<long>(w.degree()) * x.degree())) * contract_multi(w, x);
}

}  // namespace

TEST(Poisson, BracketExamples) {
  Qp s;
  EXPECT_EQ(poisson_bracket(s.ps.bivector(), s.q, s.p), Polynomial(s.ctx, 1));
  Xyz t;
  EXPECT_EQ(poisson_bracket(t.so3(), t.x, t.y), -t.z);
  EXPECT_EQ(poisson_bracket(t.so3(), t.y, t.z), -t.x);
  Gen g(11);
  for (int k = 0; k < 20; ++k) {
    Polynomial a = g.poly(t.ctx, 3), b = g.poly(t.ctx, 3), c = g.poly(t.ctx, 2);
    EXPECT_TRUE(poisson_bracket(t.so3(), a, a).is_zero());
    EXPECT_EQ(poisson_bracket(t.so3(), a, b), -poisson_bracket(t.so3(), b, a));
    EXPECT_EQ(poisson_bracket(t.so3(), a, b * c),
              poisson_bracket(t.so3(), a, b) * c + b * poisson_bracket(t.so3(), a, c));
  }
}

TEST(Poisson, NonPoissonWitness) {
  Xyz s;
  Multivector w = s.y * wedge(s.dy, s.dz) + wedge(s.dx, s.dy);
  Multivector defect = jacobi_defect(w);
  EXPECT_EQ(defect, schouten_oracle(w, w));
  EXPECT_EQ(defect, Rational(2) * wedge(wedge(s.dx, s.dy), s.dz));
  EXPECT_FALSE(defect.is_zero());
  EXPECT_FALSE(PoissonStructure(w).verified());
  EXPECT_THROW(d_cochain(PoissonStructure(w), s.dx), UnverifiedError);
  EXPECT_TRUE(jacobi_defect(s.so3()).is_zero());
  EXPECT_TRUE(jacobi_defect(wedge(s.dx, s.dz)).is_zero());
  // f @x^@y is always Poisson in three variables
  EXPECT_TRUE(jacobi_defect(s.x * s.z * wedge(s.dx, s.dy)).is_zero());
}

TEST(Poisson, ThreeConditionsAgree) {
  Xyz s;
  Gen g(12);
  int poisson = 0, other = 0;
  for (const auto& p : corpus(s, g)) {
    bool schouten_zero = jacobi_defect(p).is_zero();
    EXPECT_EQ(schouten_zero, jacobi_on_generators(p).is_zero()) << p.to_string();
    EXPECT_EQ(schouten_zero, cochain_square_vanishes(p, 1)) << p.to_string();
    (schouten_zero ? poisson : other)++;
  }
  EXPECT_GT(poisson, 0);
  EXPECT_GT(other, 0);
}

TEST(Poisson, HamiltonianAndCanonical) {
  Qp s;
  const Multivector& p = s.ps.bivector();
  EXPECT_EQ(hamiltonian(p, s.q), s.dp);
  EXPECT_TRUE(hamiltonian(p, Polynomial(s.ctx, 5)).is_zero());
  EXPECT_TRUE(is_canonical(p, s.dq));
  EXPECT_FALSE(is_canonical(p, s.q * s.dq));
  Gen g(13);
  for (int t = 0; t < 20; ++t) {
    Polynomial a = g.poly(s.ctx, 3), b = g.poly(s.ctx, 3);
    Multivector xa = hamiltonian(p, a);
    EXPECT_EQ(apply_derivation(xa, b), poisson_bracket(p, a, b));
    EXPECT_EQ(hamiltonian(p, a + b), xa + hamiltonian(p, b));
    EXPECT_TRUE(is_canonical(p, xa));
  }
  Xyz t;
  for (int k = 0; k < 10; ++k) EXPECT_TRUE(is_canonical(t.so3(), hamiltonian(t.so3(), g.poly(t.ctx, 2))));
}

TEST(Poisson, CochainDifferential) {
  Xyz s;
  PoissonStructure ps(s.so3());
  Gen g(14);
  EXPECT_TRUE(d_cochain(ps, ps.bivector()).is_zero());
  for (int t = 0; t < 30; ++t) {
    Multivector x = g.multi(s.ctx, g.integer(0, 3), 2);
    EXPECT_TRUE(d_cochain(ps, d_cochain(ps, x)).is_zero());
  }
  Qp q;
  EXPECT_EQ(d_cochain(q.ps, Multivector::scalar(q.q)), schouten(q.ps.bivector(), Multivector::scalar(q.q)));
  EXPECT_FALSE(d_cochain(q.ps, Multivector::scalar(q.q)).is_zero());
}

TEST(Poisson, ChainDifferential) {
  Qp s;
  EXPECT_EQ(d_chain(s.ps, s.q * de_rham(s.p)), Form::scalar(Polynomial(s.ctx, 1)));
  Xyz t;
  PoissonStructure ps(t.so3());
  Gen g(15);
  for (int k = 0; k < 40; ++k) {
    Form w = g.form(t.ctx, g.integer(0, 3), 2);
    EXPECT_TRUE(d_chain(ps, d_chain(ps, w)).is_zero());
    Polynomial a = g.poly(t.ctx, 2), b = g.poly(t.ctx, 2);
    EXPECT_EQ(d_chain(ps, a * de_rham(b)), Form::scalar(poisson_bracket(ps.bivector(), a, b)));
  }
  EXPECT_THROW(d_chain(PoissonStructure(t.y * wedge(t.dy, t.dz) + wedge(t.dx, t.dy)), de_rham(t.x)), UnverifiedError);
}

// d_P kills functions but not a db, so it is not a graded derivation of the wedge product.
TEST(Poisson, ChainDifferentialIsNotADerivation) {
  Qp s;
  Form a = Form::scalar(s.q), b = de_rham(s.p);
  Form lhs = d_chain(s.ps, wedge(a, b));
  Form rhs = wedge(d_chain(s.ps, a), b) + wedge(a, d_chain(s.ps, b));
  EXPECT_NE(lhs, rhs);
}

TEST(Poisson, ExtendedBracketExamples) {
  Qp s;
  Form one = Form::scalar(Polynomial(s.ctx, 1));
  EXPECT_EQ(extended_bracket(s.ps, Form::scalar(s.q), de_rham(s.p)), one);
  EXPECT_TRUE(extended_bracket(s.ps, de_rham(s.q), de_rham(s.p)).is_zero());
  EXPECT_EQ(extended_bracket(s.ps, de_rham(s.q), de_rham(s.p)).degree(), 1);
  Form zero = extended_bracket(s.ps, Form::scalar(s.q), Form::scalar(s.p));
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.degree(), -1);
}

TEST(Poisson, ExtendedBracketProperties) {
  Xyz s;
  PoissonStructure ps(s.so3());
  Gen g(16);
  for (int t = 0; t < 60; ++t) {
    int j = g.integer(0, 3), j2 = g.integer(0, 3), j3 = g.integer(0, 2);
    Form a = g.form(s.ctx, j, 1, 2), b = g.form(s.ctx, j2, 1, 2), c = g.form(s.ctx, j3, 1, 2);
    Polynomial f = g.poly(s.ctx, 2), h = g.poly(s.ctx, 2);
    Form ff = Form::scalar(f);
    EXPECT_EQ(extended_bracket(ps, ff, de_rham(h)), Form::scalar(poisson_bracket(ps.bivector(), f, h)));
    EXPECT_EQ(extended_bracket(ps, de_rham(f), de_rham(h)), de_rham(poisson_bracket(ps.bivector(), f, h)));
    EXPECT_EQ(extended_bracket(ps, a, wedge(b, c)),
              wedge(extended_bracket(ps, a, b), c) + sgn((j - 1) * j2) * wedge(b, extended_bracket(ps, a, c)));
    EXPECT_EQ(extended_bracket(ps, a, b), -sgn((j - 1) * (j2 - 1)) * extended_bracket(ps, b, a));
    if (j + j2 + j3 <= 4) {
      Form lhs = extended_bracket(ps, a, extended_bracket(ps, b, c));
      Form rhs = extended_bracket(ps, extended_bracket(ps, a, b), c) +
                 sgn((j - 1) * (j2 - 1)) * extended_bracket(ps, b, extended_bracket(ps, a, c));
      if (j + j2 - 1 >= 0 && j2 + j3 - 1 >= 0 && j + j3 - 1 >= 0) EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Poisson, ExtendedBracketOperators) {
  Xyz s;
  PoissonStructure ps(s.so3());
  Gen g(17);
  for (int t = 0; t < 60; ++t) {
    int j = g.integer(0, 3), j2 = g.integer(0, 3);
    if (j + j2 == 0) continue;
    Form a = g.form(s.ctx, j, 1, 2), b = g.form(s.ctx, j2, 1, 2);
    Multivector x = g.multi(s.ctx, g.integer(0, 3), 2, 2);
    Form br = extended_bracket(ps, a, b);
    EXPECT_EQ(lie_P_form(ps, br, x), lie_P_form(ps, a, lie_P_form(ps, b, x)) -
                                         sgn((1 - j) * (1 - j2)) * lie_P_form(ps, b, lie_P_form(ps, a, x)));
    EXPECT_EQ(Rational(sgn(j - 1)) * iota(br, x),
              lie_P_form(ps, a, iota(b, x)) - sgn((1 - j) * j2) * iota(b, lie_P_form(ps, a, x)));
  }
}

TEST(Poisson, Compatibility) {
  Xyz s;
  PoissonStructure p(wedge(s.dx, s.dy)), q(wedge(s.dy, s.dz)), so3(s.so3());
  EXPECT_TRUE(compatible(p, q).compatible);
  EXPECT_TRUE(compatible(so3, so3).compatible);
  EXPECT_TRUE(jacobi_defect(Rational(2) * p.bivector() + Rational(3) * q.bivector()).is_zero());
  PoissonStructure r(s.x * wedge(s.dy, s.dz));
  ASSERT_TRUE(r.verified());
  auto rep = compatible(r, PoissonStructure(s.y * wedge(s.dx, s.dz) + wedge(s.dx, s.dy)));
  EXPECT_EQ(rep.compatible, rep.defect.is_zero());
  EXPECT_THROW(compatible(p, PoissonStructure(s.y * wedge(s.dy, s.dz) + wedge(s.dx, s.dy))), UnverifiedError);
}

TEST(Poisson, MagriChain) {
  Xyz s;
  PoissonStructure p(wedge(s.dx, s.dy)), q(wedge(s.dy, s.dz));
  auto step = magri_step(p, q, s.x, 2);
  ASSERT_TRUE(std::holds_alternative<Polynomial>(step));
  EXPECT_EQ(std::get<Polynomial>(step), -s.z);
  auto chain = magri_chain(p, q, s.x, 4, 2);
  ASSERT_TRUE(std::holds_alternative<MagriChain>(chain));
  const auto& el = std::get<MagriChain>(chain).elements;
  ASSERT_EQ(el.size(), 4u);
  EXPECT_EQ(el[0], s.x);
  EXPECT_EQ(el[1], -s.z);
  EXPECT_TRUE(el[2].is_zero());
  for (std::size_t k = 0; k + 1 < el.size(); ++k)
    EXPECT_EQ(d_cochain(p, Multivector::scalar(el[k])), d_cochain(q, Multivector::scalar(el[k + 1])));
  EXPECT_TRUE(involution_check(p.bivector(), q.bivector(), el).in_involution);
  auto bad = el;
  bad.push_back(s.y);
  auto rep = involution_check(p.bivector(), q.bivector(), bad);
  EXPECT_FALSE(rep.in_involution);
  EXPECT_EQ(rep.alpha, 0u);
  EXPECT_EQ(rep.beta, 4u);
  EXPECT_TRUE(involution_check(p.bivector(), q.bivector(), {s.z, s.z * s.z}).in_involution);
}

TEST(Poisson, MagriReportsMissingSolution) {
  Xyz s;
  PoissonStructure p(wedge(s.dx, s.dy)), q(s.x * wedge(s.dy, s.dz));
  ASSERT_TRUE(compatible(p, q).compatible);
  auto step = magri_step(p, q, s.x, 2);
  ASSERT_TRUE(std::holds_alternative<MagriNoSolution>(step));
  EXPECT_EQ(std::get<MagriNoSolution>(step).degree_cap, 2);
  EXPECT_THROW(magri_step(p, PoissonStructure(s.y * wedge(s.dy, s.dz)), s.x, 2), DomainError);
}

TEST(Poisson, RandomMagriChainsAreInvolutive) {
  Xyz s;
  PoissonStructure p(wedge(s.dx, s.dy)), q(wedge(s.dy, s.dz));
  Gen g(18);
  for (int t = 0; t < 10; ++t) {
    auto chain = magri_chain(p, q, g.poly(s.ctx, 2), 3, 3);
    if (auto* c = std::get_if<MagriChain>(&chain))
      EXPECT_TRUE(involution_check(p.bivector(), q.bivector(), c->elements).in_involution);
  }
}
