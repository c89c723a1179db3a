#include <gtest/gtest.h>

#include "bracketlab/connections.hpp"
#include "bracketlab/tensorcalc.hpp"
#include "bracketlab/vvforms.hpp"
#include "support/random.hpp"

using namespace blab;
using blab::testing::Gen;

namespace {

struct Xyu {
  Context ctx = make_context({"x", "y", "u"});
  Polynomial x = Polynomial::variable(ctx, 0), u = Polynomial::variable(ctx, 2);
  Multivector du = Multivector::basis(ctx, 4);
};

Connection random_connection(Gen& g) {
  const int m = g.integer(1, 2), r = g.integer(1, 2);
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back("x" + std::to_string(i));
  for (int a = 0; a < r; ++a) names.push_back("u" + std::to_string(a));
  auto ctx = make_context(names);
  std::vector<std::vector<Polynomial>> gamma(m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < r; ++a) gamma[i].push_back(g.integer(0, 3) == 0 ? Polynomial(ctx) : g.poly(ctx, 2));
  return Connection(ctx, m, gamma);
}

}  // namespace

TEST(Connections, ConnectionForm) {
  Xyu s;
  Connection c(s.ctx, 2, {{s.u}, {s.x}});
  VForm u = connection_form(c);
  Multivector dx = Multivector::basis(s.ctx, 1), dy = Multivector::basis(s.ctx, 2);
  EXPECT_EQ(contract_connection_form(c, s.du), s.du);
  EXPECT_EQ(contract_connection_form(c, dx), -s.u * s.du);
  EXPECT_EQ(contract_connection_form(c, dy), -s.x * s.du);
  Gen g(41);
  for (int t = 0; t < 20; ++t) {
    Multivector x = g.multi(s.ctx, 1, 2);
    EXPECT_EQ(contract_connection_form(c, x), x - c.lift(c.restrict_to_base(x)));
  }
  Connection triv = Connection::trivial(s.ctx, 2);
  EXPECT_EQ(connection_form(triv), VForm::tensor(Form::basis(s.ctx, 4), s.du));
  EXPECT_EQ(u.form_degree(), 1);
}

TEST(Connections, CurvatureExamples) {
  Xyu s;
  EXPECT_TRUE(curvature(Connection(s.ctx, 2, {{s.u}, {Polynomial(s.ctx)}}), 0, 1).is_zero());
  Connection bent(s.ctx, 2, {{s.u}, {s.x}});
  Multivector r = curvature(bent, 0, 1);
  EXPECT_EQ(r, (Polynomial(s.ctx, 1) - s.x) * s.du);
  EXPECT_EQ(curvature(bent, 1, 0), -r);
  EXPECT_FALSE(is_flat(bent));
  EXPECT_TRUE(is_flat(Connection::trivial(s.ctx, 2)));
}

TEST(Connections, CurvatureIsHalfTheSelfBracket) {
  Xyu s;
  auto rep = curvature_vs_fn(Connection(s.ctx, 2, {{s.u}, {s.x}}));
  EXPECT_TRUE(rep.holds_swapped);
  EXPECT_FALSE(rep.holds);
  for (const auto& chk : rep.checks)
    if (chk.i == 0 && chk.j == 1) {
      EXPECT_EQ(chk.rhs, Rational(2) * (Polynomial(s.ctx, 1) - s.x) * s.du);
      EXPECT_EQ(chk.lhs, -chk.rhs);
    }
  Gen g(42);
  for (int t = 0; t < 50; ++t) {
    Connection c = random_connection(g);
    auto r = curvature_vs_fn(c);
    EXPECT_TRUE(r.holds_swapped);
    EXPECT_EQ(is_flat(c), fn_bracket(connection_form(c), connection_form(c)).is_zero());
    if (is_flat(c)) EXPECT_TRUE(r.holds);
  }
}

TEST(Connections, VerticalComplex) {
  auto ctx = make_context({"x", "u"});
  Connection triv = Connection::trivial(ctx, 1);
  for (int cap = 1; cap <= 3; ++cap) {
    auto c = vertical_complex(triv, cap, {0, 2});
    EXPECT_TRUE(compositions_vanish(c));
    // f(u) @u: vertical fields commuting with @x
    EXPECT_EQ(betti(c, 0), static_cast<std::size_t>(cap + 1));
    for (const auto& rep : interpret_H(c, 0).representatives)
      EXPECT_TRUE(rep.as_multivector().coeffs().begin()->second.diff(0).is_zero());
    auto shuffled = vertical_complex(triv, cap, {0, 2}, Exec::Serial, 7u);
    for (int k = 0; k <= 2; ++k) EXPECT_EQ(betti(c, k), betti(shuffled, k));
  }
  auto ctx3 = make_context({"x", "y", "u"});
  auto x = Polynomial::variable(ctx3, 0), u = Polynomial::variable(ctx3, 2);
  Connection flat(ctx3, 2, {{u}, {u}});
  ASSERT_TRUE(is_flat(flat));
  auto c = vertical_complex(flat, 2, {0, 2}, Exec::Parallel);
  EXPECT_TRUE(compositions_vanish(c));
  EXPECT_EQ(c.out, vertical_complex(flat, 2, {0, 2}).out);
  EXPECT_THROW(vertical_complex(Connection(ctx3, 2, {{u}, {x}}), 2, {0, 1}), UnverifiedError);
}

TEST(Connections, H0Products) {
  auto ctx = make_context({"x", "u"});
  auto c = vertical_complex(Connection::trivial(ctx, 1), 2, {0, 1});
  auto rep = interpret_H(c, 0);
  ASSERT_FALSE(rep.products.empty());
  for (const auto& p : rep.products) EXPECT_TRUE(p.cocycle) << p.op << " " << p.a << "," << p.b;
}

TEST(Connections, Hierarchy) {
  auto ctx = make_context({"x", "u", "v"});
  Connection triv = Connection::trivial(ctx, 1);
  Multivector du = Multivector::basis(ctx, 2), dv = Multivector::basis(ctx, 4);
  Form fu = Form::basis(ctx, 2), fv = Form::basis(ctx, 4);
  VForm r = VForm::tensor(fu, dv) + VForm::tensor(fv, du);
  auto xs = hierarchy(triv, du, r, 3);
  ASSERT_EQ(xs.size(), 4u);
  EXPECT_EQ(xs[1], dv);
  EXPECT_EQ(xs[2], du);
  for (const auto& x : xs) EXPECT_EQ(x.degree(), 1);
  auto zero = hierarchy(triv, du, VForm(ctx, 1, 1), 2);
  EXPECT_TRUE(zero[1].is_zero() && zero[2].is_zero());
  EXPECT_THROW(hierarchy(triv, Multivector::basis(ctx, 1), r, 2), DomainError);
  EXPECT_THROW(hierarchy(triv, du, VForm(ctx, 2, 1), 2), DomainError);

  for (std::size_t m = 0; m <= 3; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      auto rep = hierarchy_commutator_check(triv, du, dv, r, m, n);
      EXPECT_TRUE(rep.corollary_hypotheses);
      EXPECT_TRUE(rep.all_commute);
      EXPECT_TRUE(rep.defect.is_zero());
    }
  auto same = hierarchy_commutator_check(triv, du, du, r, 2, 2);
  EXPECT_TRUE(lie_bracket(hierarchy(triv, du, r, 2)[2], hierarchy(triv, du, r, 2)[2]).is_zero());
  EXPECT_TRUE(same.defect.is_zero());
}

TEST(Connections, HierarchyDisplayOnNonlinearFields) {
  auto ctx = make_context({"x", "u"});
  Connection triv = Connection::trivial(ctx, 1);
  auto u = Polynomial::variable(ctx, 1);
  Multivector du = Multivector::basis(ctx, 2);
  Form fu = Form::basis(ctx, 2);
  VForm r = VForm::tensor(u * fu, du) + VForm::tensor(fu, du);
  auto c = vertical_complex(triv, 3, {0, 2});
  EXPECT_EQ(betti(c, 2), 0u);
  auto rep = hierarchy_commutator_check(triv, u * u * du, u * u * u * du, r, 1, 2);
  EXPECT_FALSE(rep.corollary_hypotheses);
  EXPECT_TRUE(rep.defect.is_zero());
}
