#include <gtest/gtest.h>

#include "bracketlab/cohoengine.hpp"
#include "bracketlab/poisson.hpp"
#include "bracketlab/tensorcalc.hpp"
#include "support/random.hpp"

using namespace blab;

namespace {

Multivector plane() {
  auto ctx = make_context({"q", "p"});
  return wedge(Multivector::basis(ctx, 2), Multivector::basis(ctx, 1));
}

Multivector so3(const Context& ctx) {
  auto x = Polynomial::variable(ctx, 0), y = Polynomial::variable(ctx, 1), z = Polynomial::variable(ctx, 2);
  auto dx = Multivector::basis(ctx, 1), dy = Multivector::basis(ctx, 2), dz = Multivector::basis(ctx, 4);
  return z * wedge(dx, dy) + x * wedge(dy, dz) + y * wedge(dz, dx);
}

VForm identity_n(const Context& ctx) {
  VForm n(ctx, 1, 1);
  for (std::size_t l = 0; l < ctx->size(); ++l) n.add_term(Mask{1} << l, Mask{1} << l, Polynomial(ctx, 1));
  return n;
}

}  // namespace

TEST(Cohoengine, SymplecticPlaneMatchesDeRham) {
  for (int cap = 1; cap <= 4; ++cap) {
    auto c = build_complex(PoissonCochain{plane()}, cap, {0, 2});
    auto r = build_complex(DeRham{plane().context()}, cap, {0, 2});
    EXPECT_TRUE(compositions_vanish(c));
    EXPECT_TRUE(compositions_vanish(r));
    for (int k = 0; k <= 2; ++k) {
      EXPECT_EQ(betti(c, k), k == 0 ? 1u : 0u) << "cap " << cap << " H^" << k;
      EXPECT_EQ(betti(r, k), betti(c, k));
    }
  }
}

TEST(Cohoengine, So3Casimir) {
  auto ctx = blab::testing::vars(3);
  auto c = build_complex(PoissonCochain{so3(ctx)}, 2, {0, 3});
  EXPECT_TRUE(compositions_vanish(c));
  EXPECT_EQ(betti(c, 0), 2u);
  auto rep = interpret_H(c, 0);
  EXPECT_EQ(rep.label, "Casimir");
  ASSERT_EQ(rep.representatives.size(), 2u);
  Polynomial casimir = Polynomial::variable(ctx, 0).pow(2) + Polynomial::variable(ctx, 1).pow(2) +
                       Polynomial::variable(ctx, 2).pow(2);
  EXPECT_EQ(rep.representatives[0].as_multivector().as_scalar(), casimir);
  EXPECT_EQ(rep.representatives[1].as_multivector().as_scalar(), Polynomial(ctx, 1));
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_TRUE(poisson_bracket(so3(ctx), casimir, Polynomial::variable(ctx, i)).is_zero());
}

TEST(Cohoengine, PlaneH1IsEmpty) {
  auto c = build_complex(PoissonCochain{plane()}, 2, {0, 2});
  auto rep = interpret_H(c, 1);
  EXPECT_EQ(rep.dimension, 0u);
  EXPECT_EQ(rep.label, "canonical mod Hamiltonian");
}

TEST(Cohoengine, ChainComplexesCompose) {
  auto ctx = blab::testing::vars(3);
  for (int cap = 1; cap <= 3; ++cap) {
    EXPECT_TRUE(compositions_vanish(build_complex(PoissonChain{plane()}, cap, {0, 2})));
    EXPECT_TRUE(compositions_vanish(build_complex(PoissonChain{so3(ctx)}, cap, {0, 3})));
  }
  auto c = build_complex(PoissonChain{plane()}, 2, {0, 2});
  EXPECT_EQ(c.direction, -1);
  EXPECT_GT(c.outgoing(2).cols(), 0u);
  EXPECT_EQ(c.outgoing(2).rows(), c.space_at(1).dim());
}

TEST(Cohoengine, IdentityNijenhuis) {
  auto ctx = blab::testing::vars(2);
  VForm n = identity_n(ctx);
  auto forms = build_complex(NijenhuisForms{n}, 3, {0, 2});
  auto rham = build_complex(DeRham{ctx}, 3, {0, 2});
  EXPECT_EQ(forms.out, rham.out);
  // [[Id, Omega]] = 0, so the Nijenhuis complex of the identity has zero differentials
  auto fn = build_complex(Nijenhuis{n}, 2, {0, 2});
  EXPECT_TRUE(compositions_vanish(fn));
  for (const auto& m : fn.out) EXPECT_TRUE(m.is_zero());
}

TEST(Cohoengine, BasisOrderDoesNotMatter) {
  auto ctx = blab::testing::vars(3);
  for (unsigned seed : {1u, 2u, 3u}) {
    auto a = build_complex(PoissonCochain{so3(ctx)}, 2, {0, 3});
    auto b = build_complex(PoissonCochain{so3(ctx)}, 2, {0, 3}, Exec::Serial, seed);
    EXPECT_TRUE(compositions_vanish(b));
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(betti(a, k), betti(b, k));
  }
}

TEST(Cohoengine, ParallelMatchesSerial) {
  auto ctx = blab::testing::vars(3);
  auto a = build_complex(PoissonCochain{so3(ctx)}, 2, {0, 3});
  auto b = build_complex(PoissonCochain{so3(ctx)}, 2, {0, 3}, Exec::Parallel);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cohoengine, Errors) {
  auto ctx = blab::testing::vars(3);
  auto y = Polynomial::variable(ctx, 1);
  Multivector bad = y * wedge(Multivector::basis(ctx, 2), Multivector::basis(ctx, 4)) +
                    wedge(Multivector::basis(ctx, 1), Multivector::basis(ctx, 2));
  EXPECT_THROW(build_complex(PoissonCochain{bad}, 2, {0, 2}), UnverifiedError);
  EXPECT_THROW(build_complex(PoissonCochain{plane()}, 2, {2, 1}), DomainError);
  auto c = build_complex(PoissonCochain{plane()}, 2, {1, 1});
  EXPECT_THROW(betti(c, 0), DomainError);
  EXPECT_EQ(betti(c, 1), 0u);
}
