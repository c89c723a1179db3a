#include "bracketlab/tensorcalc.hpp"

namespace blab {

namespace {

inline int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

template <Grade G>
Alternating<G> wedge_impl(const Alternating<G>& a, const Alternating<G>& b) {
  require_same_context(a.context(), b.context(), "wedge");
  Alternating<G> r(a.context(), a.degree() + b.degree());
  if (r.degree() > static_cast<int>(a.nvars())) return r;
  for (const auto& [ma, ca] : a.coeffs()) {
    for (const auto& [mb, cb] : b.coeffs()) {
      int s = wedge_sign(ma, mb);
      if (!s) continue;
      r.add_term(ma | mb, ca * cb * Rational(s));
    }
  }
  return r;
}

}  // namespace

Form wedge_forms(const Form& a, const Form& b) { return wedge_impl(a, b); }
Multivector wedge_multi(const Multivector& a, const Multivector& b) { return wedge_impl(a, b); }

Multivector mv_evaluate(const Multivector& x, const Polynomial& a) {
  const int i = x.degree();
  if (i < 1) throw DomainError("mv_evaluate: degree-0 element cannot be evaluated");
  if (a.context()) require_same_context(x.context(), a.context(), "mv_evaluate");
  Multivector r(x.context(), i - 1);
  for (const auto& [m, f] : x.coeffs()) {
    auto idx = mask_indices(m);
    for (int k = 0; k < i; ++k) {
      Polynomial da = a.diff(idx[k]);
      if (da.is_zero()) continue;
      r.add_term(m & ~(Mask{1} << idx[k]), f * da * Rational(parity_sign(i - 1 - k)));
    }
  }
  return r;
}

Polynomial apply_derivation(const Multivector& x, const Polynomial& a) {
  if (x.degree() != 1) throw DomainError("apply_derivation: expected a derivation (degree 1)");
  return mv_evaluate(x, a).coeff(0);
}

Form de_rham(const Form& w) {
  Form r(w.context(), w.degree() + 1);
  if (r.degree() > static_cast<int>(w.nvars()) || w.degree() < 0) return r;
  for (const auto& [m, f] : w.coeffs()) {
    for (std::size_t k = 0; k < w.nvars(); ++k) {
      Mask bit = Mask{1} << k;
      if (m & bit) continue;
      Polynomial df = f.diff(k);
      if (df.is_zero()) continue;
      r.add_term(m | bit, df * Rational(wedge_sign(bit, m)));
    }
  }
  return r;
}

Form de_rham(const Polynomial& a) { return de_rham(Form::scalar(a)); }

Form contract_form(const Multivector& x, const Form& w) {
  require_same_context(x.context(), w.context(), "contract_form");
  const int i = x.degree(), j = w.degree();
  Form r(x.context(), j - i);
  if (i > j) return r;
  const Rational base(parity_sign(static_cast<long>(i) * (i - 1) / 2));
  for (const auto& [mi, f] : x.coeffs()) {
    for (const auto& [mj, g] : w.coeffs()) {
      if (mi & ~mj) continue;
      Mask rest = mj & ~mi;
      r.add_term(rest, f * g * (base * wedge_sign(mi, rest)));
    }
  }
  return r;
}

Multivector contract_multi(const Form& w, const Multivector& x) {
  require_same_context(x.context(), w.context(), "contract_multi");
  const int i = x.degree(), j = w.degree();
  Multivector r(x.context(), i - j);
  if (j > i) return r;
  for (const auto& [mj, g] : w.coeffs()) {
    for (const auto& [mi, f] : x.coeffs()) {
      if (mj & ~mi) continue;
      Mask s = mi;
      int d = i;
      int sign = 1;
      for (auto jl : mask_indices(mj)) {
        int p = mask_position(s, jl);
        sign *= parity_sign(d - 1 - p);
        s &= ~(Mask{1} << jl);
        --d;
      }
      r.add_term(s, f * g * Rational(sign));
    }
  }
  return r;
}

Form lie_form(const Multivector& x, const Form& w) {
  const int i = x.degree();
  Form r = de_rham(contract_form(x, w));
  Form second = contract_form(x, de_rham(w));
  r.add_scaled(second, -parity_sign(i));
  return r;
}

Multivector lie_bracket(const Multivector& x, const Multivector& y) {
  require_same_context(x.context(), y.context(), "lie_bracket");
  if (x.degree() != 1 || y.degree() != 1) throw DomainError("lie_bracket: expects derivations");
  const std::size_t n = x.nvars();
  Multivector r(x.context(), 1);
  for (std::size_t l = 0; l < n; ++l) {
    Mask bit = Mask{1} << l;
    Polynomial c = apply_derivation(x, y.coeff(bit)) - apply_derivation(y, x.coeff(bit));
    r.add_term(bit, c);
  }
  return r;
}

Multivector schouten(const Multivector& x, const Multivector& y) {
  require_same_context(x.context(), y.context(), "schouten");
  const int i = x.degree(), ip = y.degree();
  const Context& ctx = x.context();
  const int n = static_cast<int>(x.nvars());
  const int k = i + ip - 1;
  if (k < 0 || k > n || x.is_zero() || y.is_zero()) return Multivector(ctx, k);
  if (ip == 0) return mv_evaluate(x, y.coeff(0));
  if (i == 0) {
    Multivector r = mv_evaluate(y, x.coeff(0));
    return parity_sign(ip) == 1 ? r : -r;
  }
  // Z = [[X,X']] is recovered from Z(x_l): the coefficient of @_I is the
  // coefficient of @_{I \ max I} in Z(x_{max I}).
  Multivector z(ctx, k);
  for (int l = k - 1; l < n; ++l) {
    Polynomial xl = Polynomial::variable(ctx, static_cast<std::size_t>(l));
    Multivector zl = schouten(x, mv_evaluate(y, xl));
    zl.add_scaled(schouten(mv_evaluate(x, xl), y), parity_sign(ip - 1));
    const Mask bit = Mask{1} << l;
    for (const auto& [m, c] : zl.coeffs()) {
      if (m >> l) continue;  // needs max(I) == l
      z.add_term(m | bit, c);
    }
  }
  return z;
}

Multivector schouten_oracle(const Multivector& x, const Multivector& y) {
  require_same_context(x.context(), y.context(), "schouten_oracle");
  const Context& ctx = x.context();
  const std::size_t n = x.nvars();
  const int i = x.degree();
  Multivector r(ctx, i + y.degree() - 1);
  if (r.degree() < 0 || r.degree() > static_cast<int>(n)) return r;

  // [[X, @j]] = -[[@j, X]] = -sum_I @j(f_I) @_I
  std::vector<Multivector> with_coord(n, Multivector(ctx, i));
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [m, f] : x.coeffs()) with_coord[j].add_term(m, -f.diff(j));
  }

  for (const auto& [mj, g] : y.coeffs()) {
    Multivector w = Multivector::basis(ctx, mj);
    // [[X, g ^ W]] = [[X,g]] ^ W + g [[X,W]]
    if (i >= 1) r += wedge_multi(mv_evaluate(x, g), w);
    auto idx = mask_indices(mj);
    for (std::size_t kk = 0; kk < idx.size(); ++kk) {
      Mask before = 0, after = 0;
      for (std::size_t t = 0; t < kk; ++t) before |= Mask{1} << idx[t];
      for (std::size_t t = kk + 1; t < idx.size(); ++t) after |= Mask{1} << idx[t];
      Multivector term = wedge_multi(wedge_multi(Multivector::basis(ctx, before), with_coord[idx[kk]]),
                                     Multivector::basis(ctx, after));
      const int sign = parity_sign(static_cast<long>(i - 1) * static_cast<long>(kk));
      r.add_scaled(g * term, sign);
    }
  }
  return r;
}

}  // namespace blab
