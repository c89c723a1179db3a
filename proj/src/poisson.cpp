#include "bracketlab/poisson.hpp"

#include <map>
#include <utility>

namespace blab {

namespace {

inline int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

Polynomial var(const Context& ctx, std::size_t i) { return Polynomial::variable(ctx, i); }

Form dx(const Context& ctx, std::size_t i) { return Form::basis(ctx, Mask{1} << i); }

Form zero_form(const Context& ctx, int degree) { return Form(ctx, degree); }

// dx_I with the position-t factor replaced by `f` (a form), keeping order.
Form replace_factor(const Context& ctx, Mask m, std::size_t t, const Form& f) {
  auto idx = mask_indices(m);
  Form left = Form::scalar(Polynomial(ctx, 1));
  for (std::size_t s = 0; s < t; ++s) left = wedge_forms(left, dx(ctx, idx[s]));
  Form right = Form::scalar(Polynomial(ctx, 1));
  for (std::size_t s = t + 1; s < idx.size(); ++s) right = wedge_forms(right, dx(ctx, idx[s]));
  return wedge_forms(wedge_forms(left, f), right);
}

// {h, w} for a 0-form h.
Form bracket_function_form(const Multivector& p, const Polynomial& h, const Form& w) {
  const Context& ctx = p.context();
  Form r = zero_form(ctx, w.degree() - 1);
  for (const auto& [m, g] : w.coeffs()) {
    auto idx = mask_indices(m);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      Polynomial c = poisson_bracket(p, h, var(ctx, idx[t])) * g;
      Mask rest = m & ~(Mask{1} << idx[t]);
      r.add_term(rest, Polynomial(ctx, parity_sign(static_cast<long>(t))) * c);
    }
  }
  return r;
}

// {dx_k, w}.
Form bracket_dx_form(const Multivector& p, std::size_t k, const Form& w) {
  const Context& ctx = p.context();
  Form r = zero_form(ctx, w.degree());
  const Polynomial xk = var(ctx, k);
  for (const auto& [m, g] : w.coeffs()) {
    r += poisson_bracket(p, xk, g) * Form::basis(ctx, m);
    auto idx = mask_indices(m);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      Form dbr = de_rham(poisson_bracket(p, xk, var(ctx, idx[t])));
      r += g * replace_factor(ctx, m, t, dbr);
    }
  }
  return r;
}

Form bracket_raw(const Multivector& p, const Form& w, const Form& w2) {
  const Context& ctx = p.context();
  const int j = w.degree();
  Form r = zero_form(ctx, j + w2.degree() - 1);
  if (w.is_zero() || w2.is_zero()) return r;
  // {w, h} = (-1)^j {h, w}; {w, dx_k} = -{dx_k, w}
  std::map<std::size_t, Form> with_dx;
  auto w_dx = [&](std::size_t k) -> const Form& {
    auto it = with_dx.find(k);
    if (it == with_dx.end()) it = with_dx.emplace(k, -bracket_dx_form(p, k, w)).first;
    return it->second;
  };
  for (const auto& [m, h] : w2.coeffs()) {
    Form dxj = Form::basis(ctx, m);
    r += parity_sign(j) * wedge_forms(bracket_function_form(p, h, w), dxj);
    auto idx = mask_indices(m);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      int s = parity_sign(static_cast<long>(j - 1) * static_cast<long>(t));
      r += Polynomial(ctx, s) * h * replace_factor(ctx, m, t, w_dx(idx[t]));
    }
  }
  return r;
}

}  // namespace

PoissonStructure::PoissonStructure(Multivector p) : p_(std::move(p)) {
  if (p_.degree() != 2 && !p_.is_zero()) throw DomainError("Poisson structure must be a bivector");
  if (p_.is_zero() && p_.degree() != 2) p_ = Multivector(p_.context(), 2);
  defect_ = schouten(p_, p_);
}

void PoissonStructure::require_verified(const char* op) const {
  if (!verified()) throw UnverifiedError(std::string(op) + ": P is not Poisson ([[P,P]] = " + defect_.to_string() + ")");
}

Polynomial poisson_bracket(const Multivector& p, const Polynomial& a, const Polynomial& b) {
  return mv_evaluate(mv_evaluate(p, a), b).as_scalar();
}

Multivector jacobi_defect(const Multivector& p) { return schouten(p, p); }

Polynomial jacobi_on_generators(const Multivector& p) {
  const Context& ctx = p.context();
  const std::size_t n = ctx->size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Polynomial a = var(ctx, i), b = var(ctx, j), c = var(ctx, k);
        Polynomial s = poisson_bracket(p, a, poisson_bracket(p, b, c)) +
                       poisson_bracket(p, b, poisson_bracket(p, c, a)) +
                       poisson_bracket(p, c, poisson_bracket(p, a, b));
        if (!s.is_zero()) return s;
      }
  return Polynomial(ctx);
}

bool cochain_square_vanishes(const Multivector& p, int cap) {
  const Context& ctx = p.context();
  const std::size_t n = ctx->size();
  for (Mask m : all_subsets(n))
    for (const auto& mono : monomials_up_to(n, cap)) {
      Multivector x = Multivector::basis(ctx, m, Polynomial::monomial(ctx, mono));
      if (!schouten(p, schouten(p, x)).is_zero()) return false;
    }
  return true;
}

Multivector hamiltonian(const Multivector& p, const Polynomial& a) { return mv_evaluate(p, a); }

bool is_canonical(const Multivector& p, const Multivector& x) {
  if (x.degree() != 1 && !x.is_zero()) throw DomainError("is_canonical: expected a derivation");
  const Context& ctx = p.context();
  const std::size_t n = ctx->size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Polynomial a = var(ctx, i), b = var(ctx, j);
      Polynomial lhs = apply_derivation(x, poisson_bracket(p, a, b));
      Polynomial rhs = poisson_bracket(p, apply_derivation(x, a), b) + poisson_bracket(p, a, apply_derivation(x, b));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

Multivector d_cochain(const PoissonStructure& ps, const Multivector& x) {
  ps.require_verified("d_cochain");
  return schouten(ps.bivector(), x);
}

Form d_chain(const PoissonStructure& ps, const Form& w) {
  ps.require_verified("d_chain");
  const Multivector& p = ps.bivector();
  Form r = contract_form(p, de_rham(w));
  r -= de_rham(contract_form(p, w));
  return r;
}

Form extended_bracket(const PoissonStructure& ps, const Form& w, const Form& w2) {
  ps.require_verified("extended_bracket");
  require_same_context(w.context(), w2.context(), "extended_bracket");
  return bracket_raw(ps.bivector(), w, w2);
}

Multivector lie_P_form(const PoissonStructure& ps, const Form& w, const Multivector& x) {
  ps.require_verified("lie_P_form");
  const Multivector& p = ps.bivector();
  // graded commutator with the left contraction (-1)^(jk) i_w
  Multivector r = schouten(p, contract_multi(w, x));
  r -= contract_multi(w, schouten(p, x));
  return Rational(parity_sign(static_cast<long>(w.degree()) * x.degree())) * r;
}

CompatibilityReport compatible(const PoissonStructure& p, const PoissonStructure& q) {
  p.require_verified("compatible");
  q.require_verified("compatible");
  CompatibilityReport rep;
  rep.defect = schouten(p.bivector(), q.bivector());
  rep.compatible = rep.defect.is_zero();
  return rep;
}

MagriStepResult magri_step(const PoissonStructure& p, const PoissonStructure& q, const Polynomial& a, int cap) {
  if (!compatible(p, q).compatible) throw DomainError("magri_step: the Poisson structures are not compatible");
  const Context& ctx = p.context();
  const auto monos = monomials_up_to(ctx->size(), cap);
  const Multivector target = schouten(p.bivector(), Multivector::scalar(a));
  using Key = std::pair<Mask, Monomial>;
  auto key_less = [](const Key& x, const Key& y) {
    if (x.first != y.first) return MaskOrder{}(x.first, y.first);
    return GrlexDesc{}(x.second, y.second);
  };
  std::map<Key, std::size_t, decltype(key_less)> rows(key_less);
  std::vector<Multivector> cols;
  for (const auto& m : monos)
    cols.push_back(schouten(q.bivector(), Multivector::scalar(Polynomial::monomial(ctx, m))));
  auto collect = [&](const Multivector& v) {
    for (const auto& [mask, c] : v.coeffs())
      for (const auto& [mono, coef] : c.terms()) rows.try_emplace({mask, mono}, 0);
  };
  collect(target);
  for (const auto& c : cols) collect(c);
  std::size_t r = 0;
  for (auto& [k, v] : rows) v = r++;
  LinearSystem sys{Matrix(rows.size(), monos.size()), Vector(rows.size())};
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [mask, coef] : cols[c].coeffs())
      for (const auto& [mono, q2] : coef.terms()) sys.matrix(rows.at({mask, mono}), c) = q2;
  for (const auto& [mask, coef] : target.coeffs())
    for (const auto& [mono, q2] : coef.terms()) sys.rhs[rows.at({mask, mono})] = q2;
  auto res = solve_exact(sys);
  if (std::holds_alternative<NoSolution>(res)) return MagriNoSolution{0, cap};
  const auto& sol = std::get<Solution>(res);
  Polynomial out(ctx);
  for (std::size_t c = 0; c < monos.size(); ++c)
    if (sol.particular[c] != 0) out.add_term(monos[c], sol.particular[c]);
  return out;
}

MagriResult magri_chain(const PoissonStructure& p, const PoissonStructure& q, const Polynomial& seed,
                        std::size_t length, int cap) {
  MagriChain chain{p, q, {}, cap};
  if (length == 0) return chain;
  chain.elements.push_back(seed);
  while (chain.elements.size() < length) {
    auto step = magri_step(p, q, chain.elements.back(), cap);
    if (auto* ns = std::get_if<MagriNoSolution>(&step)) {
      ns->step = chain.elements.size();
      return *ns;
    }
    chain.elements.push_back(std::get<Polynomial>(step));
  }
  return chain;
}

InvolutionReport involution_check(const Multivector& p, const Multivector& q, const std::vector<Polynomial>& chain) {
  InvolutionReport rep;
  for (std::size_t a = 0; a < chain.size(); ++a)
    for (std::size_t b = a + 1; b < chain.size(); ++b)
      for (int s = 0; s < 2; ++s) {
        const Multivector& bv = s == 0 ? p : q;
        if (!poisson_bracket(bv, chain[a], chain[b]).is_zero()) {
          rep.alpha = a;
          rep.beta = b;
          rep.structure = s;
          return rep;
        }
      }
  rep.in_involution = true;
  return rep;
}

}  // namespace blab
