#include "bracketlab/vvforms.hpp"

#include <map>
#include <tuple>

#ifdef BRACKETLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace blab {

namespace {

inline int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

void require_multi_degree_one(const VForm& om, const char* op) {
  if (om.multi_degree() != 1 && !om.is_zero())
    throw DomainError(std::string(op) + ": expected a form-valued derivation (multi-degree 1)");
}

// [d_P, (-1)^(jk) i_Omega] on D_k(A): the evaluation-based i_Omega acts from
// the right, the sign turns it into a left operator for the graded commutator.
Multivector lie_P_unchecked(const Multivector& p, const VForm& om, const Multivector& x) {
  Multivector r = schouten(p, vform_contract_multi(om, x));
  r.add_scaled(vform_contract_multi(om, schouten(p, x)), -parity_sign(om.multi_degree()));
  return Rational(parity_sign(static_cast<long>(om.form_degree()) * x.degree())) * r;
}

}  // namespace

int parallel_threads() {
#ifdef BRACKETLAB_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Form vform_contract(const VForm& om, const Form& w) {
  require_same_context(om.context(), w.context(), "vform_contract");
  Form r(w.context(), w.degree() + om.form_degree() - om.multi_degree());
  if (r.degree() < 0 || r.degree() > static_cast<int>(w.nvars())) return r;
  for (const auto& [mi, psi] : om.components())
    r += wedge_forms(psi, contract_form(Multivector::basis(om.context(), mi), w));
  return r;
}

Form vv_contract(const VForm& om, const Form& w) {
  require_multi_degree_one(om, "vv_contract");
  return vform_contract(om, w);
}

Form lie_general(const VForm& om, const Form& w) {
  const int shift = om.form_degree() - om.multi_degree();
  Form r = de_rham(vform_contract(om, w));
  Form second = vform_contract(om, de_rham(w));
  r.add_scaled(second, -parity_sign(shift));
  // (-1)^j [d, i_Omega]; equals [i_Omega, d] on D_1(Lambda^j) and [d, i_X] on D_i(A)
  if (om.form_degree() % 2 != 0) r = -r;
  return r;
}

Form vv_lie(const VForm& om, const Form& w) {
  require_multi_degree_one(om, "vv_lie");
  return lie_general(om, w);
}

VForm vform_insert(const VForm& om, const VForm& other) {
  require_same_context(om.context(), other.context(), "vform_insert");
  const int j = other.form_degree() + om.form_degree() - om.multi_degree();
  std::map<Mask, Form, MaskOrder> comps;
  for (const auto& [mi, psi] : other.components()) comps.emplace(mi, vform_contract(om, psi));
  if (j < 0 || j > static_cast<int>(other.nvars())) return VForm(other.context(), j, other.multi_degree());
  return VForm::from_components(other.context(), j, other.multi_degree(), comps);
}

VForm fn_bracket(const VForm& a, const VForm& b) {
  require_same_context(a.context(), b.context(), "fn_bracket");
  require_multi_degree_one(a, "fn_bracket");
  require_multi_degree_one(b, "fn_bracket");
  const Context& ctx = a.context();
  const int j = a.form_degree();
  const int deg = a.form_degree() + b.form_degree();
  std::map<Mask, Form, MaskOrder> out;
  auto acc = [&](Mask l, const Form& f, int sign) {
    if (f.is_zero()) return;
    auto it = out.try_emplace(l, Form(ctx, deg)).first;
    it->second.add_scaled(f, sign);
  };
  const int sj = parity_sign(j);
  for (const auto& [l, w] : a.components()) {
    const Multivector x = Multivector::basis(ctx, l);
    const Form dw = de_rham(w);
    for (const auto& [m, wp] : b.components()) {
      const Multivector xp = Multivector::basis(ctx, m);
      // coordinate fields commute, so the [X,X'] term vanishes
      acc(m, wedge_forms(w, lie_form(x, wp)), 1);
      acc(l, wedge_forms(lie_form(xp, w), wp), -1);
      acc(m, wedge_forms(dw, contract_form(x, wp)), sj);
      acc(l, wedge_forms(contract_form(xp, w), de_rham(wp)), sj);
    }
  }
  if (deg > static_cast<int>(a.nvars())) return VForm(ctx, deg, 1);
  return VForm::from_components(ctx, deg, 1, out);
}

VForm nr_bracket(const VForm& a, const VForm& b) {
  require_multi_degree_one(a, "nr_bracket");
  require_multi_degree_one(b, "nr_bracket");
  VForm r = vform_insert(a, b);
  r.add_scaled(vform_insert(b, a),
               -parity_sign(static_cast<long>(a.form_degree() - 1) * (b.form_degree() - 1)));
  return r;
}

IntegrabilityReport is_integrable(const VForm& n) {
  IntegrabilityReport rep;
  rep.defect = fn_bracket(n, n);
  rep.integrable = rep.defect.is_zero();
  return rep;
}

Form d_N(const VForm& n, const Form& w) {
  if (n.form_degree() != 1 && !n.is_zero()) throw DomainError("d_N: N must lie in D_1(Lambda^1)");
  if (!is_integrable(n).integrable) throw UnverifiedError("d_N: N is not integrable ([[N,N]] != 0)");
  return vv_lie(n, w);
}

Form d_N_bar(const VForm& n, const Form& w) { return de_rham(w) - d_N(n, w); }

Multivector vform_contract_multi(const VForm& om, const Multivector& x) {
  require_same_context(om.context(), x.context(), "vform_contract_multi");
  Multivector r(x.context(), x.degree() - om.form_degree() + om.multi_degree());
  if (r.degree() < 0 || r.degree() > static_cast<int>(x.nvars())) return r;
  for (const auto& [mi, psi] : om.components())
    r += wedge_multi(Multivector::basis(om.context(), mi), contract_multi(psi, x));
  return r;
}

Multivector poisson_differential_raw(const Multivector& p, const Multivector& x) { return schouten(p, x); }

Multivector lie_P_general(const Multivector& p, const VForm& om, const Multivector& x) {
  if (!schouten(p, p).is_zero()) throw UnverifiedError("lie_P_general: P is not Poisson ([[P,P]] != 0)");
  return lie_P_unchecked(p, om, x);
}

int lie_shift(LieKind kind, const VForm& om) {
  if (kind == LieKind::PoissonLie) return om.multi_degree() - om.form_degree() + 1;
  return om.form_degree() - om.multi_degree() + 1;
}

VForm apply_lie(LieKind kind, const VForm& om, const VForm& arg, const std::optional<Multivector>& poisson) {
  if (kind == LieKind::PoissonLie) {
    if (!poisson) throw DomainError("apply_lie: PoissonLie needs a Poisson bivector");
    return VForm::from_multivector(lie_P_unchecked(*poisson, om, arg.as_multivector()));
  }
  return VForm::from_form(lie_general(om, arg.as_form()));
}

namespace {

void validate_operand(LieKind kind, const VForm& om) {
  switch (kind) {
    case LieKind::LieByMultivector:
      if (om.form_degree() != 0) throw DomainError("extract_bracket: LieByMultivector operands must be multivectors");
      break;
    case LieKind::LieByVForm:
      if (om.multi_degree() != 1) throw DomainError("extract_bracket: LieByVForm operands must lie in D_1(Lambda^k)");
      break;
    default:
      break;
  }
}

using EqKey = std::tuple<Mask, Mask, Monomial>;

struct EqKeyOrder {
  bool operator()(const EqKey& a, const EqKey& b) const {
    MaskOrder mo;
    if (std::get<0>(a) != std::get<0>(b)) return mo(std::get<0>(a), std::get<0>(b));
    if (std::get<1>(a) != std::get<1>(b)) return mo(std::get<1>(a), std::get<1>(b));
    return GrlexDesc{}(std::get<2>(a), std::get<2>(b));
  }
};

struct ArgEquations {
  std::vector<Vector> rows;
  std::vector<Rational> rhs;
};

}  // namespace

ExtractResult extract_bracket(const BracketProblem& prob, Exec exec) {
  const VForm& a = prob.lhs;
  const VForm& b = prob.rhs;
  require_same_context(a.context(), b.context(), "extract_bracket");
  validate_operand(prob.kind, a);
  validate_operand(prob.kind, b);
  const Context& ctx = a.context();
  const std::size_t n = ctx->size();
  if (prob.kind == LieKind::PoissonLie) {
    if (!prob.poisson) throw DomainError("extract_bracket: PoissonLie needs a Poisson bivector");
    if (!schouten(*prob.poisson, *prob.poisson).is_zero())
      throw UnverifiedError("extract_bracket: P is not Poisson ([[P,P]] != 0)");
  }
  const int sa = lie_shift(prob.kind, a), sb = lie_shift(prob.kind, b);
  SpaceDescriptor target;
  if (prob.target) {
    target = *prob.target;
  } else if (prob.kind == LieKind::PoissonLie) {
    target = {a.multi_degree() + b.multi_degree(), a.form_degree() + b.form_degree() - 1};
  } else {
    target = {a.multi_degree() + b.multi_degree() - 1, a.form_degree() + b.form_degree()};
  }
  VForm probe(ctx, target.form_degree, target.multi_degree);
  if (lie_shift(prob.kind, probe) != sa + sb)
    throw DomainError("extract_bracket: target space grading is inconsistent with [L_a, L_b]");
  if (target.form_degree < 0 || target.multi_degree < 0 || target.form_degree > static_cast<int>(n) ||
      target.multi_degree > static_cast<int>(n))
    throw DomainError("extract_bracket: target space is empty");
  if (prob.degree_cap < 0) throw DomainError("extract_bracket: negative degree cap");

  const auto monos = monomials_up_to(n, prob.degree_cap);
  std::vector<VForm> candidates;
  for (Mask mi : subsets(n, target.multi_degree))
    for (Mask mj : subsets(n, target.form_degree))
      for (const auto& mono : monos) {
        VForm c(ctx, target.form_degree, target.multi_degree);
        c.add_term(mj, mi, Polynomial::monomial(ctx, mono));
        candidates.push_back(std::move(c));
      }

  std::vector<VForm> args;
  for (Mask m : all_subsets(n))
    for (const auto& mono : monos) {
      VForm arg = prob.kind == LieKind::PoissonLie ? VForm(ctx, 0, mask_size(m)) : VForm(ctx, mask_size(m), 0);
      if (prob.kind == LieKind::PoissonLie)
        arg.add_term(0, m, Polynomial::monomial(ctx, mono));
      else
        arg.add_term(m, 0, Polynomial::monomial(ctx, mono));
      args.push_back(std::move(arg));
    }

  const int comm_sign = -parity_sign(static_cast<long>(sa) * sb);
  auto build = [&](const VForm& arg) {
    VForm t = apply_lie(prob.kind, a, apply_lie(prob.kind, b, arg, prob.poisson), prob.poisson);
    t.add_scaled(apply_lie(prob.kind, b, apply_lie(prob.kind, a, arg, prob.poisson), prob.poisson), comm_sign);
    std::map<EqKey, std::pair<Vector, Rational>, EqKeyOrder> eqs;
    auto row_for = [&](const EqKey& k) -> std::pair<Vector, Rational>& {
      auto it = eqs.find(k);
      if (it == eqs.end()) it = eqs.emplace(k, std::make_pair(Vector(candidates.size()), Rational(0))).first;
      return it->second;
    };
    for (const auto& [key, c] : t.coeffs())
      for (const auto& [mono, q] : c.terms()) row_for({key.first, key.second, mono}).second = q;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      VForm lb = apply_lie(prob.kind, candidates[ci], arg, prob.poisson);
      for (const auto& [key, c] : lb.coeffs())
        for (const auto& [mono, q] : c.terms()) row_for({key.first, key.second, mono}).first[ci] = q;
    }
    ArgEquations out;
    for (auto& [k, rr] : eqs) {
      out.rows.push_back(std::move(rr.first));
      out.rhs.push_back(std::move(rr.second));
    }
    return out;
  };

  std::vector<ArgEquations> per_arg(args.size());
  if (exec == Exec::Parallel) {
#ifdef BRACKETLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(args.size()); ++k) per_arg[k] = build(args[k]);
  } else {
    for (std::size_t k = 0; k < args.size(); ++k) per_arg[k] = build(args[k]);
  }

  IncrementalEchelon ech(candidates.size());
  std::size_t equations = 0;
  for (std::size_t k = 0; k < args.size(); ++k) {
    for (std::size_t r = 0; r < per_arg[k].rows.size(); ++r) {
      ++equations;
      if (!ech.add_row(std::move(per_arg[k].rows[r]), per_arg[k].rhs[r])) {
        NoRepresentative nr;
        nr.degree_cap = prob.degree_cap;
        nr.witness = args[k].to_string();
        nr.arguments_checked = k + 1;
        return nr;
      }
    }
  }
  ExtractedBracket res;
  Vector x = ech.particular();
  res.element = VForm(ctx, target.form_degree, target.multi_degree);
  for (std::size_t ci = 0; ci < candidates.size(); ++ci)
    if (x[ci] != 0) res.element.add_scaled(candidates[ci], x[ci]);
  res.nullity = ech.nullity();
  res.equations = equations;
  res.arguments = args.size();
  return res;
}

}  // namespace blab
