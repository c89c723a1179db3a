#include "bracketlab/connections.hpp"

#include "bracketlab/errors.hpp"
#include "bracketlab/tensorcalc.hpp"
#include "bracketlab/vvforms.hpp"

namespace blab {

Connection::Connection(Context total, std::size_t base_count, std::vector<std::vector<Polynomial>> gamma)
    : ctx_(std::move(total)), m_(base_count), gamma_(std::move(gamma)) {
  if (m_ > ctx_->size()) throw DomainError("connection: base larger than the total space");
  if (gamma_.size() != m_) throw DomainError("connection: expected one gamma row per base variable");
  for (const auto& row : gamma_) {
    if (row.size() != fiber_count()) throw DomainError("connection: expected one gamma per fiber variable");
    for (const auto& g : row) require_same_context(ctx_, g.context(), "connection");
  }
}

Connection Connection::trivial(Context total, std::size_t base_count) {
  const std::size_t r = total->size() - base_count;
  std::vector<std::vector<Polynomial>> g(base_count, std::vector<Polynomial>(r, Polynomial(total)));
  return Connection(std::move(total), base_count, std::move(g));
}

Multivector Connection::lift(std::size_t i) const {
  if (i >= m_) throw DomainError("connection: base index out of range");
  Multivector x = Multivector::basis(ctx_, Mask{1} << i);
  for (std::size_t a = 0; a < fiber_count(); ++a) x.add_term(Mask{1} << (m_ + a), gamma_[i][a]);
  return x;
}

Multivector Connection::lift(const std::vector<Polynomial>& comps) const {
  if (comps.size() != m_) throw DomainError("connection: expected one component per base variable");
  Multivector x(ctx_, 1);
  for (std::size_t i = 0; i < m_; ++i) x += comps[i] * lift(i);
  return x;
}

std::vector<Polynomial> Connection::restrict_to_base(const Multivector& x) const {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < m_; ++i) out.push_back(apply_derivation(x, Polynomial::variable(ctx_, i)));
  return out;
}

VForm connection_form(const Connection& c) {
  const Context& ctx = c.context();
  const std::size_t m = c.base_count();
  VForm u(ctx, 1, 1);
  for (std::size_t a = 0; a < c.fiber_count(); ++a) {
    const Mask ua = Mask{1} << (m + a);
    u.add_term(ua, ua, Polynomial(ctx, 1));
    for (std::size_t i = 0; i < m; ++i) u.add_term(Mask{1} << i, ua, -c.gamma(i, a));
  }
  return u;
}

Multivector contract_connection_form(const Connection& c, const Multivector& x) {
  if (x.degree() != 1) throw DomainError("contract_connection_form: expected a derivation");
  return vform_insert(VForm::from_multivector(x), connection_form(c)).as_multivector();
}

Multivector curvature(const Connection& c, std::size_t i, std::size_t j) {
  const Context& ctx = c.context();
  Multivector xi = c.lift(i), xj = c.lift(j);
  // nabla(@x_i) o @x_j is the A -> B derivation a |-> nabla(@x_i)(@x_j a)
  std::vector<Polynomial> comps;
  for (std::size_t k = 0; k < c.base_count(); ++k) {
    Polynomial xk = Polynomial::variable(ctx, k);
    Polynomial dj = apply_derivation(Multivector::basis(ctx, Mask{1} << j), xk);
    Polynomial di = apply_derivation(Multivector::basis(ctx, Mask{1} << i), xk);
    comps.push_back(apply_derivation(xi, dj) - apply_derivation(xj, di));
  }
  return lie_bracket(xi, xj) - c.lift(comps);
}

bool is_flat(const Connection& c) {
  for (std::size_t i = 0; i < c.base_count(); ++i)
    for (std::size_t j = i + 1; j < c.base_count(); ++j)
      if (!curvature(c, i, j).is_zero()) return false;
  return true;
}

CurvatureReport curvature_vs_fn(const Connection& c) {
  const Context& ctx = c.context();
  VForm u = connection_form(c);
  VForm uu = fn_bracket(u, u);
  CurvatureReport rep;
  for (std::size_t i = 0; i < c.base_count(); ++i)
    for (std::size_t j = 0; j < c.base_count(); ++j) {
      VForm xi = VForm::from_multivector(Multivector::basis(ctx, Mask{1} << i));
      VForm xj = VForm::from_multivector(Multivector::basis(ctx, Mask{1} << j));
      CurvatureCheck chk;
      chk.i = i;
      chk.j = j;
      chk.lhs = vform_insert(xi, vform_insert(xj, uu)).as_multivector();
      chk.swapped = vform_insert(xj, vform_insert(xi, uu)).as_multivector();
      chk.rhs = i == j ? Multivector(ctx, 1) : Rational(2) * curvature(c, i, j);
      if (chk.lhs != chk.rhs) rep.holds = false;
      if (chk.swapped != chk.rhs) rep.holds_swapped = false;
      rep.checks.push_back(std::move(chk));
    }
  return rep;
}

TruncatedComplex vertical_complex(const Connection& c, int cap, Window window, Exec exec,
                                  std::optional<unsigned> shuffle_seed) {
  if (!is_flat(c)) throw UnverifiedError("vertical_complex: connection is not flat");
  return build_complex(VerticalConnection{connection_form(c), c.fiber_count()}, cap, window, exec, shuffle_seed);
}

namespace {

void require_vertical(const Connection& c, const Multivector& x, const char* op) {
  if (x.degree() != 1) throw DomainError(std::string(op) + ": expected a derivation");
  for (const auto& p : c.restrict_to_base(x))
    if (!p.is_zero()) throw DomainError(std::string(op) + ": derivation is not vertical");
}

Multivector apply_form(const VForm& r, const Multivector& x) {
  return vform_insert(VForm::from_multivector(x), r).as_multivector();
}

}  // namespace

std::vector<Multivector> hierarchy(const Connection& c, const Multivector& x, const VForm& r, std::size_t n_max) {
  require_vertical(c, x, "hierarchy");
  require_same_context(c.context(), r.context(), "hierarchy");
  if (r.form_degree() != 1 || r.multi_degree() != 1) throw DomainError("hierarchy: R must lie in D_1(Lambda^1)");
  std::vector<Multivector> out{x};
  for (std::size_t k = 0; k < n_max; ++k) out.push_back(apply_form(r, out.back()));
  return out;
}

HierarchyReport hierarchy_commutator_check(const Connection& c, const Multivector& x, const Multivector& y,
                                           const VForm& r, std::size_t m, std::size_t n) {
  require_vertical(c, y, "hierarchy_commutator_check");
  const std::size_t top = m + n;
  auto xs = hierarchy(c, x, r, top);
  auto ys = hierarchy(c, y, r, top);
  VForm xr = fn_bracket(VForm::from_multivector(x), r);
  VForm yr = fn_bracket(VForm::from_multivector(y), r);
  Multivector xy = lie_bracket(x, y);

  HierarchyReport rep;
  rep.corollary_hypotheses = xr.is_zero() && yr.is_zero() && xy.is_zero();
  rep.all_commute = true;
  for (std::size_t a = 0; a <= m; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      if (!lie_bracket(xs[a], ys[b]).is_zero()) rep.all_commute = false;

  // Z_k = R^k(Z) for any vertical Z
  auto power = [&](const Multivector& z, std::size_t k) {
    Multivector w = z;
    for (std::size_t t = 0; t < k; ++t) w = apply_form(r, w);
    return w;
  };
  Multivector rhs = power(xy, top);
  for (std::size_t i = 0; i < n; ++i) rhs += power(apply_form(xr, ys[i]), top - i - 1);
  for (std::size_t j = 0; j < m; ++j) rhs -= power(apply_form(yr, xs[j]), top - j - 1);
  rep.defect = lie_bracket(xs[m], ys[n]) - rhs;
  return rep;
}

}  // namespace blab
