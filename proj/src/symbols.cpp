#include "bracketlab/symbols.hpp"

#include <algorithm>
#include <functional>

#include "bracketlab/errors.hpp"
#include "bracketlab/linalg.hpp"
#include "bracketlab/tensorcalc.hpp"

namespace blab {

namespace {

Rational falling(int g, int k) {
  Rational r = 1;
  for (int t = 0; t < k; ++t) r *= g - t;
  return r;
}

Rational binomial(int n, int k) { return falling(n, k) / falling(k, k); }

std::size_t nbase(const Context& ctx) { return ctx ? ctx->size() : 0; }

}  // namespace

DiffOp DiffOp::multiplication(const Polynomial& a) {
  DiffOp d(a.context());
  for (const auto& [m, c] : a.terms()) d.add_term(m, Monomial{}, c);
  return d;
}

DiffOp DiffOp::partial(Context ctx, std::size_t i) {
  if (i >= nbase(ctx)) throw DomainError("partial: variable index out of range");
  DiffOp d(std::move(ctx));
  d.add_term(Monomial{}, Monomial::variable(i), 1);
  return d;
}

DiffOp DiffOp::term(Context ctx, const Monomial& alpha, const Monomial& beta, const Rational& c) {
  DiffOp d(std::move(ctx));
  d.add_term(alpha, beta, c);
  return d;
}

int DiffOp::order() const {
  int k = -1;
  for (const auto& [key, c] : terms_) k = std::max(k, key.second.degree());
  return k;
}

void DiffOp::add_term(const Monomial& alpha, const Monomial& beta, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace({alpha, beta}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial DiffOp::apply(const Polynomial& a) const {
  require_same_context(ctx_, a.context(), "DiffOp::apply");
  Polynomial r(ctx_);
  for (const auto& [key, c] : terms_) {
    Polynomial t = a;
    for (std::size_t i = 0; i < nbase(ctx_); ++i)
      for (int e = 0; e < key.second.exp[i]; ++e) t = t.diff(i);
    r.add_scaled(t, c, key.first);
  }
  return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (!ctx_) ctx_ = o.ctx_;
  require_same_context(ctx_, o.ctx_, "DiffOp +");
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  if (!ctx_) ctx_ = o.ctx_;
  require_same_context(ctx_, o.ctx_, "DiffOp -");
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

DiffOp operator*(const Rational& c, const DiffOp& a) {
  DiffOp r(a.ctx_);
  for (const auto& [key, v] : a.terms_) r.add_term(key.first, key.second, c * v);
  return r;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  // highest order first, then highest x-degree
  std::vector<std::pair<Key, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.first.second.degree() != b.first.second.degree()) return a.first.second.degree() > b.first.second.degree();
    if (a.first.first.degree() != b.first.first.degree()) return a.first.first.degree() > b.first.first.degree();
    if (a.first.second != b.first.second) return a.first.second > b.first.second;
    return a.first.first > b.first.first;
  });
  std::string s;
  for (const auto& [key, c] : sorted) {
    std::string body;
    if (!key.first.is_one()) body = monomial_to_string(key.first, *ctx_);
    for (std::size_t i = 0; i < nbase(ctx_); ++i) {
      int e = key.second.exp[i];
      if (e == 0) continue;
      if (!body.empty()) body += "*";
      body += "@" + ctx_->name(i);
      if (e > 1) body += "^" + std::to_string(e);
    }
    Rational a = abs(c);
    std::string coef = blab::to_string(a);
    std::string term = body.empty() ? coef : (a == 1 ? body : coef + "*" + body);
    if (s.empty()) s = c < 0 ? "-" + term : term;
    else s += (c < 0 ? " - " : " + ") + term;
  }
  return s;
}

DiffOp do_compose(const DiffOp& a, const DiffOp& b) {
  require_same_context(a.context(), b.context(), "do_compose");
  const std::size_t n = nbase(a.context());
  DiffOp r(a.context());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      const Monomial& beta = ka.second;
      const Monomial& gamma = kb.first;
      Monomial kappa;
      // @^beta x^gamma = sum_kappa prod C(beta,kappa) gamma!/(gamma-kappa)! x^(gamma-kappa) @^(beta-kappa)
      std::function<void(std::size_t, Rational)> walk = [&](std::size_t i, Rational coef) {
        if (i == n) {
          Monomial x = ka.first, d = kb.second;
          for (std::size_t l = 0; l < n; ++l) {
            x.exp[l] = static_cast<std::uint8_t>(x.exp[l] + gamma.exp[l] - kappa.exp[l]);
            d.exp[l] = static_cast<std::uint8_t>(d.exp[l] + beta.exp[l] - kappa.exp[l]);
          }
          r.add_term(x, d, coef * ca * cb);
          return;
        }
        for (int k = 0; k <= std::min<int>(beta.exp[i], gamma.exp[i]); ++k) {
          kappa.exp[i] = static_cast<std::uint8_t>(k);
          walk(i + 1, coef * binomial(beta.exp[i], k) * falling(gamma.exp[i], k));
        }
        kappa.exp[i] = 0;
      };
      walk(0, 1);
    }
  return r;
}

DiffOp do_commutator(const DiffOp& a, const DiffOp& b) { return do_compose(a, b) - do_compose(b, a); }

bool order_criterion(const DiffOp& d, const std::vector<Polynomial>& as) {
  DiffOp r = d;
  for (auto it = as.rbegin(); it != as.rend(); ++it) r = do_commutator(DiffOp::multiplication(*it), r);
  return r.is_zero();
}

Context symbol_context(const Context& base) {
  const std::size_t n = nbase(base);
  if (2 * n > kMaxVars) throw DomainError("symbol_context: too many variables");
  std::vector<std::string> names = base->names();
  for (std::size_t i = 0; i < n; ++i) names.push_back("p_" + base->name(i));
  return make_context(names);
}

namespace {

int p_degree(const Monomial& m, std::size_t n) {
  int k = 0;
  for (std::size_t i = 0; i < n; ++i) k += m.exp[n + i];
  return k;
}

Symbol zero_symbol(const Context& base, int k) { return Symbol{base, Polynomial(symbol_context(base)), k}; }

}  // namespace

Symbol make_symbol(const Context& base, const Polynomial& poly, int k) {
  Context ext = symbol_context(base);
  require_same_context(ext, poly.context(), "make_symbol");
  for (const auto& [m, c] : poly.terms())
    if (p_degree(m, nbase(base)) != k) throw DomainError("make_symbol: not homogeneous of degree " + std::to_string(k) + " in p");
  return Symbol{base, poly, k};
}

Symbol symbol_of(const DiffOp& d, int k) {
  if (d.order() > k) throw DomainError("symbol_of: operator order exceeds " + std::to_string(k));
  const std::size_t n = nbase(d.context());
  Symbol s = zero_symbol(d.context(), k);
  for (const auto& [key, c] : d.terms()) {
    if (key.second.degree() != k) continue;
    Monomial m = key.first;
    for (std::size_t i = 0; i < n; ++i) m.exp[n + i] = key.second.exp[i];
    s.poly.add_term(m, c);
  }
  return s;
}

DiffOp representative(const Symbol& s) {
  const std::size_t n = nbase(s.base);
  DiffOp d(s.base);
  for (const auto& [m, c] : s.poly.terms()) {
    Monomial alpha, beta;
    for (std::size_t i = 0; i < n; ++i) {
      alpha.exp[i] = m.exp[i];
      beta.exp[i] = m.exp[n + i];
    }
    d.add_term(alpha, beta, c);
  }
  return d;
}

Symbol symbol_mul(const Symbol& a, const Symbol& b) {
  require_same_context(a.base, b.base, "symbol_mul");
  return Symbol{a.base, a.poly * b.poly, a.grade + b.grade};
}

Symbol symbol_bracket_of(const DiffOp& d1, int k1, const DiffOp& d2, int k2) {
  if (d1.order() > k1 || d2.order() > k2) throw DomainError("symbol_bracket: representative order exceeds its grade");
  if (k1 + k2 == 0) return zero_symbol(d1.context(), -1);
  return symbol_of(do_commutator(d1, d2), k1 + k2 - 1);
}

Symbol symbol_bracket(const Symbol& a, const Symbol& b) {
  require_same_context(a.base, b.base, "symbol_bracket");
  return symbol_bracket_of(representative(a), a.grade, representative(b), b.grade);
}

Symbol canonical_bracket(const Symbol& a, const Symbol& b) {
  require_same_context(a.base, b.base, "canonical_bracket");
  const std::size_t n = nbase(a.base);
  Symbol r = zero_symbol(a.base, a.grade + b.grade - 1);
  for (std::size_t i = 0; i < n; ++i) {
    r.poly += a.poly.diff(n + i) * b.poly.diff(i);
    r.poly -= a.poly.diff(i) * b.poly.diff(n + i);
  }
  return r;
}

int symbol_bracket_sign() {
  static const int sign = [] {
    Context base = make_context({"x"});
    Context ext = symbol_context(base);
    Symbol p = make_symbol(base, Polynomial::variable(ext, 1), 1);
    Symbol x = make_symbol(base, Polynomial::variable(ext, 0), 0);
    Rational a = symbol_bracket(p, x).poly.constant_term();
    Rational b = canonical_bracket(p, x).poly.constant_term();
    return a == b ? 1 : -1;
  }();
  return sign;
}

Form canonical_rho(const Context& base) {
  Context ext = symbol_context(base);
  const std::size_t n = nbase(base);
  Form rho(ext, 1);
  for (std::size_t i = 0; i < n; ++i) rho.add_term(Mask{1} << i, Polynomial::variable(ext, n + i));
  return rho;
}

bool rho_relation_holds(const Context& base) {
  Context ext = symbol_context(base);
  Form rho = canonical_rho(base);
  for (std::size_t i = 0; i < nbase(base); ++i) {
    Polynomial lhs = contract_form(Multivector::basis(ext, Mask{1} << i), rho).as_scalar();
    if (lhs != symbol_of(DiffOp::partial(base, i), 1).poly) return false;
  }
  return true;
}

Polynomial rho_bracket(const Context& base, const Polynomial& f, const Polynomial& g) {
  Context ext = symbol_context(base);
  require_same_context(ext, f.context(), "rho_bracket");
  require_same_context(ext, g.context(), "rho_bracket");
  const std::size_t m = ext->size();
  Form omega = de_rham(canonical_rho(base));
  // omega has constant coefficients: M(b, a) = coefficient of dz_b in i_{@z_a} omega
  Matrix mat(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    Form col = contract_form(Multivector::basis(ext, Mask{1} << a), omega);
    for (const auto& [mask, c] : col.coeffs())
      mat(static_cast<std::size_t>(std::countr_zero(mask)), a) = c.constant_term();
  }
  Polynomial r(ext);
  for (std::size_t b = 0; b < m; ++b) {
    Vector e(m);
    e[b] = 1;
    auto sol = solve_exact({mat, e});
    if (!std::holds_alternative<Solution>(sol)) throw DomainError("rho_bracket: d rho is degenerate");
    const Vector& v = std::get<Solution>(sol).particular;
    Polynomial dfb = -f.diff(b);
    for (std::size_t a = 0; a < m; ++a)
      if (v[a] != 0) r += Polynomial(ext, v[a]) * dfb * g.diff(a);
  }
  return r;
}

SymbolHomomorphism SymbolHomomorphism::from_substitution(const Context& base, const std::vector<Polynomial>& all) {
  const std::size_t n = nbase(base);
  if (all.size() != 2 * n) throw DomainError("symbol homomorphism: expected an image for every variable");
  SymbolHomomorphism phi{base, {}};
  for (std::size_t i = 0; i < n; ++i) {
    require_same_context(base, all[i].context(), "symbol homomorphism");
    if (all[i] != Polynomial::variable(base, i))
      throw DomainError("symbol homomorphism: must restrict to the identity on A");
  }
  for (std::size_t i = 0; i < n; ++i) {
    require_same_context(base, all[n + i].context(), "symbol homomorphism");
    phi.images.push_back(all[n + i]);
  }
  return phi;
}

Polynomial SymbolHomomorphism::apply(const Polynomial& s) const {
  const std::size_t n = nbase(base);
  std::vector<Polynomial> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(Polynomial::variable(base, i));
  for (const auto& p : images) all.push_back(p);
  return s.substitute(all, base);
}

SymbolHomomorphism section_from_form(const Form& w) {
  if (w.degree() != 1) throw DomainError("section_from_form: expected a 1-form");
  SymbolHomomorphism phi{w.context(), {}};
  for (std::size_t i = 0; i < w.nvars(); ++i)
    phi.images.push_back(contract_form(Multivector::basis(w.context(), Mask{1} << i), w).as_scalar());
  return phi;
}

Form form_from_section(const SymbolHomomorphism& phi) {
  Form w(phi.base, 1);
  for (std::size_t i = 0; i < phi.images.size(); ++i) w.add_term(Mask{1} << i, phi.images[i]);
  return w;
}

}  // namespace blab
