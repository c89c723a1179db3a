#include "bracketlab/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "bracketlab/errors.hpp"

namespace blab {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

Context pick_context(const Context& a, const Context& b, const char* op) {
  if (!a) return b;
  if (!b) return a;
  require_same_context(a, b, op);
  return a;
}

}  // namespace

Polynomial::Polynomial(Context ctx, const Rational& c) : ctx_(std::move(ctx)) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(Context ctx, std::size_t i) {
  if (!ctx || i >= ctx->size()) throw DomainError("variable index out of range");
  Polynomial p(std::move(ctx));
  p.terms_.emplace(Monomial::variable(i), 1);
  return p;
}

Polynomial Polynomial::monomial(Context ctx, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ctx));
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int Polynomial::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

int Polynomial::min_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::add_scaled(const Polynomial& p, const Rational& c, const Monomial& m) {
  ctx_ = pick_context(ctx_, p.ctx_, "add");
  if (c == 0) return;
  for (const auto& [mono, coef] : p.terms_) add_term(mono * m, coef * c);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  ctx_ = pick_context(ctx_, o.ctx_, "add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  ctx_ = pick_context(ctx_, o.ctx_, "subtract");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(pick_context(a.ctx_, b.ctx_, "multiply"));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::diff(std::size_t i) const {
  if (ctx_ && i >= ctx_->size()) throw DomainError("poly_diff: variable index out of range");
  if (i >= kMaxVars) throw DomainError("poly_diff: variable index out of range");
  Polynomial r(ctx_);
  for (const auto& [m, c] : terms_) {
    if (m.exp[i] == 0) continue;
    Monomial d = m;
    d.exp[i] -= 1;
    r.terms_.emplace(d, c * m.exp[i]);
  }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r(ctx_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial r(ctx_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) r.terms_.emplace(m, c);
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images, const Context& target) const {
  if (images.size() < nvars()) throw DomainError("substitute: too few images");
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Polynomial t(target, c);
    for (std::size_t i = 0; i < nvars(); ++i)
      if (m.exp[i]) t = t * images[i].pow(m.exp[i]);
    r += t;
  }
  return r;
}

Polynomial Polynomial::embed(const Context& target, const std::vector<std::size_t>& map) const {
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Monomial e;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (!m.exp[i]) continue;
      if (i >= map.size() || map[i] >= target->size()) throw DomainError("embed: bad variable map");
      e.exp[map[i]] = m.exp[i];
    }
    r.terms_.emplace(e, c);
  }
  return r;
}

std::string monomial_to_string(const Monomial& m, const VariableContext& ctx) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (!m.exp[i]) continue;
    if (!s.empty()) s += '*';
    s += ctx.name(i);
    if (m.exp[i] > 1) s += '^' + std::to_string(m.exp[i]);
  }
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono = ctx_ ? monomial_to_string(m, *ctx_) : std::string();
    if (mono.empty()) {
      os << blab::to_string(a);
    } else if (a == 1) {
      os << mono;
    } else {
      os << blab::to_string(a) << '*' << mono;
    }
  }
  return os.str();
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.context() && b.context()) require_same_context(a.context(), b.context(), "poly_mul");
  return a * b;
}

Polynomial poly_diff(const Polynomial& p, std::size_t i) {
  if (!p.context() || i >= p.context()->size()) throw DomainError("poly_diff: variable index out of range");
  return p.diff(i);
}

std::vector<Monomial> monomials_up_to(std::size_t n, int hi, int lo) {
  std::vector<Monomial> out;
  if (hi < 0) return out;
  Monomial cur;
  // depth-first enumeration of exponent vectors with total degree <= hi
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      int d = hi - left;
      if (d >= lo) out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.exp[i] = static_cast<std::uint8_t>(e);
      self(self, i + 1, left - e);
    }
    cur.exp[i] = 0;
  };
  rec(rec, 0, hi);
  std::sort(out.begin(), out.end(), GrlexDesc{});
  return out;
}

}  // namespace blab
