#include "bracketlab/cohoengine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

#include "bracketlab/errors.hpp"
#include "bracketlab/poisson.hpp"
#include "bracketlab/tensorcalc.hpp"
#include "bracketlab/vvforms.hpp"

namespace blab {

namespace {

struct Shape {
  std::string name;
  int form_degree = 0, multi_degree = 0;
  Mask multi_filter = ~Mask{0};
};

const Context& kind_context(const ComplexKind& kind) {
  return std::visit(
      [](const auto& k) -> const Context& {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, DeRham>) return k.ctx;
        else if constexpr (std::is_same_v<K, PoissonCochain> || std::is_same_v<K, PoissonChain>) return k.p.context();
        else if constexpr (std::is_same_v<K, VerticalConnection>) return k.u.context();
        else return k.n.context();
      },
      kind);
}

int kind_direction(const ComplexKind& kind) { return std::holds_alternative<PoissonChain>(kind) ? -1 : 1; }

int structure_degree(const ComplexKind& kind) {
  int g = std::visit(
      [](const auto& k) -> int {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, DeRham>) return 0;
        else if constexpr (std::is_same_v<K, PoissonCochain> || std::is_same_v<K, PoissonChain>)
          return k.p.max_coeff_degree();
        else if constexpr (std::is_same_v<K, VerticalConnection>) return k.u.max_coeff_degree();
        else return k.n.max_coeff_degree();
      },
      kind);
  return std::max(g, 0);
}

Shape shape_of(const ComplexKind& kind, int k) {
  const std::string ks = std::to_string(k);
  if (std::holds_alternative<PoissonCochain>(kind)) return {"D_" + ks + "(A)", 0, k};
  if (std::holds_alternative<Nijenhuis>(kind)) return {"D_1(Lambda^" + ks + ")", k, 1};
  if (const auto* v = std::get_if<VerticalConnection>(&kind)) {
    const std::size_t n = v->u.nvars();
    Mask fiber = 0;
    for (std::size_t i = n - v->fiber_count; i < n; ++i) fiber |= Mask{1} << i;
    return {"D_1^v(Lambda^" + ks + ")", k, 1, fiber};
  }
  return {"Lambda^" + ks, k, 0};
}

void verify(const ComplexKind& kind) {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PoissonCochain> || std::is_same_v<K, PoissonChain>) {
          PoissonStructure(k.p).require_verified("build_complex");
        } else if constexpr (std::is_same_v<K, Nijenhuis> || std::is_same_v<K, NijenhuisForms>) {
          if (k.n.form_degree() != 1 || k.n.multi_degree() != 1)
            throw DomainError("build_complex: N must lie in D_1(Lambda^1)");
          if (!is_integrable(k.n).integrable) throw UnverifiedError("build_complex: N is not integrable");
        } else if constexpr (std::is_same_v<K, VerticalConnection>) {
          if (k.u.form_degree() != 1 || k.u.multi_degree() != 1)
            throw DomainError("build_complex: connection form must lie in D_1(Lambda^1)");
          if (k.fiber_count > k.u.nvars()) throw DomainError("build_complex: fiber larger than the context");
          if (!is_integrable(k.u).integrable) throw UnverifiedError("build_complex: connection is not flat");
        }
      },
      kind);
}

VForm differential(const ComplexKind& kind, const VForm& x) {
  return std::visit(
      [&](const auto& k) -> VForm {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, DeRham>) return VForm::from_form(de_rham(x.as_form()));
        else if constexpr (std::is_same_v<K, PoissonCochain>)
          return VForm::from_multivector(schouten(k.p, x.as_multivector()));
        else if constexpr (std::is_same_v<K, PoissonChain>) {
          Form w = x.as_form();
          Form r = contract_form(k.p, de_rham(w)) - de_rham(contract_form(k.p, w));
          return VForm::from_form(r);
        } else if constexpr (std::is_same_v<K, NijenhuisForms>) return VForm::from_form(vv_lie(k.n, x.as_form()));
        else if constexpr (std::is_same_v<K, Nijenhuis>) return fn_bracket(k.n, x);
        else return fn_bracket(k.u, x);
      },
      kind);
}

using Key = std::tuple<Mask, Mask, Monomial>;

std::map<Key, std::size_t> index_of(const GradedBasis& b) {
  std::map<Key, std::size_t> idx;
  for (std::size_t k = 0; k < b.elements.size(); ++k) {
    const auto& e = b.elements[k];
    idx.emplace(Key{e.multi, e.form, e.mono}, k);
  }
  return idx;
}

GradedBasis make_space(const ComplexKind& kind, std::size_t n, int position, int poly_cap) {
  Shape s = shape_of(kind, position);
  GradedBasis b;
  b.space = s.name;
  b.position = position;
  b.form_degree = s.form_degree;
  b.multi_degree = s.multi_degree;
  b.poly_degree = poly_cap;
  if (poly_cap < 0) return b;
  auto monos = monomials_up_to(n, poly_cap);
  for (Mask mi : subsets(n, s.multi_degree)) {
    if ((mi & ~s.multi_filter) != 0) continue;
    for (Mask fj : subsets(n, s.form_degree))
      for (const auto& m : monos) b.elements.push_back({fj, mi, m});
  }
  return b;
}

}  // namespace

VForm GradedBasis::element(const Context& ctx, std::size_t k) const {
  VForm v(ctx, form_degree, multi_degree);
  const auto& e = elements.at(k);
  v.add_term(e.form, e.multi, Polynomial::monomial(ctx, e.mono));
  return v;
}

VForm GradedBasis::combination(const Context& ctx, const Vector& c) const {
  VForm v(ctx, form_degree, multi_degree);
  for (std::size_t k = 0; k < elements.size() && k < c.size(); ++k)
    if (c[k] != 0) v.add_term(elements[k].form, elements[k].multi, Polynomial::monomial(ctx, elements[k].mono, c[k]));
  return v;
}

const GradedBasis& TruncatedComplex::space_at(int position) const {
  int s = position - first;
  if (s < 0 || s >= static_cast<int>(spaces.size())) throw DomainError("position outside the built complex");
  return spaces[s];
}

const Matrix& TruncatedComplex::outgoing(int position) const {
  space_at(position);
  return out[position - first];
}

std::optional<Matrix> TruncatedComplex::incoming(int position) const {
  space_at(position);
  int src = position - direction - first;
  if (src < 0 || src >= static_cast<int>(spaces.size())) return std::nullopt;
  return out[src];
}

int truncation_cap(const TruncatedComplex& c, int position) {
  return c.cap + c.direction * position * (structure_degree(c.kind) - 1);
}

TruncatedComplex build_complex(const ComplexKind& kind, int cap, Window window, Exec exec,
                               std::optional<unsigned> shuffle_seed) {
  if (window.lo < 0 || window.lo > window.hi) throw DomainError("build_complex: bad window");
  if (cap < 0) throw DomainError("build_complex: negative degree cap");
  verify(kind);
  TruncatedComplex c;
  c.kind = kind;
  c.ctx = kind_context(kind);
  c.cap = cap;
  c.window = window;
  c.direction = kind_direction(kind);
  const int n = static_cast<int>(c.ctx->size());
  c.first = std::max(window.lo - 1, 0);
  const int last = std::min(window.hi + 1, n);

  std::mt19937 rng(shuffle_seed.value_or(0));
  for (int k = c.first; k <= last; ++k) {
    c.spaces.push_back(make_space(kind, c.ctx->size(), k, truncation_cap(c, k)));
    if (shuffle_seed) std::shuffle(c.spaces.back().elements.begin(), c.spaces.back().elements.end(), rng);
  }
  // window beyond the top degree: report empty spaces there
  for (int k = last + 1; k <= window.hi; ++k) {
    GradedBasis b = make_space(kind, c.ctx->size(), k, -1);
    c.spaces.push_back(b);
  }

  for (std::size_t s = 0; s < c.spaces.size(); ++s) {
    const GradedBasis& src = c.spaces[s];
    const int tgt_pos = src.position + c.direction;
    const int t = tgt_pos - c.first;
    if (t < 0 || t >= static_cast<int>(c.spaces.size())) {
      c.out.emplace_back(0, src.dim());
      continue;
    }
    const GradedBasis& tgt = c.spaces[t];
    auto idx = index_of(tgt);
    Matrix m(tgt.dim(), src.dim());
    const long cols = static_cast<long>(src.dim());
    bool escaped = false;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long col = 0; col < cols; ++col) {
      VForm img = differential(kind, src.element(c.ctx, static_cast<std::size_t>(col)));
      for (const auto& [key, poly] : img.coeffs())
        for (const auto& [mono, q] : poly.terms()) {
          auto it = idx.find(Key{key.second, key.first, mono});
          if (it == idx.end()) {
#pragma omp atomic write
            escaped = true;
            continue;
          }
          m(it->second, static_cast<std::size_t>(col)) = q;
        }
    }
    if (escaped)
      throw DomainError("build_complex: the differential leaves the truncated space " + tgt.space + " at cap " +
                        std::to_string(tgt.poly_degree));
    c.out.push_back(std::move(m));
  }
  return c;
}

VForm apply_differential(const TruncatedComplex& c, const VForm& x) { return differential(c.kind, x); }

bool compositions_vanish(const TruncatedComplex& c) {
  for (std::size_t s = 0; s < c.spaces.size(); ++s) {
    int next = c.spaces[s].position + c.direction - c.first;
    if (next < 0 || next >= static_cast<int>(c.spaces.size())) continue;
    const Matrix& a = c.out[s];
    const Matrix& b = c.out[next];
    if (b.rows() == 0 || a.cols() == 0) continue;
    if (!(b * a).is_zero()) return false;
  }
  return true;
}

namespace {

void check_window(const TruncatedComplex& c, int position) {
  if (position < c.window.lo || position > c.window.hi) throw DomainError("position outside the complex window");
}

}  // namespace

std::size_t betti(const TruncatedComplex& c, int position) {
  check_window(c, position);
  const GradedBasis& b = c.space_at(position);
  std::size_t r_out = rank(c.outgoing(position));
  auto in = c.incoming(position);
  std::size_t r_in = in ? rank(*in) : 0;
  return b.dim() - r_out - r_in;
}

CohomologyReport interpret_H(const TruncatedComplex& c, int position) {
  check_window(c, position);
  const GradedBasis& b = c.space_at(position);
  CohomologyReport rep;
  rep.position = position;

  const Matrix& d_out = c.outgoing(position);
  std::vector<Vector> kernel;
  if (d_out.rows() == 0) {
    for (std::size_t k = 0; k < b.dim(); ++k) {
      Vector e(b.dim());
      e[k] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = null_space(d_out);
  }
  if (!kernel.empty()) {
    Rref r = rref(Matrix::from_rows(kernel, b.dim()));
    kernel.clear();
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) kernel.push_back(r.m.row(i));
  }
  IncrementalEchelon ech(b.dim());
  if (auto in = c.incoming(position))
    for (std::size_t col = 0; col < in->cols(); ++col) ech.add_row(in->col(col), 0);
  for (const auto& v : kernel) {
    std::size_t before = ech.rank();
    ech.add_row(v, 0);
    if (ech.rank() > before) rep.representatives.push_back(b.combination(c.ctx, v));
  }
  rep.dimension = rep.representatives.size();

  if (std::holds_alternative<PoissonCochain>(c.kind)) {
    static const char* labels[] = {"Casimir", "canonical mod Hamiltonian", "infinitesimal deformation",
                                   "obstruction to prolongation"};
    rep.label = position < 4 ? labels[position] : "cocycle class";
  } else if (std::holds_alternative<PoissonChain>(c.kind)) {
    rep.label = "Poisson homology class";
  } else {
    rep.label = "cocycle class";
  }

  if (std::holds_alternative<VerticalConnection>(c.kind)) {
    for (std::size_t a = 0; a < rep.representatives.size(); ++a)
      for (std::size_t bb = 0; bb < rep.representatives.size(); ++bb) {
        const VForm& x = rep.representatives[a];
        const VForm& y = rep.representatives[bb];
        VForm ins = vform_insert(x, y);
        rep.products.push_back({a, bb, "i", ins.is_zero() || apply_differential(c, ins).is_zero()});
        VForm fn = fn_bracket(x, y);
        rep.products.push_back({a, bb, "fn", fn.is_zero() || apply_differential(c, fn).is_zero()});
      }
  }
  return rep;
}

}  // namespace blab
