#include "bracketlab/vform.hpp"

#include "bracketlab/tensorcalc.hpp"

namespace blab {

VForm VForm::tensor(const Form& psi, const Multivector& x) {
  require_same_context(psi.context(), x.context(), "tensor");
  VForm r(psi.context(), psi.degree(), x.degree());
  for (const auto& [mj, f] : psi.coeffs())
    for (const auto& [mi, g] : x.coeffs()) r.add_term(mj, mi, f * g);
  return r;
}

VForm VForm::from_components(const Context& ctx, int form_degree, int multi_degree,
                             const std::map<Mask, Form, MaskOrder>& comps) {
  VForm r(ctx, form_degree, multi_degree);
  for (const auto& [mi, psi] : comps) {
    if (psi.is_zero()) continue;
    if (psi.degree() != form_degree) throw DomainError("VForm component has the wrong form degree");
    for (const auto& [mj, f] : psi.coeffs()) r.add_term(mj, mi, f);
  }
  return r;
}

int VForm::max_coeff_degree() const {
  int d = -1;
  for (const auto& [k, c] : coeffs_) d = std::max(d, c.degree());
  return d;
}

void VForm::add_term(Mask form, Mask multi, const Polynomial& c) {
  if (mask_size(form) != j_ || mask_size(multi) != i_) throw DomainError("VForm basis element does not match degrees");
  if (c.is_zero()) return;
  auto it = coeffs_.find({form, multi});
  if (it == coeffs_.end()) {
    coeffs_.emplace(Key{form, multi}, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void VForm::add_scaled(const VForm& o, const Rational& c) {
  if (!ctx_) ctx_ = o.ctx_;
  if (o.ctx_) require_same_context(ctx_, o.ctx_, "VForm add");
  if (o.is_zero() || c == 0) return;
  if (is_zero()) {
    j_ = o.j_;
    i_ = o.i_;
  }
  if (o.j_ != j_ || o.i_ != i_) throw DomainError("cannot add VForms of different bidegrees");
  for (const auto& [k, p] : o.coeffs_) add_term(k.first, k.second, p * c);
}

std::map<Mask, Form, MaskOrder> VForm::components() const {
  std::map<Mask, Form, MaskOrder> out;
  for (const auto& [k, c] : coeffs_) {
    auto it = out.try_emplace(k.second, Form(ctx_, j_)).first;
    it->second.add_term(k.first, c);
  }
  return out;
}

Multivector VForm::as_multivector() const {
  if (j_ != 0) throw DomainError("VForm has a nonzero form degree");
  Multivector r(ctx_, i_);
  for (const auto& [k, c] : coeffs_) r.add_term(k.second, c);
  return r;
}

Form VForm::as_form() const {
  if (i_ != 0) throw DomainError("VForm has a nonzero multivector degree");
  Form r(ctx_, j_);
  for (const auto& [k, c] : coeffs_) r.add_term(k.first, c);
  return r;
}

VForm VForm::operator-() const {
  VForm r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

VForm operator*(const Rational& s, const VForm& a) {
  VForm r(a.ctx_, a.j_, a.i_);
  if (s == 0) return r;
  for (const auto& [k, c] : a.coeffs_) r.coeffs_.emplace(k, c * s);
  return r;
}

VForm operator*(const Polynomial& f, const VForm& a) {
  VForm r(a.ctx_, a.j_, a.i_);
  for (const auto& [k, c] : a.coeffs_) r.add_term(k.first, k.second, f * c);
  return r;
}

std::string VForm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    std::string multi;
    for (auto i : mask_indices(k.second)) {
      if (!multi.empty()) multi += '^';
      multi += "@" + ctx_->name(i);
    }
    if (multi.empty()) multi = "1";
    if (!out.empty()) out += " + ";
    out += "(" + Form::basis(ctx_, k.first, c).to_string() + "#" + multi + ")";
  }
  return out;
}

VForm form_wedge(const Form& w, const VForm& om) {
  std::map<Mask, Form, MaskOrder> comps;
  for (const auto& [mi, psi] : om.components()) comps.emplace(mi, wedge_forms(w, psi));
  VForm r(om.context(), w.degree() + om.form_degree(), om.multi_degree());
  if (r.form_degree() > static_cast<int>(om.nvars())) return r;
  return VForm::from_components(om.context(), r.form_degree(), r.multi_degree(), comps);
}

}  // namespace blab
