#include "bracketlab/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <json.hpp>

#include "bracketlab/errors.hpp"
#include "bracketlab/tensorcalc.hpp"

namespace blab {

std::string element_kind(const Element& e) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Polynomial>) return "scalar";
        else if constexpr (std::is_same_v<T, Multivector>) return "multivector[" + std::to_string(v.degree()) + "]";
        else if constexpr (std::is_same_v<T, Form>) return "form[" + std::to_string(v.degree()) + "]";
        else return "vform[" + std::to_string(v.form_degree()) + "," + std::to_string(v.multi_degree()) + "]";
      },
      e);
}

std::string element_to_string(const Element& e) {
  return std::visit([](const auto& v) { return v.to_string(); }, e);
}

const Element* Workspace::find(const std::string& name) const {
  for (const auto& [n, e] : defs)
    if (n == name) return &e;
  return nullptr;
}

void Workspace::define(const std::string& name, Element e) {
  for (auto& [n, old] : defs)
    if (n == name) {
      old = std::move(e);
      return;
    }
  defs.emplace_back(name, std::move(e));
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Token {
  enum Kind { Int, Ident, Partial, Op, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Int, s.substr(i, j - i), i});
      i = j;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), i});
      i = j;
    } else if (c == '@') {
      std::size_t j = i + 1;
      if (j >= s.size() || !ident_start(s[j])) throw ParseError("expected a variable after '@'", i);
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Token::Partial, s.substr(i + 1, j - i - 1), i});
      i = j;
    } else if (std::string("+-*/^#()").find(c) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, c), i});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

Rational parse_int(const Token& t) {
  mpz_class z(t.text, 10);
  return Rational(z);
}

class Parser {
 public:
  Parser(const std::string& src, const Workspace& ws) : toks_(lex(src)), ws_(ws) {}

  Element run() {
    Element e = expr();
    if (peek().kind != Token::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& next() { return toks_[k_++]; }
  bool at_op(char c) const { return peek().kind == Token::Op && peek().text[0] == c; }
  const Context& ctx() const { return ws_.ctx; }

  Element expr() {
    std::size_t pos = peek().pos;
    Element a = sum();
    if (!at_op('#')) return a;
    next();
    Element b = sum();
    return tensor(a, b, pos);
  }

  Element sum() {
    Element a = wedge();
    while (at_op('+') || at_op('-')) {
      const Token& op = next();
      Element b = wedge();
      a = add(a, b, op.text[0] == '-' ? -1 : 1, op.pos);
    }
    return a;
  }

  Element wedge() {
    Element a = product();
    while (at_op('^')) {
      const Token& op = next();
      Element b = product();
      a = wedge_of(a, b, op.pos);
    }
    return a;
  }

  Element product() {
    Element a = factor();
    while (at_op('*') || at_op('/')) {
      const Token& op = next();
      if (op.text[0] == '/') {
        if (peek().kind != Token::Int) throw ParseError("division is only by an integer literal", peek().pos);
        Rational d = parse_int(next());
        if (d == 0) throw ParseError("division by zero", op.pos);
        a = scale(a, Polynomial(ctx(), Rational(1) / d), op.pos);
      } else {
        Element b = factor();
        a = multiply(a, b, op.pos);
      }
    }
    return a;
  }

  Element factor() {
    if (at_op('-')) {
      const Token& op = next();
      return scale(factor(), Polynomial(ctx(), -1), op.pos);
    }
    Element a = primary();
    // '^' followed by an integer is a power of a scalar; otherwise a wedge
    if (at_op('^') && toks_[k_ + 1].kind == Token::Int) {
      const Token& op = next();
      const Token& ex = next();
      const auto* p = std::get_if<Polynomial>(&a);
      if (!p) throw ParseError("exponent applied to a graded element", op.pos);
      unsigned long e = std::stoul(ex.text);
      if (e > 255) throw ParseError("exponent too large", ex.pos);
      a = p->pow(static_cast<unsigned>(e));
    }
    return a;
  }

  Element primary() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Int:
        return Polynomial(ctx(), parse_int(t));
      case Token::Partial: {
        int i = ctx()->index_of(t.text);
        if (i < 0) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        return Multivector::basis(ctx(), Mask{1} << i);
      }
      case Token::Ident:
        return identifier(t);
      case Token::Op:
        if (t.text[0] == '(') {
          Element e = expr();
          if (!at_op(')')) throw ParseError("expected ')'", peek().pos);
          next();
          return e;
        }
        throw ParseError("unexpected '" + t.text + "'", t.pos);
      case Token::End:
        break;
    }
    throw ParseError("unexpected end of input", t.pos);
  }

  Element identifier(const Token& t) {
    int i = ctx()->index_of(t.text);
    if (i >= 0) return Polynomial::variable(ctx(), static_cast<std::size_t>(i));
    if (const Element* e = ws_.find(t.text)) return *e;
    if (t.text.size() > 1 && t.text[0] == 'd') {
      int v = ctx()->index_of(t.text.substr(1));
      if (v >= 0) return Form::basis(ctx(), Mask{1} << v);
    }
    throw ParseError("unknown identifier '" + t.text + "'", t.pos);
  }

  static bool is_zero_scalar(const Element& e) {
    const auto* p = std::get_if<Polynomial>(&e);
    return p && p->is_zero();
  }

  Element add(const Element& a, const Element& b, int sign, std::size_t pos) {
    if (is_zero_scalar(a)) return scale(b, Polynomial(ctx(), sign), pos);
    if (is_zero_scalar(b)) return a;
    if (a.index() != b.index()) throw ParseError("cannot add " + element_kind(a) + " and " + element_kind(b), pos);
    return std::visit(
        [&](const auto& x) -> Element {
          using T = std::decay_t<decltype(x)>;
          const T& y = std::get<T>(b);
          if constexpr (std::is_same_v<T, Polynomial>) {
            return sign > 0 ? x + y : x - y;
          } else if constexpr (std::is_same_v<T, VForm>) {
            if (!x.is_zero() && !y.is_zero() &&
                (x.form_degree() != y.form_degree() || x.multi_degree() != y.multi_degree()))
              throw ParseError("cannot add " + element_kind(a) + " and " + element_kind(b), pos);
            return sign > 0 ? x + y : x - y;
          } else {
            if (!x.is_zero() && !y.is_zero() && x.degree() != y.degree())
              throw ParseError("cannot add " + element_kind(a) + " and " + element_kind(b), pos);
            return sign > 0 ? x + y : x - y;
          }
        },
        a);
  }

  Element scale(const Element& a, const Polynomial& f, std::size_t) {
    return std::visit(
        [&](const auto& x) -> Element {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Polynomial>) return f * x;
          else return f * x;
        },
        a);
  }

  Element multiply(const Element& a, const Element& b, std::size_t pos) {
    if (const auto* p = std::get_if<Polynomial>(&a)) return scale(b, *p, pos);
    if (const auto* p = std::get_if<Polynomial>(&b)) return scale(a, *p, pos);
    throw ParseError("'*' needs a scalar operand; use '^' for the wedge product", pos);
  }

  Element wedge_of(const Element& a, const Element& b, std::size_t pos) {
    if (std::holds_alternative<Polynomial>(a) || std::holds_alternative<Polynomial>(b)) return multiply(a, b, pos);
    if (const auto* x = std::get_if<Multivector>(&a))
      if (const auto* y = std::get_if<Multivector>(&b)) return blab::wedge(*x, *y);
    if (const auto* x = std::get_if<Form>(&a)) {
      if (const auto* y = std::get_if<Form>(&b)) return blab::wedge(*x, *y);
      if (const auto* y = std::get_if<VForm>(&b)) return form_wedge(*x, *y);
    }
    throw ParseError("cannot wedge " + element_kind(a) + " and " + element_kind(b), pos);
  }

  Element tensor(const Element& a, const Element& b, std::size_t pos) {
    Form f;
    Multivector m;
    if (const auto* p = std::get_if<Polynomial>(&a)) f = Form::scalar(*p);
    else if (const auto* w = std::get_if<Form>(&a)) f = *w;
    else throw ParseError("left of '#' must be a form", pos);
    if (const auto* p = std::get_if<Polynomial>(&b)) m = Multivector::scalar(*p);
    else if (const auto* x = std::get_if<Multivector>(&b)) m = *x;
    else throw ParseError("right of '#' must be a multivector", pos);
    return VForm::tensor(f, m);
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  const Workspace& ws_;
};

}  // namespace

Element parse_element(const std::string& src, const Workspace& ws) {
  if (!ws.ctx) throw DomainError("parse: workspace has no variables");
  return Parser(src, ws).run();
}

std::vector<std::string> infer_variables(const std::vector<std::string>& sources, bool skip_fiber) {
  std::set<std::string> vars;
  for (const auto& src : sources)
    for (const auto& t : lex(src)) {
      if (t.kind == Token::Partial) {
        vars.insert(t.text);
      } else if (t.kind == Token::Ident) {
        if (skip_fiber && t.text.rfind("p_", 0) == 0) continue;
        if (t.text.size() > 1 && t.text[0] == 'd') vars.insert(t.text.substr(1));
        else vars.insert(t.text);
      }
    }
  return {vars.begin(), vars.end()};
}

Workspace load_workspace(const std::string& text) {
  using json = nlohmann::ordered_json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("workspace: ") + e.what(), e.byte);
  }
  if (!j.contains("version") || j["version"] != 1) throw DomainError("workspace: unsupported or missing version");
  if (!j.contains("vars") || !j["vars"].is_array()) throw DomainError("workspace: missing \"vars\"");
  Workspace ws;
  std::vector<std::string> names = j["vars"].get<std::vector<std::string>>();
  std::set<std::string> uniq(names.begin(), names.end());
  if (uniq.size() != names.size()) throw DomainError("workspace: duplicate variable names");
  ws.ctx = make_context(names);
  if (j.contains("fiber_split")) {
    std::size_t m = j["fiber_split"].at("base"), r = j["fiber_split"].at("fiber");
    if (m + r != names.size()) throw DomainError("workspace: fiber_split does not match vars");
    ws.fiber_split = std::make_pair(m, r);
  }
  if (j.contains("defs"))
    for (const auto& [name, src] : j["defs"].items()) {
      if (ws.ctx->index_of(name) >= 0) throw DomainError("workspace: definition '" + name + "' shadows a variable");
      if (ws.find(name)) throw DomainError("workspace: duplicate definition '" + name + "'");
      ws.define(name, parse_element(src.get<std::string>(), ws));
    }
  return ws;
}

std::string save_workspace(const Workspace& ws) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["vars"] = ws.ctx->names();
  if (ws.fiber_split) j["fiber_split"] = {{"base", ws.fiber_split->first}, {"fiber", ws.fiber_split->second}};
  j["defs"] = nlohmann::ordered_json::object();
  for (const auto& [name, e] : ws.defs) j["defs"][name] = element_to_string(e);
  return j.dump(2) + "\n";
}

}  // namespace blab
