#include "bracketlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bracketlab/cohoengine.hpp"
#include "bracketlab/connections.hpp"
#include "bracketlab/errors.hpp"
#include "bracketlab/parser.hpp"
#include "bracketlab/poisson.hpp"
#include "bracketlab/symbols.hpp"
#include "bracketlab/tensorcalc.hpp"
#include "bracketlab/vvforms.hpp"

namespace blab {

using json = nlohmann::ordered_json;

int max_degree_from_env() {
  const char* s = std::getenv("BRACKETLAB_MAX_DEGREE");
  if (!s || !*s) return 8;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end || v < 0 || v > 64) throw DomainError("BRACKETLAB_MAX_DEGREE must be an integer in 0..64");
  return static_cast<int>(v);
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  json data = json::object();
  std::vector<std::string> lines;
  int code = 0;
};

struct Options {
  std::string vars, workspace, base, fiber;
  bool json_out = false, jsonl = false, table = false, verbose = false, parallel = false;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Window parse_window(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int k = std::stoi(s);
      return {k, k};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad window '" + s + "', expected lo..hi");
  }
}

int element_degree(const Element& e) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Polynomial>) return v.degree();
        else return v.max_coeff_degree();
      },
      e);
}

VForm to_vform(const Element& e) {
  return std::visit(
      [](const auto& v) -> VForm {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Polynomial>) return VForm::from_form(Form::scalar(v));
        else if constexpr (std::is_same_v<T, Multivector>) return VForm::from_multivector(v);
        else if constexpr (std::is_same_v<T, Form>) return VForm::from_form(v);
        else return v;
      },
      e);
}

/// Collapses a vector-valued form to the plainest element kind.
Element simplify(const VForm& v) {
  if (v.form_degree() == 0 && v.multi_degree() == 0) return v.as_form().as_scalar();
  if (v.form_degree() == 0) return v.as_multivector();
  if (v.multi_degree() == 0) return v.as_form();
  return v;
}

json element_json(const Element& e) { return {{"kind", element_kind(e)}, {"value", element_to_string(e)}}; }

// Resolves the variable context and parses the expressions of one command.
class Inputs {
 public:
  Inputs(const Options& o, std::vector<std::string> sources, bool symbols = false) : max_degree_(max_degree_from_env()) {
    if (!o.workspace.empty()) {
      std::ifstream in(o.workspace);
      if (!in) throw UsageError("cannot read workspace '" + o.workspace + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      ws_ = load_workspace(ss.str());
    }
    std::vector<std::string> names;
    if (!o.base.empty() || !o.fiber.empty()) {
      auto b = split_list(o.base), f = split_list(o.fiber);
      if (b.empty() || f.empty()) throw UsageError("--base and --fiber must both be given");
      names = b;
      names.insert(names.end(), f.begin(), f.end());
      ws_.fiber_split = std::make_pair(b.size(), f.size());
    } else if (!o.vars.empty()) {
      names = split_list(o.vars);
    } else if (ws_.ctx) {
      names = ws_.ctx->names();
    } else {
      names = infer_variables(sources, symbols);
    }
    if (names.empty()) throw UsageError("no variables; pass --vars");
    if (symbols) {
      base_ = make_context(names);
      auto defs = ws_.defs;
      ws_.ctx = symbol_context(base_);
      ws_.defs.clear();
      for (auto& [n, e] : defs) ws_.define(n, parse_element(element_to_string(e), ws_));
    } else if (!ws_.ctx || ws_.ctx->names() != names) {
      auto defs = ws_.defs;
      ws_.ctx = make_context(names);
      ws_.defs.clear();
      for (auto& [n, e] : defs) ws_.define(n, parse_element(element_to_string(e), ws_));
    }
  }

  const Context& ctx() const { return ws_.ctx; }
  const Context& base() const { return base_; }
  const Workspace& workspace() const { return ws_; }
  int max_degree() const { return max_degree_; }

  Element parse(const std::string& src, const char* what) const {
    Element e = parse_element(src, ws_);
    if (element_degree(e) > max_degree_)
      throw UsageError(std::string(what) + ": coefficient degree exceeds BRACKETLAB_MAX_DEGREE=" +
                       std::to_string(max_degree_));
    return e;
  }
  template <class T>
  T parse_as(const std::string& src, const char* what) const {
    Element e = parse(src, what);
    if (auto* p = std::get_if<T>(&e)) return *p;
    if constexpr (std::is_same_v<T, Multivector>)
      if (auto* p = std::get_if<Polynomial>(&e)) return Multivector::scalar(*p);
    if constexpr (std::is_same_v<T, Form>)
      if (auto* p = std::get_if<Polynomial>(&e)) return Form::scalar(*p);
    throw UsageError(std::string(what) + ": expected " + kind_name<T>() + ", got " + element_kind(e));
  }
  PoissonStructure structure(const std::string& src, const char* what) const {
    auto p = parse_as<Multivector>(src, what);
    if (p.degree() != 2 && !p.is_zero()) throw UsageError(std::string(what) + ": expected a bivector");
    if (p.is_zero()) p = zero_of<Grade::Multi>(ctx(), 2);
    return PoissonStructure(p);
  }
  void check_cap(int cap) const {
    if (cap < 0) throw UsageError("--cap must be non-negative");
    if (cap > max_degree_) throw UsageError("--cap exceeds BRACKETLAB_MAX_DEGREE=" + std::to_string(max_degree_));
  }

 private:
  template <class T>
  static std::string kind_name() {
    if constexpr (std::is_same_v<T, Polynomial>) return "a scalar";
    else if constexpr (std::is_same_v<T, Multivector>) return "a multivector";
    else if constexpr (std::is_same_v<T, Form>) return "a form";
    else return "a vector-valued form";
  }

  Workspace ws_;
  Context base_;
  int max_degree_;
};

void put_vars(Report& r, const Context& ctx) { r.data["vars"] = ctx->names(); }

// --- plain algebra ---------------------------------------------------------

Report cmd_binary(const std::string& name, const Options& o, const std::string& a, const std::string& b) {
  Inputs in(o, {a, b});
  Element ea = in.parse(a, "-a"), eb = in.parse(b, "-b");
  Element res;
  if (name == "schouten") {
    res = schouten(in.parse_as<Multivector>(a, "-a"), in.parse_as<Multivector>(b, "-b"));
  } else if (name == "fn") {
    res = simplify(fn_bracket(to_vform(ea), to_vform(eb)));
  } else if (name == "nr") {
    res = simplify(nr_bracket(to_vform(ea), to_vform(eb)));
  } else if (name == "contract") {
    if (std::holds_alternative<Multivector>(ea) && !std::holds_alternative<Multivector>(eb)) {
      res = contract_form(std::get<Multivector>(ea), in.parse_as<Form>(b, "-b"));
    } else if (std::holds_alternative<Form>(ea) && !std::holds_alternative<Form>(eb)) {
      res = contract_multi(std::get<Form>(ea), in.parse_as<Multivector>(b, "-b"));
    } else if (std::holds_alternative<VForm>(ea)) {
      if (std::holds_alternative<Multivector>(eb))
        res = vform_contract_multi(std::get<VForm>(ea), std::get<Multivector>(eb));
      else if (std::holds_alternative<VForm>(eb))
        res = simplify(vform_insert(std::get<VForm>(ea), std::get<VForm>(eb)));
      else
        res = vform_contract(std::get<VForm>(ea), in.parse_as<Form>(b, "-b"));
    } else {
      throw UsageError("contract: cannot insert " + element_kind(ea) + " into " + element_kind(eb));
    }
  }
  Report r;
  r.data["command"] = name;
  put_vars(r, in.ctx());
  r.data["a"] = element_json(ea);
  r.data["b"] = element_json(eb);
  r.data["result"] = element_json(res);
  r.lines.push_back(element_to_string(res));
  return r;
}

Report cmd_lie(const Options& o, const std::string& a, const std::string& b, const std::string& p) {
  std::vector<std::string> srcs{a, b};
  if (!p.empty()) srcs.push_back(p);
  Inputs in(o, srcs);
  Element ea = in.parse(a, "-a"), eb = in.parse(b, "-b");
  std::optional<Multivector> poisson;
  LieKind kind;
  if (!p.empty()) {
    auto ps = in.structure(p, "-P");
    ps.require_verified("lie");
    poisson = ps.bivector();
    kind = LieKind::PoissonLie;
    if (std::holds_alternative<Form>(eb) || std::holds_alternative<VForm>(eb))
      throw UsageError("lie -P: the argument must be a multivector");
  } else {
    if (std::holds_alternative<Multivector>(eb) || std::holds_alternative<VForm>(eb))
      throw UsageError("lie: the argument must be a form");
    if (std::holds_alternative<Multivector>(ea)) kind = LieKind::LieByMultivector;
    else if (std::holds_alternative<VForm>(ea) && std::get<VForm>(ea).multi_degree() == 1) kind = LieKind::LieByVForm;
    else kind = LieKind::GeneralLie;
  }
  Element res = simplify(apply_lie(kind, to_vform(ea), to_vform(eb), poisson));
  Report r;
  r.data["command"] = "lie";
  put_vars(r, in.ctx());
  r.data["operator"] = element_json(ea);
  r.data["argument"] = element_json(eb);
  r.data["result"] = element_json(res);
  r.lines.push_back(element_to_string(res));
  return r;
}

Report cmd_d(const Options& o, const std::string& e, const std::string& p) {
  std::vector<std::string> srcs{e};
  if (!p.empty()) srcs.push_back(p);
  Inputs in(o, srcs);
  Element x = in.parse(e, "-e");
  Element res;
  std::string op = "d";
  if (p.empty()) {
    if (auto* q = std::get_if<Polynomial>(&x)) res = de_rham(*q);
    else if (auto* w = std::get_if<Form>(&x)) res = de_rham(*w);
    else throw UsageError("d: expected a form (use -P for the Poisson differentials)");
  } else {
    auto ps = in.structure(p, "-P");
    if (auto* w = std::get_if<Form>(&x)) {
      res = d_chain(ps, *w);
      op = "d_P";
    } else {
      res = d_cochain(ps, in.parse_as<Multivector>(e, "-e"));
      op = "[[P,.]]";
    }
  }
  Report r;
  r.data["command"] = "d";
  put_vars(r, in.ctx());
  r.data["operator"] = op;
  r.data["argument"] = element_json(x);
  r.data["result"] = element_json(res);
  r.lines.push_back(element_to_string(res));
  return r;
}

// --- Poisson ---------------------------------------------------------------

Report cmd_poisson_check(const Options& o, const std::string& e) {
  Inputs in(o, {e});
  auto ps = in.structure(e, "-e");
  Report r;
  r.data["command"] = "poisson-check";
  put_vars(r, in.ctx());
  r.data["bivector"] = ps.bivector().to_string();
  r.data["poisson"] = ps.verified();
  r.data["schouten_square"] = ps.defect().to_string();
  r.data["jacobi_on_generators"] = jacobi_on_generators(ps.bivector()).to_string();
  if (ps.verified()) r.lines.push_back("Poisson: yes ([[P,P]] = 0)");
  else r.lines.push_back("Poisson: no ([[P,P]] = " + ps.defect().to_string() + ")");
  return r;
}

std::string betti_line(const std::vector<std::size_t>& b) {
  std::string s = "Betti table ";
  for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "," : "") + std::to_string(b[k]);
  return s;
}

// Aligned text table: position, space, dimension, Betti number.
std::vector<std::string> aligned_table(const TruncatedComplex& c, const std::vector<std::size_t>& b) {
  std::vector<std::array<std::string, 4>> rows{{"k", "space", "dim", "betti"}};
  for (int k = c.window.lo; k <= c.window.hi; ++k) {
    const auto& s = c.space_at(k);
    rows.push_back({std::to_string(k), s.space, std::to_string(s.dim()), std::to_string(b[k - c.window.lo])});
  }
  std::array<std::size_t, 4> w{};
  for (const auto& row : rows)
    for (int i = 0; i < 4; ++i) w[i] = std::max(w[i], row[i].size());
  std::vector<std::string> out;
  for (const auto& row : rows) {
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(w[0])) << row[0] << "  " << std::setw(static_cast<int>(w[1]))
       << row[1] << "  " << std::right << std::setw(static_cast<int>(w[2])) << row[2] << "  "
       << std::setw(static_cast<int>(w[3])) << row[3];
    out.push_back(os.str());
  }
  return out;
}

Report cohomology_report(const std::string& command, const Options& o, const TruncatedComplex& c, const Context& ctx) {
  std::vector<std::size_t> b;
  Report r;
  r.data["command"] = command;
  put_vars(r, ctx);
  r.data["cap"] = c.cap;
  r.data["window"] = {c.window.lo, c.window.hi};
  json positions = json::array();
  std::vector<std::string> detail;
  for (int k = c.window.lo; k <= c.window.hi; ++k) {
    auto rep = interpret_H(c, k);
    b.push_back(rep.dimension);
    json jp = {{"position", k}, {"space", c.space_at(k).space}, {"dim", c.space_at(k).dim()},
               {"truncation", truncation_cap(c, k)}, {"betti", rep.dimension}, {"label", rep.label}};
    json reps = json::array();
    for (const auto& v : rep.representatives) reps.push_back(element_to_string(simplify(v)));
    jp["representatives"] = reps;
    if (!rep.products.empty()) {
      json prods = json::array();
      for (const auto& pc : rep.products) prods.push_back({{"a", pc.a}, {"b", pc.b}, {"op", pc.op}, {"cocycle", pc.cocycle}});
      jp["products"] = prods;
    }
    positions.push_back(jp);
    std::string head = "H^" + std::to_string(k) + " = " + std::to_string(rep.dimension);
    if (rep.dimension) head += " (" + rep.label + ")";
    detail.push_back(head);
    for (const auto& v : rep.representatives) detail.push_back("  " + element_to_string(simplify(v)));
    for (const auto& pc : rep.products)
      detail.push_back("  " + pc.op + "(" + std::to_string(pc.a) + "," + std::to_string(pc.b) + ") " +
                       (pc.cocycle ? "cocycle" : "not a cocycle"));
  }
  r.data["betti"] = b;
  r.data["positions"] = positions;
  r.data["compositions_vanish"] = compositions_vanish(c);
  if (o.table) r.lines = aligned_table(c, b);
  else r.lines.push_back(betti_line(b));
  if (o.verbose) r.lines.insert(r.lines.end(), detail.begin(), detail.end());
  return r;
}

Report cmd_poisson_coho(const std::string& command, const Options& o, const std::string& p, int cap,
                        const std::string& window) {
  Inputs in(o, {p});
  in.check_cap(cap);
  auto ps = in.structure(p, "-P");
  ps.require_verified(command.c_str());
  Window w = parse_window(window);
  ComplexKind kind = command == "poisson-coho" ? ComplexKind{PoissonCochain{ps.bivector()}}
                                               : ComplexKind{PoissonChain{ps.bivector()}};
  auto c = build_complex(kind, cap, w, o.parallel ? Exec::Parallel : Exec::Serial);
  return cohomology_report(command, o, c, in.ctx());
}

Report cmd_extended_bracket(const Options& o, const std::string& p, const std::string& a, const std::string& b) {
  Inputs in(o, {p, a, b});
  auto ps = in.structure(p, "-P");
  Form x = in.parse_as<Form>(a, "-a"), y = in.parse_as<Form>(b, "-b");
  Form res = extended_bracket(ps, x, y);
  Report r;
  r.data["command"] = "extended-bracket";
  put_vars(r, in.ctx());
  r.data["result"] = {{"degree", res.degree()}, {"value", res.to_string()}};
  r.lines.push_back(res.to_string());
  return r;
}

Report cmd_compatible(const Options& o, const std::string& p, const std::string& q) {
  Inputs in(o, {p, q});
  auto rep = compatible(in.structure(p, "-P"), in.structure(q, "-Q"));
  Report r;
  r.data["command"] = "compatible";
  put_vars(r, in.ctx());
  r.data["compatible"] = rep.compatible;
  r.data["mixed_bracket"] = rep.defect.to_string();
  r.lines.push_back(std::string("Compatible: ") + (rep.compatible ? "yes" : "no") +
                    " ([[P,Q]] = " + rep.defect.to_string() + ")");
  return r;
}

std::string join(const std::vector<Polynomial>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].to_string();
  return s;
}

Report cmd_magri(const Options& o, const std::string& p, const std::string& q, const std::string& seed,
                 std::size_t steps, int cap) {
  Inputs in(o, {p, q, seed});
  in.check_cap(cap);
  auto res = magri_chain(in.structure(p, "-P"), in.structure(q, "-Q"), in.parse_as<Polynomial>(seed, "--seed"), steps, cap);
  Report r;
  r.data["command"] = "magri";
  put_vars(r, in.ctx());
  r.data["cap"] = cap;
  if (auto* ns = std::get_if<MagriNoSolution>(&res)) {
    r.data["solution"] = false;
    r.data["step"] = ns->step;
    r.lines.push_back("no solution at step " + std::to_string(ns->step) + " (cap " + std::to_string(ns->degree_cap) + ")");
    r.code = 2;
    return r;
  }
  const auto& chain = std::get<MagriChain>(res);
  auto inv = involution_check(chain.p.bivector(), chain.q.bivector(), chain.elements);
  json el = json::array();
  for (const auto& a : chain.elements) el.push_back(a.to_string());
  r.data["solution"] = true;
  r.data["chain"] = el;
  r.data["in_involution"] = inv.in_involution;
  std::string line = "chain " + join(chain.elements);
  if (inv.in_involution) {
    line += " with involution certificate";
  } else {
    r.data["failure"] = {{"alpha", inv.alpha}, {"beta", inv.beta}, {"structure", inv.structure}};
    line += " not in involution (a_" + std::to_string(inv.alpha) + ", a_" + std::to_string(inv.beta) + ")";
  }
  r.lines.push_back(line);
  return r;
}

// --- symbols ---------------------------------------------------------------

int fiber_degree(const Polynomial& s, std::size_t m) {
  int deg = -1;
  for (const auto& [mono, c] : s.terms()) {
    int d = 0;
    for (std::size_t i = m; i < kMaxVars; ++i) d += mono.exp[i];
    if (deg >= 0 && d != deg) throw UsageError("symbol is not homogeneous in the fiber variables");
    deg = d;
  }
  return std::max(deg, 0);
}

Report cmd_symbols_bracket(const Options& o, const std::string& a, const std::string& b) {
  Inputs in(o, {a, b}, true);
  auto pa = in.parse_as<Polynomial>(a, "-a"), pb = in.parse_as<Polynomial>(b, "-b");
  std::size_t m = in.base()->size();
  Symbol sa = make_symbol(in.base(), pa, fiber_degree(pa, m));
  Symbol sb = make_symbol(in.base(), pb, fiber_degree(pb, m));
  Symbol s = symbol_bracket(sa, sb);
  Symbol c = canonical_bracket(sa, sb);
  Report r;
  r.data["command"] = "symbols-bracket";
  r.data["base"] = in.base()->names();
  r.data["result"] = {{"grade", s.grade}, {"value", s.to_string()}};
  r.data["canonical_formula_agrees"] = (s.poly == c.poly);
  r.data["sign"] = symbol_bracket_sign();
  r.lines.push_back(s.to_string());
  return r;
}

// --- connections -----------------------------------------------------------

Connection parse_connection(const Inputs& in, const std::vector<std::string>& lifts) {
  const auto& split = in.workspace().fiber_split;
  if (!split) throw UsageError("connection commands need --base/--fiber or a workspace fiber_split");
  std::size_t m = split->first, r = split->second;
  const Context& ctx = in.ctx();
  std::vector<std::vector<Polynomial>> gamma(m, std::vector<Polynomial>(r, Polynomial(ctx)));
  for (const auto& l : lifts) {
    auto eq = l.find('=');
    if (eq == std::string::npos) throw UsageError("--lift expects var=vertical field, got '" + l + "'");
    std::string v = l.substr(0, eq);
    int i = ctx->index_of(v);
    if (i < 0 || static_cast<std::size_t>(i) >= m) throw UsageError("--lift: '" + v + "' is not a base variable");
    auto x = in.parse_as<Multivector>(l.substr(eq + 1), "--lift");
    if (x.is_zero()) continue;
    if (x.degree() != 1) throw UsageError("--lift: expected a vector field");
    for (const auto& [mask, c] : x.coeffs()) {
      std::size_t k = mask_indices(mask)[0];
      if (k < m) throw UsageError("--lift: the field must be vertical (fiber directions only)");
      gamma[static_cast<std::size_t>(i)][k - m] += c;
    }
  }
  return Connection(ctx, m, gamma);
}

std::vector<std::string> lift_sources(const std::vector<std::string>& lifts) {
  std::vector<std::string> s;
  for (const auto& l : lifts) {
    auto eq = l.find('=');
    s.push_back(eq == std::string::npos ? l : l.substr(eq + 1));
  }
  return s;
}

Report cmd_connection_curvature(const Options& o, const std::vector<std::string>& lifts) {
  Inputs in(o, lift_sources(lifts));
  auto c = parse_connection(in, lifts);
  auto rep = curvature_vs_fn(c);
  Report r;
  r.data["command"] = "connection-curvature";
  put_vars(r, in.ctx());
  r.data["connection_form"] = connection_form(c).to_string();
  r.data["flat"] = is_flat(c);
  json checks = json::array();
  for (const auto& ch : rep.checks) {
    if (ch.i >= ch.j) continue;
    std::string xi = "@" + in.ctx()->name(ch.i), xj = "@" + in.ctx()->name(ch.j);
    auto R = curvature(c, ch.i, ch.j);
    checks.push_back({{"pair", {in.ctx()->name(ch.i), in.ctx()->name(ch.j)}},
                      {"curvature", R.to_string()},
                      {"i_X i_Y [[U,U]]", ch.lhs.to_string()},
                      {"i_Y i_X [[U,U]]", ch.swapped.to_string()},
                      {"2R", ch.rhs.to_string()}});
    r.lines.push_back("R(" + xi + "," + xj + ") = " + R.to_string());
  }
  r.data["checks"] = checks;
  r.data["identity_holds"] = rep.holds;
  r.data["identity_holds_swapped"] = rep.holds_swapped;
  r.lines.push_back(std::string("flat: ") + (is_flat(c) ? "yes" : "no"));
  r.lines.push_back(std::string("i_X i_Y [[U,U]] = 2R(X,Y): ") + (rep.holds ? "holds" : "fails"));
  r.lines.push_back(std::string("i_Y i_X [[U,U]] = 2R(X,Y): ") + (rep.holds_swapped ? "holds" : "fails"));
  return r;
}

Report cmd_vertical_coho(const Options& o, const std::vector<std::string>& lifts, int cap, const std::string& window) {
  Inputs in(o, lift_sources(lifts));
  in.check_cap(cap);
  auto c = parse_connection(in, lifts);
  auto tc = vertical_complex(c, cap, parse_window(window), o.parallel ? Exec::Parallel : Exec::Serial);
  return cohomology_report("vertical-coho", o, tc, in.ctx());
}

Report cmd_hierarchy(const Options& o, const std::vector<std::string>& lifts, const std::string& x,
                     const std::string& y, const std::string& rop, std::size_t steps) {
  auto srcs = lift_sources(lifts);
  srcs.push_back(x);
  srcs.push_back(rop);
  if (!y.empty()) srcs.push_back(y);
  Inputs in(o, srcs);
  auto c = parse_connection(in, lifts);
  auto X = in.parse_as<Multivector>(x, "-X");
  auto R = in.parse_as<VForm>(rop, "-R");
  auto chain = hierarchy(c, X, R, steps);
  Report r;
  r.data["command"] = "hierarchy";
  put_vars(r, in.ctx());
  json el = json::array();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    el.push_back(chain[k].to_string());
    r.lines.push_back("X_" + std::to_string(k) + " = " + chain[k].to_string());
  }
  r.data["hierarchy"] = el;
  if (!y.empty()) {
    auto Y = in.parse_as<Multivector>(y, "-Y");
    auto rep = hierarchy_commutator_check(c, X, Y, R, steps, steps);
    r.data["corollary_hypotheses"] = rep.corollary_hypotheses;
    r.data["all_commute"] = rep.all_commute;
    r.data["defect"] = rep.defect.to_string();
    r.lines.push_back(std::string("corollary hypotheses: ") + (rep.corollary_hypotheses ? "yes" : "no"));
    r.lines.push_back(std::string("[X_m, Y_n] = 0 for m, n <= ") + std::to_string(steps) + ": " +
                      (rep.all_commute ? "yes" : "no"));
  }
  return r;
}

// --- bracket extraction ----------------------------------------------------

LieKind parse_kind(const std::string& s) {
  if (s == "multivector") return LieKind::LieByMultivector;
  if (s == "vform") return LieKind::LieByVForm;
  if (s == "general") return LieKind::GeneralLie;
  if (s == "poisson") return LieKind::PoissonLie;
  throw UsageError("--kind must be multivector, vform, general or poisson");
}

Report cmd_extract(const Options& o, const std::string& kind, const std::string& a, const std::string& b,
                   const std::string& p, const std::string& target, int cap) {
  std::vector<std::string> srcs{a, b};
  if (!p.empty()) srcs.push_back(p);
  Inputs in(o, srcs);
  in.check_cap(cap);
  BracketProblem prob;
  prob.kind = parse_kind(kind);
  prob.lhs = to_vform(in.parse(a, "-a"));
  prob.rhs = to_vform(in.parse(b, "-b"));
  prob.degree_cap = cap;
  if (!p.empty()) prob.poisson = in.structure(p, "-P").bivector();
  if (!target.empty()) {
    auto t = split_list(target);
    if (t.size() != 2) throw UsageError("--target expects i,j (multivector degree, form degree)");
    prob.target = SpaceDescriptor{std::stoi(t[0]), std::stoi(t[1])};
  }
  auto res = extract_bracket(prob, o.parallel ? Exec::Parallel : Exec::Serial);
  Report r;
  r.data["command"] = "extract-bracket";
  put_vars(r, in.ctx());
  r.data["cap"] = cap;
  if (auto* nr = std::get_if<NoRepresentative>(&res)) {
    r.data["representative"] = false;
    r.data["witness"] = nr->witness;
    r.data["arguments_checked"] = nr->arguments_checked;
    r.lines.push_back("no representative up to degree " + std::to_string(nr->degree_cap) + " (witness " + nr->witness + ")");
    r.code = 2;
    return r;
  }
  const auto& ex = std::get<ExtractedBracket>(res);
  Element e = simplify(ex.element);
  r.data["representative"] = true;
  r.data["result"] = element_json(e);
  r.data["nullity"] = ex.nullity;
  r.data["equations"] = ex.equations;
  r.lines.push_back(element_to_string(e));
  if (ex.nullity) r.lines.push_back("(not unique: nullity " + std::to_string(ex.nullity) + ")");
  return r;
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.json_out || o.jsonl) {
    json j;
    j["schema_version"] = kJsonSchemaVersion;
    for (auto it = r.data.begin(); it != r.data.end(); ++it) j[it.key()] = it.value();
    j["exit_code"] = r.code;
    out << (o.jsonl ? j.dump() : j.dump(2)) << "\n";
  } else {
    for (const auto& l : r.lines) out << l << "\n";
  }
}

int run_batch(const std::string& file, const Options& o, std::ostream& out, std::ostream& err);

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bracketlab: exact Schouten, Frolicher-Nijenhuis and Poisson calculus over polynomial algebras",
               "bracketlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--vars", o.vars, "Comma-separated variables (default: inferred, sorted)");
  app.add_option("-w,--workspace", o.workspace, "Workspace file (*.blab.json)");
  app.add_flag("--json", o.json_out, "JSON output");
  app.add_flag("--jsonl", o.jsonl, "Single-line JSON output");
  app.add_flag("--parallel", o.parallel, "Use the OpenMP kernels");

  std::string a, b, e, p, q, seed, window = "0..2", x, y, rop, kind = "general", target, file;
  std::vector<std::string> lifts;
  int cap = 2;
  std::size_t steps = 3;
  std::string command;

  auto binary = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("-a", a, "First operand")->required();
    s->add_option("-b", b, "Second operand")->required();
    return s;
  };
  binary("schouten", "Schouten bracket [[A,B]] of multivectors");
  binary("fn", "Frolicher-Nijenhuis bracket of vector-valued forms");
  binary("nr", "Nijenhuis-Richardson bracket of vector-valued forms");
  binary("contract", "Insertion of A into B");
  binary("extended-bracket", "Extended Poisson bracket of forms")->add_option("-P", p, "Poisson bivector")->required();
  {
    auto* s = binary("lie", "Lie derivative of B along A (multivector, vector-valued form, or with -P on multivectors)");
    s->add_option("-P", p, "Poisson bivector");
  }
  {
    auto* s = app.add_subcommand("d", "de Rham differential, or with -P the Poisson differentials");
    s->add_option("-e", e, "Form or multivector")->required();
    s->add_option("-P", p, "Poisson bivector");
  }
  app.add_subcommand("poisson-check", "Decides [[P,P]] = 0")->add_option("-e", e, "Bivector")->required();
  for (const char* name : {"poisson-coho", "poisson-homo"}) {
    auto* s = app.add_subcommand(name, std::string(name) == "poisson-coho" ? "Truncated Poisson cohomology"
                                                                          : "Truncated Poisson homology");
    s->add_option("-P", p, "Poisson bivector")->required();
    s->add_option("--cap", cap, "Coefficient degree cap")->capture_default_str();
    s->add_option("--window", window, "Positions lo..hi")->capture_default_str();
    s->add_flag("--table", o.table, "Aligned text table");
    s->add_flag("-v,--verbose", o.verbose, "Representatives and labels");
  }
  {
    auto* s = app.add_subcommand("compatible", "Decides [[P,Q]] = 0");
    s->add_option("-P", p)->required();
    s->add_option("-Q", q)->required();
  }
  {
    auto* s = app.add_subcommand("magri", "Magri chain d_P a_s = d_Q a_(s+1)");
    s->add_option("-P", p)->required();
    s->add_option("-Q", q)->required();
    s->add_option("--seed", seed)->required();
    s->add_option("--steps", steps, "Chain length")->capture_default_str();
    s->add_option("--cap", cap = 3, "Coefficient degree cap")->capture_default_str();
  }
  binary("symbols-bracket", "Poisson bracket of principal symbols; fiber variables are p_<var>");
  for (const char* name : {"connection-curvature", "vertical-coho", "hierarchy"}) {
    auto* s = app.add_subcommand(name, std::string(name) == "connection-curvature" ? "Curvature and [[U,U]]"
                                       : std::string(name) == "vertical-coho"    ? "Vertical cohomology of a flat connection"
                                                                                  : "Hierarchy X_(k+1) = [[R, X_k]] contracted");
    s->add_option("--base", o.base, "Base variables");
    s->add_option("--fiber", o.fiber, "Fiber variables");
    s->add_option("--lift", lifts, "x=<vertical field>: Gamma components of the lift of @x");
    if (std::string(name) == "vertical-coho") {
      s->add_option("--cap", cap, "Coefficient degree cap")->capture_default_str();
      s->add_option("--window", window, "Positions lo..hi")->capture_default_str();
      s->add_flag("--table", o.table, "Aligned text table");
      s->add_flag("-v,--verbose", o.verbose, "Representatives and products");
    }
    if (std::string(name) == "hierarchy") {
      s->add_option("-X", x, "Vertical field")->required();
      s->add_option("-R", rop, "Recursion operator in D_1^v(Lambda^1)")->required();
      s->add_option("-Y", y, "Second vertical field for the commutation check");
      s->add_option("--steps", steps)->capture_default_str();
    }
  }
  {
    auto* s = app.add_subcommand("extract-bracket", "Solves L_B = [L_A, L_B'] for B");
    s->add_option("--kind", kind, "multivector | vform | general | poisson")->capture_default_str();
    s->add_option("-a", a)->required();
    s->add_option("-b", b)->required();
    s->add_option("-P", p, "Poisson bivector for --kind poisson");
    s->add_option("--target", target, "i,j: multivector and form degree of B");
    s->add_option("--cap", cap, "Coefficient degree cap")->capture_default_str();
  }
  app.add_subcommand("batch", "Runs one JSON array of arguments per input line, JSON-lines output")
      ->add_option("file", file, "Input file ('-' for stdin)")
      ->default_val("-");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  for (auto* s : app.get_subcommands()) command = s->get_name();

  try {
    Report r;
    if (command == "schouten" || command == "fn" || command == "nr" || command == "contract") r = cmd_binary(command, o, a, b);
    else if (command == "lie") r = cmd_lie(o, a, b, p);
    else if (command == "d") r = cmd_d(o, e, p);
    else if (command == "poisson-check") r = cmd_poisson_check(o, e);
    else if (command == "poisson-coho" || command == "poisson-homo") r = cmd_poisson_coho(command, o, p, cap, window);
    else if (command == "extended-bracket") r = cmd_extended_bracket(o, p, a, b);
    else if (command == "compatible") r = cmd_compatible(o, p, q);
    else if (command == "magri") r = cmd_magri(o, p, q, seed, steps, cap);
    else if (command == "symbols-bracket") r = cmd_symbols_bracket(o, a, b);
    else if (command == "connection-curvature") r = cmd_connection_curvature(o, lifts);
    else if (command == "vertical-coho") r = cmd_vertical_coho(o, lifts, cap, window);
    else if (command == "hierarchy") r = cmd_hierarchy(o, lifts, x, y, rop, steps);
    else if (command == "extract-bracket") r = cmd_extract(o, kind, a, b, p, target, cap);
    else if (command == "batch") return run_batch(file, o, out, err);
    emit(r, o, out);
    return r.code;
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << "\n";
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
  } catch (const UnverifiedError& ex) {
    err << "error: " << ex.what() << "\n";
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << "\n";
  } catch (const ContextError& ex) {
    err << "error: " << ex.what() << "\n";
  }
  return 1;
}

namespace {

int run_batch(const std::string& file, const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream f;
  std::istream* in = &std::cin;
  if (file != "-") {
    f.open(file);
    if (!f) {
      err << "error: cannot read '" << file << "'\n";
      return 1;
    }
    in = &f;
  }
  int worst = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(*in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> args;
    try {
      args = json::parse(line).get<std::vector<std::string>>();
    } catch (const std::exception&) {
      out << json{{"schema_version", kJsonSchemaVersion}, {"line", lineno}, {"exit_code", 1},
                  {"error", "expected a JSON array of strings"}}.dump()
          << "\n";
      worst = std::max(worst, 1);
      continue;
    }
    if (!args.empty() && args[0] == "batch") {
      out << json{{"schema_version", kJsonSchemaVersion}, {"line", lineno}, {"exit_code", 1},
                  {"error", "nested batch"}}.dump()
          << "\n";
      worst = std::max(worst, 1);
      continue;
    }
    std::vector<std::string> full;
    if (!o.vars.empty()) full.insert(full.end(), {"--vars", o.vars});
    if (!o.workspace.empty()) full.insert(full.end(), {"--workspace", o.workspace});
    full.push_back("--jsonl");
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream one, errs;
    int code = run_cli(full, one, errs);
    if (one.str().empty()) {
      std::string msg = errs.str();
      while (!msg.empty() && msg.back() == '\n') msg.pop_back();
      out << json{{"schema_version", kJsonSchemaVersion}, {"line", lineno}, {"exit_code", code}, {"error", msg}}.dump()
          << "\n";
    } else {
      out << one.str();
    }
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace

}  // namespace blab
