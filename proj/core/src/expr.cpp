#include "scal/expr.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "scal/errors.hpp"

namespace scal {

struct Expr::Node {
  Op op;
  std::vector<Expr> kids;
  Surreal value;     // Const
  std::string name;  // Var
  long k = 0;        // PowInt
};

Expr::Expr() : Expr(nullptr) { *this = constant(Surreal(0)); }

Expr Expr::constant(const Surreal& v) { return Expr::make(Op::Const, {}, v); }
Expr Expr::rational(const Rational& q) { return constant(Surreal(q)); }
Expr Expr::var(const std::string& name) {
  return Expr::make(Op::Var, {}, Surreal(), name);
}

Expr::Op Expr::op() const { return node_->op; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }
const Surreal& Expr::const_value() const { return node_->value; }
const std::string& Expr::var_name() const { return node_->name; }
long Expr::int_power() const { return node_->k; }

bool Expr::is_zero_const() const {
  return node_->op == Op::Const && node_->value.is_zero();
}

std::optional<Rational> Expr::as_rational_const() const {
  if (node_->op != Op::Const) return std::nullopt;
  return node_->value.as_rational();
}

Expr Expr::make(Op op, std::vector<Expr> kids, Surreal value, std::string name, long k) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids = std::move(kids);
  n->value = std::move(value);
  n->name = std::move(name);
  n->k = k;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

namespace {

std::optional<Surreal> const_of(const Expr& e) {
  if (e.op() == Expr::Op::Const) return e.const_value();
  return std::nullopt;
}

}  // namespace

Expr Expr::operator+(const Expr& o) const {
  if (is_zero_const()) return o;
  if (o.is_zero_const()) return *this;
  auto a = const_of(*this), b = const_of(o);
  if (a && b) return constant(*a + *b);
  return Expr::make(Op::Add, {*this, o});
}

Expr Expr::operator-(const Expr& o) const {
  if (o.is_zero_const()) return *this;
  auto a = const_of(*this), b = const_of(o);
  if (a && b) return constant(*a - *b);
  if (is_zero_const()) return -o;
  return Expr::make(Op::Sub, {*this, o});
}

Expr Expr::operator*(const Expr& o) const {
  auto a = const_of(*this), b = const_of(o);
  if (a && b) return constant(*a * *b);
  if (is_zero_const() || o.is_zero_const()) return rational(Rational(0));
  if (a && a->identical(Surreal(1))) return o;
  if (b && b->identical(Surreal(1))) return *this;
  return Expr::make(Op::Mul, {*this, o});
}

Expr Expr::operator/(const Expr& o) const {
  if (auto b = const_of(o)) {
    if (b->is_zero()) raise(Errc::DomainError, "division by zero expression");
    if (b->identical(Surreal(1))) return *this;
    if (auto a = const_of(*this)) {
      if (b->term_count() == 1) return constant(*a / *b);
    }
  }
  if (is_zero_const()) return *this;
  return Expr::make(Op::Div, {*this, o});
}

Expr Expr::operator-() const {
  if (auto a = const_of(*this)) return constant(-*a);
  if (node_->op == Op::Neg) return node_->kids[0];
  return Expr::make(Op::Neg, {*this});
}

Expr Expr::pow(long k) const {
  if (k == 1) return *this;
  if (k == 0) return rational(Rational(1));
  if (auto a = const_of(*this)) {
    if (a->is_zero() && k < 0) raise(Errc::DomainError, "zero to a negative power");
    if (auto q = a->as_rational()) return rational(q->pow(k));
  }
  return Expr::make(Op::PowInt, {*this}, Surreal(), {}, k);
}

Expr Expr::pow_expr(const Expr& base, const Expr& exponent) {
  if (auto k = exponent.as_rational_const()) {
    if (k->is_integer() && k->num().fits_slong_p()) return base.pow(k->num().get_si());
  }
  if (base.op() != Op::Const && base.op() != Op::Var)
    raise(Errc::NotInClass, "general power needs a constant or variable base");
  return Expr::make(Op::PowExpr, {base, exponent});
}

Expr Expr::exp(const Expr& e) {
  if (e.is_zero_const()) return rational(Rational(1));
  return Expr::make(Op::Exp, {e});
}

Expr Expr::log(const Expr& e) {
  if (auto q = e.as_rational_const()) {
    if (*q == Rational(1)) return rational(Rational(0));
    if (q->sign() <= 0) raise(Errc::DomainError, "log of a non-positive constant");
  }
  return Expr::make(Op::Log, {e});
}

Expr Expr::atan(const Expr& e) {
  if (e.is_zero_const()) return rational(Rational(0));
  return Expr::make(Op::Atan, {e});
}

Expr Expr::nlog(const Expr& e) { return -log(rational(Rational(1)) - e); }

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  if (node_->op == Op::Var) out.insert(node_->name);
  for (const Expr& k : node_->kids) {
    auto sub = k.variables();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

bool Expr::contains_var(const std::string& name) const {
  if (node_->op == Op::Var) return node_->name == name;
  for (const Expr& k : node_->kids)
    if (k.contains_var(name)) return true;
  return false;
}

Expr Expr::substitute(const std::string& name, const Expr& replacement) const {
  switch (node_->op) {
    case Op::Const: return *this;
    case Op::Var: return node_->name == name ? replacement : *this;
    default: break;
  }
  std::vector<Expr> kids;
  kids.reserve(node_->kids.size());
  for (const Expr& k : node_->kids) kids.push_back(k.substitute(name, replacement));
  switch (node_->op) {
    case Op::Add: return kids[0] + kids[1];
    case Op::Sub: return kids[0] - kids[1];
    case Op::Mul: return kids[0] * kids[1];
    case Op::Div: return kids[0] / kids[1];
    case Op::Neg: return -kids[0];
    case Op::PowInt: return kids[0].pow(node_->k);
    case Op::PowExpr: return pow_expr(kids[0], kids[1]);
    case Op::Exp: return exp(kids[0]);
    case Op::Log: return log(kids[0]);
    case Op::Atan: return atan(kids[0]);
    default: raise(Errc::Internal, "bad node");
  }
}

// ---------------------------------------------------------------------------
// exact evaluation

namespace {

Surreal eval_exp_value(const Surreal& c) { return surreal_exp_value(c); }

Surreal eval_pow_value(const Surreal& base, const Surreal& expo) {
  if (auto k = expo.as_rational()) {
    if (k->is_integer() && k->num().fits_slong_p()) return base.pow(k->num().get_si());
  }
  auto q = base.as_rational();
  if (!q) raise(Errc::UnsupportedClass, "general power of a non-rational base");
  if (q->sign() <= 0)
    raise(Errc::UnsupportedClass, "general power with a non-positive base");
  ExactReal logq = ExactReal::log(ExactReal(*q));
  // base^v = exp(v log base)
  return eval_exp_value(expo * Surreal(logq));
}

}  // namespace

Surreal Expr::eval(const std::map<std::string, Surreal>& env) const {
  switch (node_->op) {
    case Op::Const: return node_->value;
    case Op::Var: {
      auto it = env.find(node_->name);
      if (it == env.end()) raise(Errc::DomainError, "unbound variable " + node_->name);
      return it->second;
    }
    case Op::Add: return node_->kids[0].eval(env) + node_->kids[1].eval(env);
    case Op::Sub: return node_->kids[0].eval(env) - node_->kids[1].eval(env);
    case Op::Mul: return node_->kids[0].eval(env) * node_->kids[1].eval(env);
    case Op::Div: return node_->kids[0].eval(env) / node_->kids[1].eval(env);
    case Op::Neg: return -node_->kids[0].eval(env);
    case Op::PowInt: return node_->kids[0].eval(env).pow(node_->k);
    case Op::PowExpr:
      return eval_pow_value(node_->kids[0].eval(env), node_->kids[1].eval(env));
    case Op::Exp: return eval_exp_value(node_->kids[0].eval(env));
    case Op::Log: {
      Surreal v = node_->kids[0].eval(env);
      auto r = v.as_exact_real();
      if (!r) raise(Errc::UnsupportedClass, "log of a non-real value " + v.str());
      return Surreal(ExactReal::log(*r));
    }
    case Op::Atan: {
      Surreal v = node_->kids[0].eval(env);
      auto r = v.as_exact_real();
      if (!r) raise(Errc::UnsupportedClass, "arctan of a non-real value in eval");
      return Surreal(ExactReal::arctan(*r));
    }
  }
  raise(Errc::Internal, "bad node");
}

// ---------------------------------------------------------------------------
// rule-based differentiation

Expr Expr::derivative(const std::string& x) const {
  switch (node_->op) {
    case Op::Const: return rational(Rational(0));
    case Op::Var: return rational(node_->name == x ? Rational(1) : Rational(0));
    case Op::Add: return node_->kids[0].derivative(x) + node_->kids[1].derivative(x);
    case Op::Sub: return node_->kids[0].derivative(x) - node_->kids[1].derivative(x);
    case Op::Mul:
      return node_->kids[0].derivative(x) * node_->kids[1] +
             node_->kids[0] * node_->kids[1].derivative(x);
    case Op::Div: {
      const Expr &u = node_->kids[0], &v = node_->kids[1];
      return (u.derivative(x) * v - u * v.derivative(x)) / (v * v);
    }
    case Op::Neg: return -node_->kids[0].derivative(x);
    case Op::PowInt: {
      const Expr& u = node_->kids[0];
      return rational(Rational(node_->k)) * u.pow(node_->k - 1) * u.derivative(x);
    }
    case Op::PowExpr: {
      const Expr &b = node_->kids[0], &e = node_->kids[1];
      // b^e * (e' log b + e b'/b)
      return *this * (e.derivative(x) * log(b) + e * b.derivative(x) / b);
    }
    case Op::Exp: return *this * node_->kids[0].derivative(x);
    case Op::Log: return node_->kids[0].derivative(x) / node_->kids[0];
    case Op::Atan: {
      const Expr& u = node_->kids[0];
      return u.derivative(x) / (rational(Rational(1)) + u * u);
    }
  }
  raise(Errc::Internal, "bad node");
}

// ---------------------------------------------------------------------------
// rendering

namespace {

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div: return 2;
    case Expr::Op::Neg: return 3;
    case Expr::Op::PowInt:
    case Expr::Op::PowExpr: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = e.str();
  bool needs = precedence(e.op()) < min_prec;
  if (e.op() == Expr::Op::Const) {
    const Surreal& v = e.const_value();
    needs = v.term_count() > 1 || s.find_first_of("+- */^") != std::string::npos;
  }
  return needs ? "(" + s + ")" : s;
}

}  // namespace

std::string Expr::str() const {
  switch (node_->op) {
    case Op::Const: return node_->value.str();
    case Op::Var: return node_->name;
    case Op::Add: return node_->kids[0].str() + " + " + wrap(node_->kids[1], 2);
    case Op::Sub: return node_->kids[0].str() + " - " + wrap(node_->kids[1], 2);
    case Op::Mul: return wrap(node_->kids[0], 2) + "*" + wrap(node_->kids[1], 3);
    case Op::Div: return wrap(node_->kids[0], 2) + "/" + wrap(node_->kids[1], 3);
    case Op::Neg: return "-" + wrap(node_->kids[0], 4);
    case Op::PowInt:
      return wrap(node_->kids[0], 5) +
             (node_->k < 0 ? "^(" + std::to_string(node_->k) + ")"
                           : "^" + std::to_string(node_->k));
    case Op::PowExpr: return wrap(node_->kids[0], 5) + "^" + wrap(node_->kids[1], 5);
    case Op::Exp: return "exp(" + node_->kids[0].str() + ")";
    case Op::Log: return "log(" + node_->kids[0].str() + ")";
    case Op::Atan: return "arctan(" + node_->kids[0].str() + ")";
  }
  raise(Errc::Internal, "bad node");
}

// ---------------------------------------------------------------------------
// canonical rational-function normal form

namespace nf {

struct Poly;
using PolyPtr = std::shared_ptr<const Poly>;

struct Mono {
  std::vector<std::pair<std::string, int>> vars;   // sorted symbol powers
  PolyPtr exp_arg;                                 // nullable
  std::vector<std::pair<std::string, int>> atoms;  // sorted opaque atoms
};

int poly_compare(const Poly& a, const Poly& b);

int mono_compare(const Mono& a, const Mono& b) {
  if (a.vars != b.vars) return a.vars < b.vars ? -1 : 1;
  if (a.atoms != b.atoms) return a.atoms < b.atoms ? -1 : 1;
  if (!!a.exp_arg != !!b.exp_arg) return a.exp_arg ? 1 : -1;
  if (a.exp_arg) return poly_compare(*a.exp_arg, *b.exp_arg);
  return 0;
}

struct Poly {
  // sorted by mono_compare, nonzero rational coefficients
  std::vector<std::pair<Mono, Rational>> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_one() const {
    return terms.size() == 1 && terms[0].second == Rational(1) &&
           terms[0].first.vars.empty() && terms[0].first.atoms.empty() &&
           !terms[0].first.exp_arg;
  }
};

int poly_compare(const Poly& a, const Poly& b) {
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t i = 0; i < n; ++i) {
    int c = mono_compare(a.terms[i].first, b.terms[i].first);
    if (c != 0) return c;
    c = scal::compare(a.terms[i].second, b.terms[i].second);
    if (c != 0) return c;
  }
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  return 0;
}

Poly poly_zero() { return Poly{}; }

Poly poly_const(const Rational& q) {
  Poly p;
  if (!q.is_zero()) p.terms.push_back({Mono{}, q});
  return p;
}

Poly poly_sym(const std::string& name) {
  Poly p;
  Mono m;
  m.vars.push_back({name, 1});
  p.terms.push_back({m, Rational(1)});
  return p;
}

void poly_add_term(Poly& p, const Mono& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(p.terms.begin(), p.terms.end(), m,
                             [](const auto& t, const Mono& key) {
                               return mono_compare(t.first, key) < 0;
                             });
  if (it != p.terms.end() && mono_compare(it->first, m) == 0) {
    it->second += c;
    if (it->second.is_zero()) p.terms.erase(it);
  } else {
    p.terms.insert(it, {m, c});
  }
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.terms) poly_add_term(r, m, c);
  return r;
}

Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r.terms) c = -c;
  return r;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono m;
  // merge sorted power lists
  auto merge = [](const std::vector<std::pair<std::string, int>>& x,
                  const std::vector<std::pair<std::string, int>>& y) {
    std::vector<std::pair<std::string, int>> out;
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (i == x.size()) {
        out.push_back(y[j++]);
      } else if (j == y.size()) {
        out.push_back(x[i++]);
      } else if (x[i].first < y[j].first) {
        out.push_back(x[i++]);
      } else if (y[j].first < x[i].first) {
        out.push_back(y[j++]);
      } else {
        int p = x[i].second + y[j].second;
        if (p != 0) out.push_back({x[i].first, p});
        ++i, ++j;
      }
    }
    return out;
  };
  m.vars = merge(a.vars, b.vars);
  m.atoms = merge(a.atoms, b.atoms);
  if (a.exp_arg && b.exp_arg) {
    Poly sum = poly_add(*a.exp_arg, *b.exp_arg);
    if (!sum.is_zero()) m.exp_arg = std::make_shared<Poly>(std::move(sum));
  } else if (a.exp_arg) {
    m.exp_arg = a.exp_arg;
  } else if (b.exp_arg) {
    m.exp_arg = b.exp_arg;
  }
  return m;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) poly_add_term(r, mono_mul(ma, mb), ca * cb);
  return r;
}

Poly poly_pow(const Poly& a, long k) {
  Poly r = poly_const(Rational(1));
  for (long i = 0; i < k; ++i) r = poly_mul(r, a);
  return r;
}

struct NF {
  Poly num;
  Poly den;  // nonzero
};

// scale num and den so their joint content is 1 and den's lead is positive
NF nf_normalize(Poly num, Poly den) {
  if (den.is_zero()) raise(Errc::DomainError, "zero denominator in normal form");
  if (num.is_zero()) return NF{poly_zero(), poly_const(Rational(1))};
  mpz_class num_gcd(0), den_lcm(1);
  auto feed = [&](const Poly& p) {
    for (const auto& [m, c] : p.terms) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
      num_gcd = g;
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
      den_lcm = l;
    }
  };
  feed(num);
  feed(den);
  Rational scale(den_lcm, num_gcd);
  if (den.terms[0].second.sign() < 0) scale = -scale;
  Poly n, d;
  for (auto& [m, c] : num.terms) n.terms.push_back({m, c * scale});
  for (auto& [m, c] : den.terms) d.terms.push_back({m, c * scale});
  return NF{std::move(n), std::move(d)};
}

NF nf_const(const Rational& q) { return NF{poly_const(q), poly_const(Rational(1))}; }

NF nf_add(const NF& a, const NF& b) {
  return nf_normalize(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                      poly_mul(a.den, b.den));
}

NF nf_mul(const NF& a, const NF& b) {
  return nf_normalize(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

NF nf_neg(const NF& a) { return NF{poly_neg(a.num), a.den}; }

NF nf_div(const NF& a, const NF& b) {
  if (b.num.is_zero()) raise(Errc::DomainError, "division by zero in normal form");
  return nf_normalize(poly_mul(a.num, b.den), poly_mul(a.den, b.num));
}

bool nf_equal(const NF& a, const NF& b) {
  return poly_compare(poly_mul(a.num, b.den), poly_mul(b.num, a.den)) == 0;
}

std::string poly_str(const Poly& p);

// registry so atoms can be rebuilt into expressions for rendering
std::mutex g_atom_mutex;
std::unordered_map<std::string, Expr>& atom_registry() {
  static std::unordered_map<std::string, Expr> reg;
  return reg;
}

std::string register_atom(const std::string& key, const Expr& rebuild) {
  std::lock_guard<std::mutex> lock(g_atom_mutex);
  atom_registry().emplace(key, rebuild);
  return key;
}

Expr atom_expr(const std::string& key) {
  std::lock_guard<std::mutex> lock(g_atom_mutex);
  auto it = atom_registry().find(key);
  if (it == atom_registry().end()) raise(Errc::Internal, "unknown atom " + key);
  return it->second;
}

std::string mono_str(const Mono& m) {
  std::string s;
  for (const auto& [v, k] : m.vars) {
    if (!s.empty()) s += "*";
    s += v;
    if (k != 1) s += "^" + std::to_string(k);
  }
  if (m.exp_arg) {
    if (!s.empty()) s += "*";
    s += "exp(" + poly_str(*m.exp_arg) + ")";
  }
  for (const auto& [a, k] : m.atoms) {
    if (!s.empty()) s += "*";
    s += a;
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s;
}

std::string poly_str(const Poly& p) {
  if (p.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    Rational mag = c.abs();
    std::string ms = mono_str(m);
    std::string piece;
    if (ms.empty())
      piece = mag.str();
    else if (mag == Rational(1))
      piece = ms;
    else if (mag.is_integer())
      piece = mag.str() + "*" + ms;
    else
      piece = "(" + mag.str() + ")*" + ms;
    if (first) {
      s += (c.sign() < 0 ? "-" : "") + piece;
      first = false;
    } else {
      s += (c.sign() < 0 ? " - " : " + ") + piece;
    }
  }
  return s;
}

Expr poly_to_expr(const Poly& p) {
  Expr sum = Expr::rational(Rational(0));
  for (const auto& [m, c] : p.terms) {
    Expr term = Expr::rational(c);
    for (const auto& [v, k] : m.vars) {
      Expr base = v.rfind("atom:", 0) == 0 ? atom_expr(v) : Expr::var(v);
      term = term * base.pow(k);
    }
    if (m.exp_arg) term = term * Expr::exp(poly_to_expr(*m.exp_arg));
    for (const auto& [a, k] : m.atoms) term = term * atom_expr(a).pow(k);
    sum = sum + term;
  }
  return sum;
}

NF nf_exp(const NF& a);
NF nf_log(const NF& a);
NF nf_atan(const NF& a);

std::string nf_canonical_key(const NF& a) {
  return poly_str(a.num) + " / " + poly_str(a.den);
}

NF nf_exp(const NF& a) {
  if (a.num.is_zero()) return nf_const(Rational(1));
  if (a.den.is_one()) {
    Mono m;
    m.exp_arg = std::make_shared<Poly>(a.num);
    Poly p;
    p.terms.push_back({m, Rational(1)});
    return NF{std::move(p), poly_const(Rational(1))};
  }
  std::string key = "atom:exp{" + nf_canonical_key(a) + "}";
  register_atom(key, Expr::exp(poly_to_expr(a.num) / poly_to_expr(a.den)));
  return NF{poly_sym(key), poly_const(Rational(1))};
}

NF nf_log(const NF& a) {
  if (poly_compare(a.num, a.den) == 0) return nf_const(Rational(0));
  // log(exp(P)) = P for a bare exponential monomial
  if (a.den.is_one() && a.num.terms.size() == 1 && a.num.terms[0].second == Rational(1)) {
    const Mono& m = a.num.terms[0].first;
    if (m.vars.empty() && m.atoms.empty() && m.exp_arg)
      return NF{*m.exp_arg, poly_const(Rational(1))};
  }
  std::string key = "atom:log{" + nf_canonical_key(a) + "}";
  register_atom(key, Expr::log(poly_to_expr(a.num) / poly_to_expr(a.den)));
  return NF{poly_sym(key), poly_const(Rational(1))};
}

NF nf_atan(const NF& a) {
  if (a.num.is_zero()) return nf_const(Rational(0));
  // oddness: canonicalize the leading sign out of the argument
  if (a.num.terms[0].second.sign() < 0) return nf_neg(nf_atan(nf_neg(a)));
  std::string key = "atom:arctan{" + nf_canonical_key(a) + "}";
  register_atom(key, Expr::atan(poly_to_expr(a.num) / poly_to_expr(a.den)));
  return NF{poly_sym(key), poly_const(Rational(1))};
}

NF nf_of_expr(const Expr& e) {
  switch (e.op()) {
    case Expr::Op::Const: {
      auto q = e.const_value().as_rational();
      if (q) return nf_const(*q);
      std::string key = "atom:const{" + e.const_value().str() + "}";
      register_atom(key, e);
      return NF{poly_sym(key), poly_const(Rational(1))};
    }
    case Expr::Op::Var:
      return NF{poly_sym(e.var_name()), poly_const(Rational(1))};
    case Expr::Op::Add: return nf_add(nf_of_expr(e.children()[0]), nf_of_expr(e.children()[1]));
    case Expr::Op::Sub:
      return nf_add(nf_of_expr(e.children()[0]), nf_neg(nf_of_expr(e.children()[1])));
    case Expr::Op::Mul: return nf_mul(nf_of_expr(e.children()[0]), nf_of_expr(e.children()[1]));
    case Expr::Op::Div: return nf_div(nf_of_expr(e.children()[0]), nf_of_expr(e.children()[1]));
    case Expr::Op::Neg: return nf_neg(nf_of_expr(e.children()[0]));
    case Expr::Op::PowInt: {
      NF b = nf_of_expr(e.children()[0]);
      long k = e.int_power();
      if (k >= 0) return nf_normalize(poly_pow(b.num, k), poly_pow(b.den, k));
      return nf_normalize(poly_pow(b.den, -k), poly_pow(b.num, -k));
    }
    case Expr::Op::PowExpr: {
      // b^E = exp(E log b)
      NF ee = nf_of_expr(e.children()[1]);
      NF lb = nf_log(nf_of_expr(e.children()[0]));
      return nf_exp(nf_mul(ee, lb));
    }
    case Expr::Op::Exp: return nf_exp(nf_of_expr(e.children()[0]));
    case Expr::Op::Log: return nf_log(nf_of_expr(e.children()[0]));
    case Expr::Op::Atan: return nf_atan(nf_of_expr(e.children()[0]));
  }
  raise(Errc::Internal, "bad node");
}

}  // namespace nf

bool Expr::equivalent(const Expr& a, const Expr& b) {
  return nf::nf_equal(nf::nf_of_expr(a), nf::nf_of_expr(b));
}

// ---------------------------------------------------------------------------
// SymValue: the symbolic coefficient field

SymValue::SymValue() : nf_(std::make_shared<nf::NF>(nf::nf_const(Rational(0)))) {}

SymValue SymValue::of(const Expr& e) {
  return SymValue(std::make_shared<nf::NF>(nf::nf_of_expr(e)));
}

SymValue SymValue::of_rational(const Rational& q) {
  return SymValue(std::make_shared<nf::NF>(nf::nf_const(q)));
}

SymValue SymValue::operator+(const SymValue& o) const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_add(*nf_, *o.nf_)));
}
SymValue SymValue::operator-(const SymValue& o) const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_add(*nf_, nf::nf_neg(*o.nf_))));
}
SymValue SymValue::operator*(const SymValue& o) const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_mul(*nf_, *o.nf_)));
}
SymValue SymValue::operator/(const SymValue& o) const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_div(*nf_, *o.nf_)));
}
SymValue SymValue::operator-() const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_neg(*nf_)));
}

bool SymValue::is_zero() const { return nf_->num.is_zero(); }

bool SymValue::equal(const SymValue& a, const SymValue& b) {
  return nf::nf_equal(*a.nf_, *b.nf_);
}

std::optional<Rational> SymValue::as_rational() const {
  if (nf_->num.is_zero()) return Rational(0);
  if (!nf_->den.is_one()) return std::nullopt;
  if (nf_->num.terms.size() != 1) return std::nullopt;
  const auto& [m, c] = nf_->num.terms[0];
  if (!m.vars.empty() || !m.atoms.empty() || m.exp_arg) return std::nullopt;
  return c;
}

SymValue SymValue::exp() const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_exp(*nf_)));
}
SymValue SymValue::log() const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_log(*nf_)));
}
SymValue SymValue::atan() const {
  return SymValue(std::make_shared<nf::NF>(nf::nf_atan(*nf_)));
}

Expr SymValue::to_expr() const {
  Expr n = nf::poly_to_expr(nf_->num);
  if (nf_->den.is_one()) return n;
  return n / nf::poly_to_expr(nf_->den);
}

std::string SymValue::str() const {
  if (nf_->den.is_one()) return nf::poly_str(nf_->num);
  return "(" + nf::poly_str(nf_->num) + ")/(" + nf::poly_str(nf_->den) + ")";
}

}  // namespace scal
