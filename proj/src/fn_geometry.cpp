#include "koszul/fn_geometry.hpp"

#include <sstream>
#include <stdexcept>

namespace koszul {

namespace {

using Form = std::map<Monomial, Scalar>;

int parity(int d) { return ((d % 2) + 2) % 2; }

// Degrees and parities of t^1..t^n, gamma^1..gamma^n.
struct Vars {
  int n;
  std::vector<int> deg, par;

  explicit Vars(const GradedSpace &s) : n(s.dim()), deg(2 * s.dim()), par(2 * s.dim()) {
    for (int a = 1; a <= n; ++a) {
      deg[t(a)] = s.t_degree(a);
      deg[g(a)] = s.gamma_degree(a);
    }
    for (int x = 0; x < 2 * n; ++x)
      par[x] = parity(deg[x]);
  }
  int t(int a) const { return a - 1; }
  int g(int a) const { return n + a - 1; }
  Monomial one() const { return Monomial{std::vector<int>(2 * n, 0)}; }
  Monomial single(int x) const {
    Monomial m = one();
    m.exps[x] = 1;
    return m;
  }
};

// Returns the sign of a * b in canonical order, or 0 when an odd variable repeats.
int multiply(const Vars &v, const Monomial &a, const Monomial &b, Monomial &out) {
  out.exps.assign(a.exps.size(), 0);
  int odd_before = 0, s = 0;
  for (std::size_t x = 0; x < a.exps.size(); ++x) {
    const int e = a.exps[x] + b.exps[x];
    if (v.par[x] && e > 1)
      return 0;
    out.exps[x] = e;
    if (v.par[x]) {
      s += a.exps[x] * odd_before;
      odd_before += b.exps[x];
    }
  }
  return s % 2 ? -1 : 1;
}

void add_to(Form &f, const Monomial &m, const Scalar &c) {
  if (is_zero(c))
    return;
  auto [it, fresh] = f.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (is_zero(it->second))
      f.erase(it);
  }
}

void add_to(Form &f, const Form &g, const Scalar &c) {
  for (const auto &[m, x] : g)
    add_to(f, m, c * x);
}

Form mul(const Vars &v, const Form &a, const Form &b) {
  Form r;
  Monomial m;
  for (const auto &[ma, ca] : a)
    for (const auto &[mb, cb] : b)
      if (const int s = multiply(v, ma, mb, m))
        add_to(r, m, s * ca * cb);
  return r;
}

// Left derivative d/dx.
Form deriv(const Vars &v, const Form &f, int x) {
  Form r;
  for (const auto &[m, c] : f) {
    const int e = m.exps[x];
    if (e == 0)
      continue;
    int before = 0;
    for (int y = 0; y < x; ++y)
      before += m.exps[y] * v.par[y];
    Monomial out = m;
    --out.exps[x];
    add_to(r, out, sign_scalar(v.par[x] * before) * e * c);
  }
  return r;
}

// de Rham differential: sum_a gamma^a d/dt^a.
Form de_rham(const Vars &v, const Form &f) {
  Form r;
  for (int a = 1; a <= v.n; ++a)
    add_to(r, mul(v, Form{{v.single(v.g(a)), Scalar(1)}}, deriv(v, f, v.t(a))), Scalar(1));
  return r;
}

std::vector<Form> components(const VectorForm &f) {
  std::vector<Form> c(f.space().dim() + 1);
  for (const auto &[k, x] : f.terms())
    add_to(c[k.out], k.m, x);
  return c;
}

VectorForm assemble(const GradedSpace &s, const std::vector<Form> &c) {
  VectorForm f(s);
  for (std::size_t b = 1; b < c.size(); ++b)
    for (const auto &[m, x] : c[b])
      f.add({m, static_cast<int>(b)}, x);
  return f;
}

// L_K f = sum_b K^b df/dt^b + (-1)^|K| sum_b d(K^b) df/dgamma^b.
Form lie_derivative(const Vars &v, const std::vector<Form> &K, const std::vector<Form> &dK, int degree,
                    const Form &f) {
  Form r;
  for (int b = 1; b <= v.n; ++b) {
    add_to(r, mul(v, K[b], deriv(v, f, v.t(b))), Scalar(1));
    add_to(r, mul(v, dK[b], deriv(v, f, v.g(b))), sign_scalar(degree));
  }
  return r;
}

void require_same(const VectorForm &a, const VectorForm &b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("vector forms live on different spaces");
  if (!(a.bounds() == b.bounds()))
    throw std::invalid_argument("vector forms carry incompatible truncation bounds");
}

VectorForm with_bounds(VectorForm f, const FormBounds &b) {
  f.set_bounds(b);
  return f;
}

std::string term_string(const VectorForm::Key &k, const Scalar &c, int n) {
  std::ostringstream out;
  out << c.get_str() << " * t[";
  bool first = true;
  for (int x = 0; x < n; ++x)
    for (int e = 0; e < k.m.exps[x]; ++e) {
      out << (first ? "" : ",") << x + 1;
      first = false;
    }
  out << "] g[";
  first = true;
  for (int x = 0; x < n; ++x)
    for (int e = 0; e < k.m.exps[n + x]; ++e) {
      out << (first ? "" : ",") << x + 1;
      first = false;
    }
  out << "] d[" << k.out << "]";
  return out.str();
}

// Vector fields on an even space as polynomial components 1..n.
using Field = std::vector<Form>;

Field field_bracket(const Vars &v, const Field &X, const Field &Y) {
  Field r(v.n + 1);
  for (int b = 1; b <= v.n; ++b)
    for (int a = 1; a <= v.n; ++a) {
      add_to(r[b], mul(v, X[a], deriv(v, Y[b], v.t(a))), Scalar(1));
      add_to(r[b], mul(v, Y[a], deriv(v, X[b], v.t(a))), Scalar(-1));
    }
  return r;
}

// Endomorphism of vector fields given by a weight-1 form: (JX)^b = J^b_a X^a.
struct Endomorphism {
  const Vars &v;
  std::vector<std::vector<Form>> m; // m[a][b] = J^b_a

  Endomorphism(const Vars &vars, const VectorForm &J) : v(vars), m(v.n + 1, std::vector<Form>(v.n + 1)) {
    for (const auto &[k, c] : J.terms()) {
      int a = 0;
      for (int x = 1; x <= v.n; ++x)
        if (k.m.exps[v.g(x)] > 0)
          a = x;
      Monomial p = k.m;
      p.exps[v.g(a)] = 0;
      add_to(m[a][k.out], p, c);
    }
  }
  Field operator()(const Field &X) const {
    Field r(v.n + 1);
    for (int a = 1; a <= v.n; ++a)
      for (int b = 1; b <= v.n; ++b)
        add_to(r[b], mul(v, m[a][b], X[a]), Scalar(1));
    return r;
  }
};

Field sum(const Vars &v, std::initializer_list<std::pair<Field, int>> parts) {
  Field r(v.n + 1);
  for (const auto &[f, s] : parts)
    for (int b = 1; b <= v.n; ++b)
      add_to(r[b], f[b], Scalar(s));
  return r;
}

void require_weight_one(const VectorForm &J) {
  if (!J.space().even())
    throw std::invalid_argument("torsion: the space must be concentrated in degree 0");
  for (const auto &[k, c] : J.terms())
    if (J.weight(k) != 1)
      throw std::invalid_argument("torsion: expected a form of weight 1");
}

} // namespace

bool GradedSpace::even() const {
  for (int d : degrees)
    if (d != 0)
      return false;
  return true;
}

void GradedSpace::validate() const {
  for (const auto &[ab, c] : differential) {
    const auto [a, b] = ab;
    if (a < 1 || a > dim() || b < 1 || b > dim())
      throw std::invalid_argument("differential index out of range");
    if (!is_zero(c) && degree(b) != degree(a) + 1)
      throw std::invalid_argument("differential must raise degree by one");
  }
}

bool FormBounds::admits(int poly_degree, int form_weight) const {
  return (poly < 0 || poly_degree <= poly) && (weight < 0 || form_weight <= weight) &&
         (arity < 0 || poly_degree + form_weight <= arity);
}

VectorForm::VectorForm(GradedSpace space, FormBounds bounds) : space_(std::move(space)), bounds_(bounds) {}

void VectorForm::add(const std::vector<int> &t, const std::vector<int> &g, int out, const Scalar &c) {
  const Vars v(space_);
  Monomial m = v.one(), next;
  int sign = 1;
  auto push = [&](int x) {
    const int s = multiply(v, m, v.single(x), next);
    sign *= s;
    m = next;
  };
  for (int a : t) {
    if (a < 1 || a > v.n)
      throw std::invalid_argument("t index out of range");
    push(v.t(a));
  }
  for (int a : g) {
    if (a < 1 || a > v.n)
      throw std::invalid_argument("gamma index out of range");
    push(v.g(a));
  }
  if (sign != 0)
    add(Key{m, out}, sign * c);
}

void VectorForm::add(const Key &k, const Scalar &c) {
  if (k.out < 1 || k.out > space_.dim())
    throw std::invalid_argument("output index out of range");
  if (!bounds_.admits(poly_degree(k), weight(k)))
    throw TruncationOverflow("term " + term_string(k, c, space_.dim()) + " exceeds the truncation bounds");
  if (koszul::is_zero(c))
    return;
  auto [it, fresh] = terms_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (koszul::is_zero(it->second))
      terms_.erase(it);
  }
}

void VectorForm::set_bounds(const FormBounds &b) {
  for (const auto &[k, c] : terms_)
    if (!b.admits(poly_degree(k), weight(k)))
      throw TruncationOverflow("term " + term_string(k, c, space_.dim()) + " exceeds the truncation bounds");
  bounds_ = b;
}

int VectorForm::poly_degree(const Key &k) const {
  int p = 0;
  for (int x = 0; x < space_.dim(); ++x)
    p += k.m.exps[x];
  return p;
}

int VectorForm::weight(const Key &k) const {
  int w = 0;
  for (int x = 0; x < space_.dim(); ++x)
    w += k.m.exps[space_.dim() + x];
  return w;
}

int VectorForm::degree(const Key &k) const {
  const Vars v(space_);
  int d = space_.degree(k.out);
  for (int x = 0; x < 2 * v.n; ++x)
    d += k.m.exps[x] * v.deg[x];
  return d;
}

std::optional<int> VectorForm::weight() const {
  std::optional<int> w;
  for (const auto &[k, c] : terms_) {
    if (w && *w != weight(k))
      return std::nullopt;
    w = weight(k);
  }
  return w;
}

std::optional<int> VectorForm::degree() const {
  const auto d = degrees();
  if (d.size() != 1)
    return std::nullopt;
  return *d.begin();
}

std::set<int> VectorForm::degrees() const {
  std::set<int> d;
  for (const auto &[k, c] : terms_)
    d.insert(degree(k));
  return d;
}

VectorForm VectorForm::degree_part(int d) const {
  VectorForm r(space_, bounds_);
  for (const auto &[k, c] : terms_)
    if (degree(k) == d)
      r.terms_.emplace(k, c);
  return r;
}

VectorForm &VectorForm::operator+=(const VectorForm &o) {
  require_same(*this, o);
  for (const auto &[k, c] : o.terms_)
    add(k, c);
  return *this;
}

VectorForm &VectorForm::operator-=(const VectorForm &o) {
  require_same(*this, o);
  for (const auto &[k, c] : o.terms_)
    add(k, -c);
  return *this;
}

VectorForm &VectorForm::operator*=(const Scalar &c) {
  if (koszul::is_zero(c))
    terms_.clear();
  for (auto &[k, x] : terms_)
    x *= c;
  return *this;
}

VectorForm truncated(const VectorForm &f, const FormBounds &b, int *dropped) {
  VectorForm r(f.space(), b);
  int n = 0;
  for (const auto &[k, c] : f.terms()) {
    if (b.admits(f.poly_degree(k), f.weight(k)))
      r.add(k, c);
    else
      ++n;
  }
  if (dropped)
    *dropped = n;
  return r;
}

std::string to_string(const VectorForm &f) {
  if (f.is_zero())
    return "0";
  std::string s;
  for (const auto &[k, c] : f.terms()) {
    if (!s.empty())
      s += " + ";
    s += term_string(k, c, f.space().dim());
  }
  return s;
}

VectorForm parse_vector_form(const std::string &text, const GradedSpace &space, FormBounds bounds) {
  VectorForm f(space, bounds);
  std::string rest = text;
  while (!rest.empty() && rest.back() == '\n')
    rest.pop_back();
  if (rest == "0")
    return f;
  auto list = [&](const std::string &term, const std::string &tag, std::size_t &pos) {
    if (term.compare(pos, tag.size() + 1, tag + "[") != 0)
      throw InputError("expected " + tag + "[ in vector form term: " + term);
    pos += tag.size() + 1;
    const std::size_t close = term.find(']', pos);
    if (close == std::string::npos)
      throw InputError("unterminated index list in vector form term: " + term);
    std::vector<int> out;
    std::stringstream items(term.substr(pos, close - pos));
    std::string item;
    while (std::getline(items, item, ','))
      try {
        out.push_back(std::stoi(item));
      } catch (const std::exception &) {
        throw InputError("bad index '" + item + "' in vector form term: " + term);
      }
    pos = close + 1;
    while (pos < term.size() && term[pos] == ' ')
      ++pos;
    return out;
  };
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t end = rest.find(" + ", start);
    if (end == std::string::npos)
      end = rest.size();
    const std::string term = rest.substr(start, end - start);
    const std::size_t star = term.find(" * ");
    if (star == std::string::npos)
      throw InputError("expected 'coef * ...' in vector form term: " + term);
    Scalar c;
    try {
      c = parse_scalar(term.substr(0, star));
    } catch (const std::exception &) {
      throw InputError("bad coefficient in vector form term: " + term);
    }
    std::size_t pos = star + 3;
    const auto t = list(term, "t", pos);
    const auto g = list(term, "g", pos);
    const auto d = list(term, "d", pos);
    if (d.size() != 1 || pos != term.size())
      throw InputError("expected a single output index at the end of: " + term);
    try {
      f.add(t, g, d[0], c);
    } catch (const std::invalid_argument &e) {
      throw InputError(std::string(e.what()) + " in vector form term: " + term);
    }
    start = end + 3;
  }
  return f;
}

VectorForm induced_vector_field(const GradedSpace &space) {
  VectorForm D(space);
  for (const auto &[ab, c] : space.differential)
    D.add({ab.first}, {}, ab.second, c);
  return D;
}

VectorForm fn_bracket(const VectorForm &K, const VectorForm &L) {
  require_same(K, L);
  const GradedSpace &s = K.space();
  const Vars v(s);
  std::vector<Form> out(v.n + 1);
  for (int dk : K.degrees())
    for (int dl : L.degrees()) {
      const auto Kc = components(K.degree_part(dk)), Lc = components(L.degree_part(dl));
      std::vector<Form> dKc(v.n + 1), dLc(v.n + 1);
      for (int b = 1; b <= v.n; ++b) {
        dKc[b] = de_rham(v, Kc[b]);
        dLc[b] = de_rham(v, Lc[b]);
      }
      for (int a = 1; a <= v.n; ++a) {
        add_to(out[a], lie_derivative(v, Kc, dKc, dk, Lc[a]), Scalar(1));
        add_to(out[a], lie_derivative(v, Lc, dLc, dl, Kc[a]), -sign_scalar(dk * dl));
      }
    }
  return with_bounds(assemble(s, out), K.bounds());
}

VectorForm lie_bracket(const VectorForm &X, const VectorForm &Y) {
  require_same(X, Y);
  for (const auto *f : {&X, &Y})
    for (const auto &[k, c] : f->terms())
      if (f->weight(k) != 0)
        throw std::invalid_argument("lie_bracket: expected vector fields");
  const Vars v(X.space());
  std::vector<Form> out(v.n + 1);
  for (int dx : X.degrees())
    for (int dy : Y.degrees()) {
      const auto Xc = components(X.degree_part(dx)), Yc = components(Y.degree_part(dy));
      for (int b = 1; b <= v.n; ++b)
        for (int a = 1; a <= v.n; ++a) {
          add_to(out[b], mul(v, Xc[a], deriv(v, Yc[b], v.t(a))), Scalar(1));
          add_to(out[b], mul(v, Yc[a], deriv(v, Xc[b], v.t(a))), -sign_scalar(dx * dy));
        }
    }
  return with_bounds(assemble(X.space(), out), X.bounds());
}

VectorForm TangentTensor::at(int a, int b) const {
  auto it = values.find({a, b});
  return it == values.end() ? VectorForm(space) : it->second;
}

bool TangentTensor::alternating() const {
  for (int a = 1; a <= space.dim(); ++a)
    for (int b = a; b <= space.dim(); ++b)
      if (!(at(a, b) + at(b, a)).is_zero())
        return false;
  return true;
}

VectorForm TangentTensor::to_form() const {
  if (!alternating())
    throw std::logic_error("to_form: tensor is not alternating");
  const int n = space.dim();
  VectorForm f(space);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const VectorForm value = at(a, b);
      for (const auto &[k, c] : value.terms()) {
        std::vector<int> t;
        for (int x = 0; x < n; ++x)
          t.insert(t.end(), k.m.exps[x], x + 1);
        f.add(t, {a, b}, k.out, c);
      }
    }
  return f;
}

TangentTensor TangentTensor::operator+(const TangentTensor &o) const {
  TangentTensor r{space, {}};
  for (int a = 1; a <= space.dim(); ++a)
    for (int b = 1; b <= space.dim(); ++b)
      r.values.emplace(std::make_pair(a, b), at(a, b) + o.at(a, b));
  return r;
}

bool TangentTensor::operator==(const TangentTensor &o) const {
  if (!(space == o.space))
    return false;
  for (int a = 1; a <= space.dim(); ++a)
    for (int b = 1; b <= space.dim(); ++b)
      if (!(at(a, b) == o.at(a, b)))
        return false;
  return true;
}

TangentTensor mixed_torsion(const VectorForm &J, const VectorForm &K) {
  require_same(J, K);
  require_weight_one(J);
  require_weight_one(K);
  const Vars v(J.space());
  const Endomorphism j(v, J), k(v, K);
  TangentTensor T{J.space(), {}};
  for (int a = 1; a <= v.n; ++a)
    for (int b = 1; b <= v.n; ++b) {
      Field X(v.n + 1), Y(v.n + 1);
      X[a][v.one()] = 1;
      Y[b][v.one()] = 1;
      const Field N = sum(v, {{j(k(field_bracket(v, X, Y))), 1},
                              {field_bracket(v, j(X), k(Y)), 1},
                              {j(field_bracket(v, X, k(Y))), -1},
                              {k(field_bracket(v, j(X), Y)), -1}});
      T.values.emplace(std::make_pair(a, b), assemble(J.space(), N));
    }
  return T;
}

VectorForm nijenhuis_torsion(const VectorForm &J) { return mixed_torsion(J, J).to_form(); }

const Scalar &torsion_constant() {
  static const Scalar c = [] {
    const GradedSpace s{{0, 0}, {}};
    VectorForm J(s);
    J.add({2}, {1}, 1, Scalar(1));
    J.add({1, 1}, {2}, 1, Scalar(2));
    J.add({1}, {1}, 2, Scalar(3));
    J.add({}, {2}, 2, Scalar(5));
    J.add({2, 2}, {2}, 2, Scalar(-1, 2));
    const VectorForm B = fn_bracket(J, J), N = nijenhuis_torsion(J);
    if (B.is_zero())
      throw std::logic_error("torsion_constant: degenerate example");
    const auto &[key, b] = *B.terms().begin();
    auto it = N.terms().find(key);
    const Scalar ratio = it == N.terms().end() ? Scalar(0) : it->second / b;
    if (!(N == ratio * B))
      throw std::logic_error("torsion_constant: torsion is not proportional to the bracket");
    return ratio;
  }();
  return c;
}

bool FormSeries::is_zero() const {
  for (const auto &[k, f] : coeffs)
    if (!f.is_zero())
      return false;
  return true;
}

bool FormSeries::operator==(const FormSeries &o) const {
  for (const auto &[k, f] : coeffs) {
    auto it = o.coeffs.find(k);
    if (it == o.coeffs.end() ? !f.is_zero() : !(f == it->second))
      return false;
  }
  for (const auto &[k, f] : o.coeffs)
    if (!coeffs.count(k) && !f.is_zero())
      return false;
  return true;
}

FormSeries hbar_fn_bracket(const FormSeries &A, const FormSeries &B) {
  FormSeries r;
  for (const auto &[k, a] : A.coeffs)
    for (const auto &[l, b] : B.coeffs) {
      VectorForm x = fn_bracket(a, b);
      auto it = r.coeffs.find(k + l);
      if (it == r.coeffs.end())
        r.coeffs.emplace(k + l, std::move(x));
      else
        it->second += x;
    }
  return r;
}

MCReport mc_residual(const FormSeries &gamma, const GradedSpace &space) {
  MCReport r;
  std::optional<FormBounds> bounds;
  FormSeries open;
  for (const auto &[k, f] : gamma.coeffs) {
    if (!(f.space() == space))
      throw std::invalid_argument("mc_residual: series lives on a different space");
    if (bounds && !(*bounds == f.bounds()))
      throw std::invalid_argument("mc_residual: coefficients carry different truncation bounds");
    bounds = f.bounds();
    for (const auto &[key, c] : f.terms()) {
      const std::string where = "hbar^" + std::to_string(k) + " " + term_string(key, c, space.dim());
      if (f.weight(key) < k) {
        r.weight_filtration = false;
        r.offending.push_back("weight: " + where);
      }
      if (f.degree(key) != 1) {
        r.degree_one = false;
        r.offending.push_back("degree: " + where);
      }
      if (f.poly_degree(key) == 0) {
        r.vanishes_at_origin = false;
        r.offending.push_back("origin: " + where);
      }
    }
    open.coeffs.emplace(k, truncated(f, {}));
  }
  for (auto &[k, f] : hbar_fn_bracket(open, open).coeffs) {
    int dropped = 0;
    VectorForm kept = truncated(f, bounds.value_or(FormBounds{}), &dropped);
    r.truncated_terms += dropped;
    if (!kept.is_zero()) {
      r.bracket_zero = false;
      for (const auto &[key, c] : kept.terms())
        r.offending.push_back("bracket: hbar^" + std::to_string(k) + " " + term_string(key, c, space.dim()));
      r.residual.coeffs.emplace(k, std::move(kept));
    }
  }
  return r;
}

std::string to_text(const GradedSpace &space, const FormSeries &gamma) {
  std::ostringstream out;
  out << "degrees:";
  for (int d : space.degrees)
    out << " " << d;
  out << "\n";
  for (const auto &[ab, c] : space.differential)
    out << "d " << ab.first << " -> " << ab.second << " = " << c.get_str() << "\n";
  if (!gamma.coeffs.empty()) {
    const FormBounds &b = gamma.coeffs.begin()->second.bounds();
    if (!(b == FormBounds{}))
      out << "bounds: " << b.poly << " " << b.weight << " " << b.arity << "\n";
  }
  for (const auto &[k, f] : gamma.coeffs)
    if (!f.is_zero())
      out << "hbar^" << k << ": " << to_string(f) << "\n";
  return out.str();
}

bool read_space_line(const std::string &line, GradedSpace &space) {
  std::istringstream in(line);
  std::string head;
  in >> head;
  if (head == "degrees:") {
    space.degrees.clear();
    int d;
    while (in >> d)
      space.degrees.push_back(d);
    if (!in.eof())
      throw InputError("bad degree in: " + line);
    if (space.degrees.empty())
      throw InputError("no degrees in: " + line);
    return true;
  }
  if (head == "d") {
    int a = 0, b = 0;
    std::string arrow, eq, coef;
    if (!(in >> a >> arrow >> b >> eq >> coef) || arrow != "->" || eq != "=")
      throw InputError("expected 'd <a> -> <b> = <coef>': " + line);
    std::string extra;
    if (in >> extra)
      throw InputError("trailing text in: " + line);
    try {
      space.differential[{a, b}] = parse_scalar(coef);
    } catch (const std::exception &) {
      throw InputError("bad coefficient in: " + line);
    }
    try {
      space.validate();
    } catch (const std::invalid_argument &e) {
      throw InputError(std::string(e.what()) + ": " + line);
    }
    return true;
  }
  return false;
}

std::pair<GradedSpace, FormSeries> parse_series_file(const std::string &text) {
  GradedSpace space;
  FormBounds bounds;
  std::vector<std::pair<int, std::pair<int, std::string>>> forms; // k -> (line, text)
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    try {
      if (read_space_line(line, space))
        continue;
    } catch (const InputError &e) {
      throw InputError(e.what(), lineno, 1);
    }
    if (line.rfind("bounds:", 0) == 0) {
      std::istringstream b(line.substr(7));
      if (!(b >> bounds.poly >> bounds.weight >> bounds.arity))
        throw InputError("expected 'bounds: <poly> <weight> <arity>'", lineno, 1);
      continue;
    }
    const std::size_t colon = line.find(": ");
    if (line.rfind("hbar^", 0) != 0 || colon == std::string::npos)
      throw InputError("expected 'hbar^<k>: <form>'", lineno, 1);
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(line.substr(5, colon - 5), &used);
      if (used != colon - 5 || k < 0)
        throw std::invalid_argument("k");
    } catch (const std::exception &) {
      throw InputError("bad hbar order", lineno, 6);
    }
    forms.push_back({k, {lineno, line.substr(colon + 2)}});
  }
  if (space.degrees.empty())
    throw InputError("missing 'degrees:' line");
  try {
    space.validate();
  } catch (const std::invalid_argument &e) {
    throw InputError(e.what());
  }
  FormSeries gamma;
  for (const auto &[k, item] : forms) {
    if (gamma.coeffs.count(k))
      throw InputError("repeated hbar order", item.first, 1);
    try {
      gamma.coeffs.emplace(k, parse_vector_form(item.second, space, bounds));
    } catch (const InputError &e) {
      throw InputError(e.what(), item.first, 1);
    } catch (const TruncationOverflow &e) {
      throw InputError(e.what(), item.first, 1);
    }
  }
  return {space, gamma};
}

} // namespace koszul
