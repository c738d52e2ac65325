#include "koszul/quadratic.hpp"

#include "koszul/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace koszul {

namespace detail {
struct BuiltinSpec {
  const char *stem;
  const char *text;
};
extern const BuiltinSpec builtin_specs[];
extern const int builtin_spec_count;
} // namespace detail

// ---------------------------------------------------------------------------
// Spec files

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '!'; });
}

struct Token {
  std::string text;
  int column;
};

std::vector<Token> words(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (start < i)
      out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(const Token &t, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(t.text, &used);
    if (used == t.text.size())
      return v;
  } catch (const std::exception &) {
  }
  throw InputError("expected an integer, got '" + t.text + "'", line, t.column);
}

GeneratorSymbol parse_generator(std::string_view line, int lineno) {
  const auto w = words(line);
  auto expect = [&](std::size_t i, const char *keyword) {
    if (i >= w.size())
      throw InputError(std::string("expected '") + keyword + "'", lineno, static_cast<int>(line.size()) + 1);
    if (w[i].text != keyword)
      throw InputError(std::string("expected '") + keyword + "', got '" + w[i].text + "'", lineno, w[i].column);
  };
  if (w.size() < 2)
    throw InputError("expected a generator name", lineno, static_cast<int>(line.size()) + 1);
  GeneratorSymbol g;
  if (!is_ident(w[1].text) || w[1].text.find('!') != std::string::npos)
    throw InputError("invalid generator name '" + w[1].text + "'", lineno, w[1].column);
  g.name = w[1].text;
  expect(2, "arity");
  if (w.size() < 4)
    throw InputError("expected an integer", lineno, static_cast<int>(line.size()) + 1);
  g.arity = parse_int(w[3], lineno);
  if (g.arity != 2)
    throw InputError("only binary generators are supported", lineno, w[3].column);
  expect(4, "degree");
  if (w.size() < 6)
    throw InputError("expected an integer", lineno, static_cast<int>(line.size()) + 1);
  g.degree = parse_int(w[5], lineno);
  expect(6, "symmetry");
  if (w.size() < 8)
    throw InputError("expected a symmetry", lineno, static_cast<int>(line.size()) + 1);
  try {
    g.symmetry = parse_symmetry(w[7].text);
  } catch (const InputError &e) {
    throw InputError(e.what(), lineno, w[7].column);
  }
  if (w.size() > 8)
    throw InputError("unexpected '" + w[8].text + "'", lineno, w[8].column);
  return g;
}

// Terms of "rel:" lines: [+|-] [coefficient] tree ...
TreeCombination parse_relation(std::string_view text, int offset, int lineno, const SModuleSpec &m) {
  TreeCombination raw;
  std::size_t pos = 0;
  auto col = [&] { return offset + static_cast<int>(pos) + 1; };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size())
      break;
    Scalar sign(1);
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw InputError("expected '+' or '-'", lineno, col());
    }
    Scalar coef(1);
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
        ++pos;
      const std::string token(text.substr(start, pos - start));
      const auto slash = token.find('/');
      const bool well_formed =
          token.find('/', slash == std::string::npos ? token.size() : slash + 1) == std::string::npos &&
          (slash == std::string::npos ||
           (slash + 1 < token.size() && token.find_first_not_of('0', slash + 1) != std::string::npos));
      if (!well_formed) {
        pos = start;
        throw InputError("invalid coefficient '" + token + "'", lineno, col());
      }
      coef = parse_scalar(token);
      skip();
    }
    const std::size_t start = pos;
    int depth = 0;
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '(')
        ++depth;
      else if (c == ')' && --depth == 0) {
        ++pos;
        break;
      } else if (depth == 0 && (std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '-'))
        break;
      ++pos;
    }
    if (start == pos)
      throw InputError("expected a tree", lineno, col());
    Tree t;
    try {
      t = parse_tree(text.substr(start, pos - start), [&](std::string_view n) { return m.find(n); });
    } catch (const InputError &e) {
      throw InputError(e.what(), lineno, offset + static_cast<int>(start) + e.column());
    }
    auto bad_arity = [&](const Tree &u, auto &&self) -> bool {
      if (u.is_leaf())
        return false;
      if (static_cast<int>(u.children.size()) != m.arity(u.dec))
        return true;
      return std::any_of(u.children.begin(), u.children.end(), [&](const Tree &c) { return self(c, self); });
    };
    if (bad_arity(t, bad_arity))
      throw InputError("arity mismatch in relation term", lineno, offset + static_cast<int>(start) + 1);
    if (t.arity() != 3 || t.vertex_count() != 2)
      throw InputError("relation terms must be two-vertex trees of arity 3", lineno,
                       offset + static_cast<int>(start) + 1);
    koszul::accumulate(raw, t, Scalar(sign * coef));
    first = false;
  }
  if (first)
    throw InputError("empty relation", lineno, offset + 1);
  return normalize(raw, m);
}

} // namespace

QuadraticPresentation parse_spec(std::string_view text) {
  QuadraticPresentation p;
  std::vector<GeneratorSymbol> gens;
  bool module_built = false;
  SModuleSpec m;

  std::size_t begin = 0;
  int lineno = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos)
      end = text.size();
    ++lineno;
    std::string_view raw = text.substr(begin, end - begin);
    if (!raw.empty() && raw.back() == '\r')
      raw.remove_suffix(1);
    begin = end + 1;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') {
      if (end == text.size())
        break;
      continue;
    }
    const int indent = static_cast<int>(raw.find(line.front()));
    if (line.rfind("rel:", 0) == 0) {
      if (!module_built) {
        m = SModuleSpec(gens);
        module_built = true;
      }
      const std::string_view body = line.substr(4);
      const auto rel = parse_relation(body, indent + 4, lineno, m);
      if (!rel.empty())
        p.relations.push_back(rel);
    } else {
      const auto w = words(line);
      if (w[0].text == "generator") {
        if (module_built)
          throw InputError("generator declared after relations", lineno, indent + 1);
        auto g = parse_generator(line, lineno);
        for (const auto &o : gens)
          if (o.name == g.name)
            throw InputError("duplicate generator name '" + g.name + "'", lineno, indent + w[1].column);
        gens.push_back(g);
      } else if (w[0].text == "name") {
        if (w.size() != 2 || !is_ident(w[1].text))
          throw InputError("expected 'name <identifier>'", lineno, indent + 1);
        p.name = w[1].text;
      } else {
        throw InputError("unknown directive '" + w[0].text + "'", lineno, indent + 1);
      }
    }
    if (end == text.size())
      break;
  }
  if (!module_built)
    m = SModuleSpec(gens);
  if (m.decoration_count() == 0)
    throw InputError("no generators declared");
  p.module = std::move(m);
  return p;
}

std::string write_spec(const QuadraticPresentation &p) {
  std::ostringstream out;
  if (!p.name.empty())
    out << "name " << p.name << "\n";
  for (const auto &g : p.module.generators())
    out << "generator " << g.name << " arity " << g.arity << " degree " << g.degree << " symmetry "
        << to_string(g.symmetry) << "\n";
  for (const auto &r : p.relations)
    out << "rel: " << serialize(r, p.module) << "\n";
  return out.str();
}

std::vector<std::string> builtin_names() { return {"Com", "Lie1", "Perm", "PreLie", "Nij", "BiNij"}; }

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

std::string_view builtin_spec_text(std::string_view name) {
  const std::string key = lower(name);
  for (int i = 0; i < detail::builtin_spec_count; ++i)
    if (key == detail::builtin_specs[i].stem)
      return detail::builtin_specs[i].text;
  throw InputError("unknown built-in operad '" + std::string(name) + "'");
}

QuadraticPresentation builtin_presentation(std::string_view name) {
  std::string_view base = name;
  bool dual = false;
  if (!base.empty() && base.back() == '!') {
    base.remove_suffix(1);
    dual = true;
  }
  QuadraticPresentation p = parse_spec(builtin_spec_text(base));
  return dual ? koszul_dual(p) : p;
}

// ---------------------------------------------------------------------------
// Orders

DecorationRank default_order(const SModuleSpec &m) {
  DecorationRank r;
  for (int d = 0; d < m.decoration_count(); ++d)
    r.rank.push_back(d);
  return r;
}

DecorationRank parse_order(const SModuleSpec &m, std::string_view text) {
  DecorationRank r;
  r.rank.assign(m.decoration_count(), -1);
  int next = 0;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = text.find('<', begin);
    const std::string_view piece = trim(text.substr(begin, end == std::string_view::npos ? end : end - begin));
    const int d = m.find(piece);
    if (d < 0)
      throw InputError("unknown decoration '" + std::string(piece) + "' in order", 0, 0);
    if (r.rank[d] >= 0)
      throw InputError("decoration '" + std::string(piece) + "' appears twice in order");
    r.rank[d] = next++;
    if (end == std::string_view::npos)
      break;
    begin = end + 1;
  }
  if (next != m.decoration_count())
    throw InputError("order must list every decoration exactly once");
  return r;
}

std::string order_string(const SModuleSpec &m, const DecorationRank &r) {
  std::vector<int> by_rank(m.decoration_count());
  for (int d = 0; d < m.decoration_count(); ++d)
    by_rank[r(d)] = d;
  std::string s;
  for (std::size_t i = 0; i < by_rank.size(); ++i)
    s += (i ? "<" : "") + m.name(by_rank[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Ideals and quotients

QuadraticOperad::QuadraticOperad(QuadraticPresentation p)
    : QuadraticOperad(std::move(p), DecorationRank{}) {}

QuadraticOperad::QuadraticOperad(QuadraticPresentation p, DecorationRank order)
    : p_(std::move(p)), order_(std::move(order)), cache_(std::make_shared<Cache>()) {
  if (order_.rank.empty())
    order_ = default_order(p_.module);
  if (static_cast<int>(order_.rank.size()) != p_.module.decoration_count())
    throw std::invalid_argument("QuadraticOperad: order does not match the decorations");
}

QuadraticOperad QuadraticOperad::with_order(DecorationRank order) const {
  QuadraticOperad q(p_, std::move(order));
  q.cache_ = cache_;
  return q;
}

const FreeBasis &QuadraticOperad::free_basis(int n) const {
  auto &slot = cache_->free[n];
  if (!slot)
    slot = std::make_unique<FreeBasis>(p_.module, n);
  return *slot;
}

namespace {

// sigma sending 1..k to `first` (in order) and the rest to the complement, increasing.
Permutation block_permutation(int n, const std::vector<int> &first) {
  std::vector<int> img(first);
  std::vector<bool> used(n + 1, false);
  for (int a : first)
    used[a] = true;
  for (int a = 1; a <= n; ++a)
    if (!used[a])
      img.push_back(a);
  return Permutation(img);
}

} // namespace

const IdealSpan &QuadraticOperad::ideal(int n) const {
  if (auto it = cache_->ideals.find(n); it != cache_->ideals.end())
    return it->second;
  const FreeBasis &fb = free_basis(n);
  IdealSpan span;
  span.arity = n;
  span.ambient = fb.size();
  Echelon e(fb.size());
  auto offer = [&](const TreeCombination &c) {
    if (c.empty())
      return;
    SparseVector v = fb.to_vector(c);
    if (e.add(v))
      span.generators.push_back(std::move(v));
  };
  if (n == 3) {
    for (const auto &r : p_.relations)
      for (const auto &s : all_permutations(3))
        offer(act(r, s, p_.module));
  } else if (n > 3) {
    const IdealSpan &below = ideal(n - 1);
    const FreeBasis &fb_below = free_basis(n - 1);
    std::vector<Tree> corollas;
    for (int d = 0; d < p_.module.decoration_count(); ++d)
      if (p_.module.arity(d) == 2)
        corollas.push_back(Tree::node(d, {Tree::leaf(1), Tree::leaf(2)}));
    std::vector<Permutation> pair_perms, single_perms;
    for (int a = 1; a <= n; ++a) {
      single_perms.push_back(block_permutation(n, {a}));
      for (int b = a + 1; b <= n; ++b)
        pair_perms.push_back(block_permutation(n, {a, b}));
    }
    for (const auto &x : below.generators) {
      const TreeCombination cx = fb_below.to_combination(x);
      for (const auto &g : corollas) {
        const TreeCombination cg{{g, Scalar(1)}};
        const TreeCombination upper = graft(cx, 1, cg, p_.module);
        for (const auto &s : pair_perms)
          offer(act(upper, s, p_.module));
        const TreeCombination lower = graft(cg, 2, cx, p_.module);
        for (const auto &s : single_perms)
          offer(act(lower, s, p_.module));
      }
    }
  }
  return cache_->ideals.emplace(n, std::move(span)).first->second;
}

const ArityBasis &QuadraticOperad::basis(int n) const {
  auto &slot = bases_[n];
  if (!slot)
    slot = std::make_unique<ArityBasis>(*this, n, order_);
  return *slot;
}

SparseVector QuadraticOperad::compose(int m, const SparseVector &x, int i, int k, const SparseVector &y) const {
  if (i < 1 || i > m)
    throw std::out_of_range("compose: slot index out of range");
  const ArityBasis &bm = basis(m), &bk = basis(k);
  const TreeCombination cx = free_basis(m).to_combination(bm.lift(x));
  const TreeCombination cy = free_basis(k).to_combination(bk.lift(y));
  const TreeCombination g = graft(cx, i, cy, p_.module);
  return basis(m + k - 1).coordinates(free_basis(m + k - 1).to_vector(g));
}

ArityBasis::ArityBasis(const QuadraticOperad &op, int n, const DecorationRank &order)
    : free_(&op.free_basis(n)), arity_(n), echelon_(op.free_basis(n).size()) {
  const int size = free_->size();
  free_of_.resize(size);
  for (int i = 0; i < size; ++i)
    free_of_[i] = i;
  std::stable_sort(free_of_.begin(), free_of_.end(), [&](int a, int b) {
    return tree_compare(free_->tree(a), free_->tree(b), order) == std::strong_ordering::less;
  });
  for (int c = 0; c + 1 < size; ++c) {
    bool tie = false;
    tree_compare(free_->tree(free_of_[c]), free_->tree(free_of_[c + 1]), order, &tie);
    used_tiebreak_ = used_tiebreak_ || tie;
  }
  column_of_.resize(size);
  for (int c = 0; c < size; ++c)
    column_of_[free_of_[c]] = c;

  for (const auto &v : op.ideal(n).generators) {
    std::vector<SparseVector::Entry> e;
    for (const auto &[i, x] : v.entries())
      e.emplace_back(column_of_[i], x);
    echelon_.add(SparseVector(std::move(e)));
  }
  for (int i = 0; i < size; ++i) {
    if (echelon_.has_pivot(column_of_[i]))
      leading_.push_back(i);
    else {
      rep_pos_.emplace(i, static_cast<int>(representatives_.size()));
      representatives_.push_back(i);
    }
  }
}

const Tree &ArityBasis::representative(int i) const { return free_->tree(representatives_.at(i)); }

SparseVector ArityBasis::coordinates(const SparseVector &free_vector) const {
  std::vector<SparseVector::Entry> e;
  for (const auto &[i, x] : free_vector.entries())
    e.emplace_back(column_of_.at(i), x);
  const SparseVector r = echelon_.reduce(SparseVector(std::move(e)));
  std::vector<SparseVector::Entry> q;
  for (const auto &[c, x] : r.entries())
    q.emplace_back(rep_pos_.at(free_of_[c]), x);
  return SparseVector(std::move(q));
}

SparseVector ArityBasis::coordinates(const TreeCombination &c) const { return coordinates(free_->to_vector(c)); }

SparseVector ArityBasis::lift(const SparseVector &q) const {
  std::vector<SparseVector::Entry> e;
  for (const auto &[i, x] : q.entries())
    e.emplace_back(representatives_.at(i), x);
  return SparseVector(std::move(e));
}

Subspace relation_ideal_span(const QuadraticOperad &op, int n) {
  const IdealSpan &s = op.ideal(n);
  return Subspace::span(s.ambient, s.generators);
}

// ---------------------------------------------------------------------------
// Duality

namespace {

// Coefficient k with normalize(t) = k * target, zero when t normalizes elsewhere.
Scalar coefficient_of(const Tree &t, const Tree &target, const SModuleSpec &m) {
  const auto n = normalize(t, m);
  auto it = n.find(target);
  return (it == n.end() || n.size() != 1) ? Scalar(0) : it->second;
}

// Both sides are rewritten as r(c(x,y),z) with (x,y,z) a cyclic order of
// (1,2,3); there the pairing is the product of the generator pairings, with
// <g_op^, g_op> = -1 and the Koszul sign of moving c^ past r.
Scalar pairing_sign(const Tree &t, const SModuleSpec &m, const SModuleSpec &dual) {
  const Tree *child = nullptr;
  int z = 0;
  for (const auto &c : t.children) {
    if (c.is_leaf())
      z = c.label;
    else
      child = &c;
  }
  const int x = z % 3 + 1, y = x % 3 + 1;
  for (int r = 0; r < m.decoration_count(); ++r)
    for (int c = 0; c < m.decoration_count(); ++c) {
      const Tree cyc = Tree::node(r, {Tree::node(c, {Tree::leaf(x), Tree::leaf(y)}), Tree::leaf(z)});
      const Scalar k = coefficient_of(cyc, t, m);
      if (is_zero(k) || child == nullptr)
        continue;
      const Scalar kd = coefficient_of(cyc, t, dual);
      Scalar s = k * kd;
      if (m.decorations()[r].op)
        s = -s;
      if (m.decorations()[c].op)
        s = -s;
      if ((m.degree(r) * m.degree(c)) % 2 != 0)
        s = -s;
      return s;
    }
  return Scalar(0);
}

} // namespace

Matrix pairing_matrix(const SModuleSpec &m) {
  const FreeBasis b(m, 3);
  const SModuleSpec dual = czech_dual(m);
  const FreeBasis bd(dual, 3);
  Matrix p(bd.size(), b.size());
  for (int i = 0; i < bd.size(); ++i) {
    const int j = b.index_of(bd.tree(i));
    if (j >= 0)
      p.set(i, j, pairing_sign(b.tree(j), m, dual));
  }
  return p;
}

QuadraticPresentation koszul_dual(const QuadraticPresentation &p) {
  const QuadraticOperad op(p);
  const Subspace r = relation_ideal_span(op, 3);
  const Subspace perp = orthogonal_complement(r, pairing_matrix(p.module));
  QuadraticPresentation d;
  if (!p.name.empty())
    d.name = p.name.back() == '!' ? p.name.substr(0, p.name.size() - 1) : p.name + "!";
  d.module = czech_dual(p.module);
  const FreeBasis bd(d.module, 3);
  for (const auto &v : perp.basis())
    d.relations.push_back(bd.to_combination(v));
  return d;
}

SeriesReport gk_series_check(const QuadraticPresentation &p, int nmax) {
  SeriesReport rep;
  const QuadraticOperad a(p), b(koszul_dual(p));
  std::vector<Scalar> f(nmax + 1), g(nmax + 1);
  for (int n = 1; n <= nmax; ++n) {
    rep.dims.push_back(a.dim(n));
    rep.dual_dims.push_back(b.dim(n));
    g[n] = Scalar(rep.dual_dims.back()) / factorial(n);
    // -f_P(-x)
    f[n] = (n % 2 ? Scalar(1) : Scalar(-1)) * Scalar(rep.dims.back()) / factorial(n);
  }
  auto mul = [&](const std::vector<Scalar> &u, const std::vector<Scalar> &v) {
    std::vector<Scalar> w(nmax + 1);
    for (int i = 0; i <= nmax; ++i)
      for (int j = 0; i + j <= nmax; ++j)
        w[i + j] += u[i] * v[j];
    return w;
  };
  std::vector<Scalar> out(nmax + 1), power(nmax + 1);
  power[0] = 1;
  for (int k = 1; k <= nmax; ++k) {
    power = mul(power, f);
    for (int i = 0; i <= nmax; ++i)
      out[i] += g[k] * power[i];
  }
  rep.composite = out;
  rep.consistent = true;
  for (int i = 0; i <= nmax; ++i)
    rep.consistent = rep.consistent && out[i] == (i == 1 ? 1 : 0);
  return rep;
}

} // namespace koszul
