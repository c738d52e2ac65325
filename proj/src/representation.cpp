#include "koszul/representation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace koszul {

namespace {

int parity(int d) { return ((d % 2) + 2) % 2; }

// Koszul sign of listing items in `order` (old positions) given their parities.
int reorder_sign(const std::vector<int> &par, const std::vector<int> &order) {
  int s = 0;
  for (std::size_t r = 0; r < order.size(); ++r)
    for (std::size_t q = r + 1; q < order.size(); ++q)
      if (order[r] > order[q])
        s += par[order[r]] * par[order[q]];
  return s % 2 ? -1 : 1;
}

std::vector<int> identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> t_parities(const GradedSpace &s, const std::vector<int> &a) {
  std::vector<int> p;
  for (int x : a)
    p.push_back(parity(s.t_degree(x)));
  return p;
}

std::vector<int> gamma_parities(const GradedSpace &s, const std::vector<int> &b) {
  std::vector<int> p;
  for (int x : b)
    p.push_back(parity(s.gamma_degree(x)));
  return p;
}

std::vector<int> permuted(const std::vector<int> &v, const std::vector<int> &order) {
  std::vector<int> r;
  for (int i : order)
    r.push_back(v[i]);
  return r;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int> &b, int c) {
  a.insert(a.end(), b.begin(), b.end());
  a.push_back(c);
  return a;
}

// Sign between the dictionary array and the multilinear map. Determined by
// requiring residual_series(verify_representation(mu)) = [Gamma, Gamma] / 2
// term by term on graded spaces with differential, checked through arity 5.
int decalage(const GradedSpace &s, const std::vector<int> &a, const std::vector<int> &b) {
  const int j = static_cast<int>(b.size());
  int e = (j - 1) * (j - 2) / 2;
  for (int x : a)
    e += j * parity(s.degree(x));
  for (int l = 0; l < j; ++l)
    e += (j - 1 - l) * parity(s.degree(b[l]));
  return e % 2 ? -1 : 1;
}

const std::vector<InfinityGenerator> &generators_of_arity(int n) {
  static std::map<int, std::vector<InfinityGenerator>> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, binij_generators(n)).first;
  return it->second;
}

struct Evaluator {
  const RepFamily &mu;
  const CobarGenerators &gens;
  int dim;
  std::map<int, std::vector<std::pair<int, Scalar>>> d; // a -> (b, D^b_a)

  Evaluator(const RepFamily &m, const CobarGenerators &g) : mu(m), gens(g), dim(m.space.dim()) {
    for (const auto &[ab, c] : mu.space.differential)
      if (!is_zero(c))
        d[ab.first].push_back({ab.second, c});
  }

  const InfinityGenerator &generator(int dec) const {
    return generators_of_arity(gens.arity(dec)).at(gens.basis_index(dec));
  }

  int vdeg(int a) const { return mu.space.degree(a); }

  std::vector<Scalar> tree(const Tree &t, const std::vector<int> &x) const {
    std::vector<int> labels;
    int inner = -1;
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      const Tree &c = t.children[i];
      if (c.is_leaf()) {
        labels.push_back(c.label);
      } else {
        inner = static_cast<int>(i);
        for (const auto &l : c.children)
          labels.push_back(l.label);
      }
    }
    std::vector<int> par, order;
    for (int l = 1; l <= static_cast<int>(x.size()); ++l)
      par.push_back(parity(vdeg(x[l - 1])));
    for (int l : labels)
      order.push_back(l - 1);
    const int eps = reorder_sign(par, order);
    std::vector<int> w;
    for (int l : labels)
      w.push_back(x[l - 1]);

    std::vector<Scalar> out(dim + 1);
    if (inner < 0) {
      const auto v = evaluate(mu, generator(t.dec), w);
      for (int c = 1; c <= dim; ++c)
        out[c] = eps * v[c];
      return out;
    }
    const Tree &u = t.children[inner];
    const int m = static_cast<int>(u.children.size());
    const std::vector<int> upper_in(w.begin() + inner, w.begin() + inner + m);
    const auto up = evaluate(mu, generator(u.dec), upper_in);
    int before = 0;
    for (int r = 0; r < inner; ++r)
      before += vdeg(w[r]);
    const int s = eps * ((generator(u.dec).degree() * before) % 2 ? -1 : 1);
    for (int c = 1; c <= dim; ++c) {
      if (is_zero(up[c]))
        continue;
      std::vector<int> lower_in(w.begin(), w.begin() + inner);
      lower_in.push_back(c);
      lower_in.insert(lower_in.end(), w.begin() + inner + m, w.end());
      const auto v = evaluate(mu, generator(t.dec), lower_in);
      for (int e = 1; e <= dim; ++e)
        out[e] += s * up[c] * v[e];
    }
    return out;
  }

  // (d o f - (-1)^|f| sum_r f o_r d)(e_x)
  std::vector<Scalar> differential(const InfinityGenerator &g, const std::vector<int> &x) const {
    std::vector<Scalar> out(dim + 1);
    if (d.empty())
      return out;
    const auto f = evaluate(mu, g, x);
    for (int c = 1; c <= dim; ++c) {
      auto it = d.find(c);
      if (it == d.end() || is_zero(f[c]))
        continue;
      for (const auto &[b, coef] : it->second)
        out[b] += f[c] * coef;
    }
    int before = 0;
    for (std::size_t r = 0; r < x.size(); ++r) {
      auto it = d.find(x[r]);
      if (it != d.end()) {
        const int s = -((g.degree() + before) % 2 ? -1 : 1);
        for (const auto &[b, coef] : it->second) {
          std::vector<int> y = x;
          y[r] = b;
          const auto v = evaluate(mu, g, y);
          for (int e = 1; e <= dim; ++e)
            out[e] += s * coef * v[e];
        }
      }
      before += vdeg(x[r]);
    }
    return out;
  }
};

void check_tree_labels(const Tree &t, const CobarGenerators &g) {
  std::vector<int> labels;
  std::function<void(const Tree &)> walk = [&](const Tree &s) {
    if (s.is_leaf())
      labels.push_back(s.label);
    for (const auto &c : s.children)
      walk(c);
  };
  walk(t);
  std::vector<int> pos(labels.size() + 1);
  for (std::size_t r = 0; r < labels.size(); ++r)
    pos[labels[r]] = static_cast<int>(r) + 1;
  const Tree planar = relabel(t, [&](int l) { return pos[l]; });
  if (act(planar, Permutation(labels), g) != TreeCombination{{t, Scalar(1)}})
    throw std::logic_error("verify_representation: normal form is not the relabelled planar tree");
}

} // namespace

Scalar RepFamily::coefficient(int k, const std::vector<int> &a, const std::vector<int> &b, int c) const {
  auto it = maps.find({k, static_cast<int>(a.size()), static_cast<int>(b.size())});
  if (it == maps.end())
    return Scalar(0);
  auto e = it->second.find(concat(a, b, c));
  return e == it->second.end() ? Scalar(0) : e->second;
}

void RepFamily::set(int k, const std::vector<int> &a, const std::vector<int> &b, int c, const Scalar &v) {
  const int i = static_cast<int>(a.size()), j = static_cast<int>(b.size());
  for (int x : concat(a, b, c))
    if (x < 1 || x > space.dim())
      throw std::invalid_argument("RepFamily::set: index out of range");
  const auto pa = t_parities(space, a), pb = gamma_parities(space, b);
  std::map<std::vector<int>, Scalar> images;
  std::vector<int> oa = identity(i);
  do {
    std::vector<int> ob = identity(j);
    do {
      const auto word = concat(permuted(a, oa), permuted(b, ob), c);
      Scalar value = reorder_sign(pa, oa) * reorder_sign(pb, ob) * v;
      value.canonicalize();
      auto [it, fresh] = images.emplace(word, value);
      if (!fresh && it->second != value) {
        if (!is_zero(v))
          throw std::invalid_argument("RepFamily::set: the symmetry forces this entry to vanish");
      }
    } while (std::next_permutation(ob.begin(), ob.end()));
  } while (std::next_permutation(oa.begin(), oa.end()));
  auto &table = maps[{k, i, j}];
  for (const auto &[word, value] : images) {
    if (is_zero(value))
      table.erase(word);
    else
      table[word] = value;
  }
  if (table.empty())
    maps.erase({k, i, j});
}

void RepFamily::validate() const {
  space.validate();
  for (const auto &[kij, table] : maps) {
    const auto [k, i, j] = kij;
    if (i < 1 || i + j < 2 || k < 0 || k > j)
      throw std::invalid_argument("RepFamily: index ranges need i >= 1, i + j >= 2, 0 <= k <= j");
    for (const auto &[word, v] : table) {
      if (static_cast<int>(word.size()) != i + j + 1)
        throw std::invalid_argument("RepFamily: entry of the wrong length");
      for (int x : word)
        if (x < 1 || x > space.dim())
          throw std::invalid_argument("RepFamily: index out of range");
      const std::vector<int> a(word.begin(), word.begin() + i), b(word.begin() + i, word.end() - 1);
      const int c = word.back();
      int deg = 1 - j;
      for (int x : a)
        deg += space.degree(x);
      for (int x : b)
        deg += space.degree(x);
      if (!is_zero(v) && space.degree(c) != deg)
        throw std::invalid_argument("RepFamily: operation of the wrong degree");
      const auto pa = t_parities(space, a), pb = gamma_parities(space, b);
      for (int r = 0; r + 1 < i + j; ++r) {
        if (r + 1 == i)
          continue;
        std::vector<int> w = word;
        std::swap(w[r], w[r + 1]);
        const int p = r < i ? pa[r] * pa[r + 1] : pb[r - i] * pb[r - i + 1];
        const Scalar expected = (p % 2 ? Scalar(-1) : Scalar(1)) * v;
        auto it = table.find(w);
        const Scalar actual = it == table.end() ? Scalar(0) : it->second;
        if (actual != expected)
          throw std::invalid_argument("RepFamily: coefficient array breaks the (anti)symmetry");
      }
    }
  }
}

std::string to_text(const RepFamily &mu) {
  std::ostringstream out;
  out << "degrees:";
  for (int d : mu.space.degrees)
    out << " " << d;
  out << "\n";
  for (const auto &[ab, c] : mu.space.differential)
    out << "d " << ab.first << " -> " << ab.second << " = " << c.get_str() << "\n";
  for (const auto &[kij, table] : mu.maps) {
    const auto [k, i, j] = kij;
    for (const auto &[word, v] : table) {
      if (!std::is_sorted(word.begin(), word.begin() + i) || !std::is_sorted(word.begin() + i, word.end() - 1))
        continue;
      out << k << " " << i << " " << j << " |";
      for (int r = 0; r < i; ++r)
        out << " " << word[r];
      out << " |";
      for (int r = i; r < i + j; ++r)
        out << " " << word[r];
      out << " | " << word.back() << " = " << v.get_str() << "\n";
    }
  }
  return out.str();
}

RepFamily parse_rep_family(const std::string &text) {
  RepFamily mu;
  struct Entry {
    int line, k;
    std::vector<int> a, b;
    int c;
    Scalar v;
  };
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    try {
      if (read_space_line(line, mu.space))
        continue;
    } catch (const InputError &e) {
      throw InputError(e.what(), lineno, 1);
    }
    // k i j | a.. | b.. | c = value
    std::vector<std::string> parts;
    std::stringstream split(line);
    std::string part;
    while (std::getline(split, part, '|'))
      parts.push_back(part);
    if (parts.size() != 4)
      throw InputError("expected 'k i j | a.. | b.. | c = value'", lineno, 1);
    auto ints = [&](const std::string &field) {
      std::istringstream f(field);
      std::vector<int> out;
      int x;
      while (f >> x)
        out.push_back(x);
      if (!f.eof())
        throw InputError("bad integer list '" + field + "'", lineno, 1);
      return out;
    };
    const std::vector<int> head = ints(parts[0]);
    if (head.size() != 3)
      throw InputError("expected 'k i j' before the first '|'", lineno, 1);
    Entry e{lineno, head[0], ints(parts[1]), ints(parts[2]), 0, Scalar(0)};
    if (static_cast<int>(e.a.size()) != head[1] || static_cast<int>(e.b.size()) != head[2])
      throw InputError("index lists do not match i and j", lineno, 1);
    std::istringstream tail(parts[3]);
    std::string eq, coef, extra;
    if (!(tail >> e.c >> eq >> coef) || eq != "=" || (tail >> extra))
      throw InputError("expected '<c> = <value>' after the last '|'", lineno, 1);
    try {
      e.v = parse_scalar(coef);
    } catch (const std::exception &) {
      throw InputError("bad coefficient '" + coef + "'", lineno, 1);
    }
    entries.push_back(std::move(e));
  }
  if (mu.space.degrees.empty())
    throw InputError("missing 'degrees:' line");
  for (const Entry &e : entries) {
    if (!is_zero(mu.coefficient(e.k, e.a, e.b, e.c)))
      throw InputError("entry given twice", e.line, 1);
    try {
      mu.set(e.k, e.a, e.b, e.c, e.v);
    } catch (const std::invalid_argument &x) {
      throw InputError(x.what(), e.line, 1);
    }
  }
  try {
    mu.validate();
  } catch (const std::invalid_argument &x) {
    throw InputError(x.what());
  }
  return mu;
}

FormSeries rep_to_series(const RepFamily &mu, const FormBounds &bounds) {
  mu.validate();
  FormSeries g;
  auto coeff = [&](int k) -> VectorForm & {
    auto it = g.coeffs.find(k);
    if (it == g.coeffs.end())
      it = g.coeffs.emplace(k, VectorForm(mu.space)).first;
    return it->second;
  };
  for (const auto &[kij, table] : mu.maps) {
    const auto [k, i, j] = kij;
    const Scalar norm = factorial(i) * factorial(j);
    VectorForm &f = coeff(k);
    for (const auto &[word, v] : table)
      f.add({word.begin(), word.begin() + i}, {word.begin() + i, word.end() - 1}, word.back(), v / norm);
  }
  for (const auto &[ab, c] : mu.space.differential)
    coeff(0).add({ab.first}, {}, ab.second, -c);
  for (auto &[k, f] : g.coeffs)
    f.set_bounds(bounds);
  return g;
}

RepFamily series_to_rep(const FormSeries &gamma, const GradedSpace &space) {
  RepFamily mu{space, {}};
  mu.space.differential.clear();
  const int n = space.dim();
  for (const auto &[k, f] : gamma.coeffs) {
    if (!(f.space() == space))
      throw std::invalid_argument("series_to_rep: series lives on a different space");
    for (const auto &[key, c] : f.terms()) {
      const int i = f.poly_degree(key), j = f.weight(key);
      if (f.degree(key) != 1 || j < k || i < 1)
        throw std::invalid_argument("series_to_rep: term outside the Maurer-Cartan Lie algebra");
      std::vector<int> a, b;
      Scalar mult(1);
      for (int x = 0; x < n; ++x) {
        a.insert(a.end(), key.m.exps[x], x + 1);
        b.insert(b.end(), key.m.exps[n + x], x + 1);
        mult *= factorial(key.m.exps[x]) * factorial(key.m.exps[n + x]);
      }
      if (i == 1 && j == 0) {
        mu.space.differential[{a[0], key.out}] = -c;
        continue;
      }
      mu.set(k, a, b, key.out, c * mult);
    }
  }
  return mu;
}

std::vector<Scalar> evaluate(const RepFamily &mu, const InfinityGenerator &g, const std::vector<int> &x) {
  const int n = g.arity(), dim = mu.space.dim();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("evaluate: wrong number of inputs");
  std::vector<int> par, order;
  for (int v : x)
    par.push_back(parity(mu.space.degree(v)));
  std::vector<int> a, b;
  for (int l : g.I) {
    order.push_back(l - 1);
    a.push_back(x[l - 1]);
  }
  for (int l : g.J) {
    order.push_back(l - 1);
    b.push_back(x[l - 1]);
  }
  const int s = reorder_sign(par, order) * decalage(mu.space, a, b);
  std::vector<Scalar> out(dim + 1);
  auto it = mu.maps.find({g.k, static_cast<int>(a.size()), static_cast<int>(b.size())});
  if (it == mu.maps.end())
    return out;
  std::vector<int> word = concat(a, b, 0);
  for (int c = 1; c <= dim; ++c) {
    word.back() = c;
    auto e = it->second.find(word);
    if (e != it->second.end())
      out[c] = s * e->second;
  }
  return out;
}

RepresentationReport verify_representation(const RepFamily &mu, const Cobar &c) {
  mu.validate();
  const CobarGenerators &gens = c.generators();
  const Evaluator ev(mu, gens);
  const int dim = mu.space.dim();
  RepresentationReport rep;
  for (int n = 2; n <= c.nmax(); ++n) {
    const auto &list = generators_of_arity(n);
    if (gens.count(n) != static_cast<int>(list.size()))
      throw std::invalid_argument("verify_representation: the cobar construction must carry binij_frame");
    for (int r = 0; r < gens.count(n); ++r) {
      const int dec = gens.id(n, r);
      const InfinityGenerator &g = list[r];
      if (gens.name(dec) != to_string(g))
        throw std::invalid_argument("verify_representation: the cobar construction must carry binij_frame");
      const TreeCombination &delta = c.delta(dec);
      for (const auto &[t, coef] : delta)
        check_tree_labels(t, gens);
      ++rep.generators;
      std::map<std::vector<int>, Scalar> residual;
      std::vector<int> x(n, 1);
      while (true) {
        std::vector<Scalar> v = ev.differential(g, x);
        for (auto &e : v)
          e = -e;
        for (const auto &[t, coef] : delta) {
          const auto w = ev.tree(t, x);
          for (int e = 1; e <= dim; ++e)
            v[e] += coef * w[e];
        }
        for (int e = 1; e <= dim; ++e)
          if (!is_zero(v[e])) {
            std::vector<int> key = x;
            key.push_back(e);
            residual[key] = v[e];
          }
        int p = n - 1;
        while (p >= 0 && x[p] == dim)
          x[p--] = 1;
        if (p < 0)
          break;
        ++x[p];
      }
      if (!residual.empty()) {
        ++rep.failing;
        if (!rep.first_failure)
          rep.first_failure = to_string(g);
        rep.residuals.emplace(to_string(g), std::move(residual));
      }
    }
  }
  return rep;
}

FormSeries residual_series(const RepresentationReport &r, const GradedSpace &space) {
  FormSeries out;
  std::map<std::string, InfinityGenerator> by_name;
  for (const auto &[name, table] : r.residuals) {
    if (table.empty())
      continue;
    const int n = static_cast<int>(table.begin()->first.size()) - 1;
    if (by_name.find(name) == by_name.end())
      for (const auto &g : generators_of_arity(n))
        by_name.emplace(to_string(g), g);
    const InfinityGenerator &g = by_name.at(name);
    const int i = static_cast<int>(g.I.size()), j = static_cast<int>(g.J.size());
    bool standard = true;
    for (int l = 0; l < i; ++l)
      standard = standard && g.I[l] == l + 1;
    if (!standard)
      continue;
    auto it = out.coeffs.try_emplace(g.k, VectorForm(space)).first;
    const Scalar norm = factorial(i) * factorial(j);
    for (const auto &[key, v] : table) {
      const std::vector<int> a(key.begin(), key.begin() + i), b(key.begin() + i, key.end() - 1);
      it->second.add(a, b, key.back(), decalage(space, a, b) * v / norm);
    }
  }
  std::erase_if(out.coeffs, [](const auto &e) { return e.second.is_zero(); });
  return out;
}

RepresentationReport verify_representation(const RepFamily &mu, int nmax) {
  const Cobar c(builtin_presentation("BiNij"), nmax, binij_frame);
  return verify_representation(mu, c);
}

} // namespace koszul
