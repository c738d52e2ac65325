#include "koszul/cobar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace koszul {

CobarGenerators::CobarGenerators(const QuadraticOperad &dual, int nmax, const DualFrame &frame)
    : dual_(&dual), nmax_(nmax) {
  const SModuleSpec &m = dual.module();
  for (int n = 2; n <= nmax; ++n) {
    const ArityBasis &b = dual.basis(n);
    const int dim = b.dim();
    first_[n] = count();
    std::vector<SparseVector> elems;
    std::vector<std::string> names;
    if (auto it = frame.elements.find(n); it != frame.elements.end()) {
      elems = it->second;
      names = frame.names.at(n);
    } else {
      for (int r = 0; r < dim; ++r) {
        elems.push_back(SparseVector::unit(r));
        names.push_back("{" + serialize(b.representative(r), m) + "}");
      }
    }
    if (static_cast<int>(elems.size()) != dim || static_cast<int>(names.size()) != dim)
      throw std::invalid_argument("CobarGenerators: frame size differs from dim P^!(n)");
    Matrix w(dim, dim);
    std::vector<std::vector<SparseVector::Entry>> rows(dim);
    for (int c = 0; c < dim; ++c)
      for (const auto &[r, v] : elems[c].entries())
        rows[r].emplace_back(c, v);
    for (int r = 0; r < dim; ++r)
      w.set_row(r, SparseVector(std::move(rows[r])));
    auto inv = inverse(w);
    if (!inv)
      throw std::invalid_argument("CobarGenerators: frame is not a basis");
    for (int c = 0; c < dim; ++c) {
      int deg = 0;
      bool first = true;
      for (const auto &[r, v] : elems[c].entries()) {
        const int d = tree_degree(b.representative(r), m);
        if (!first && d != deg)
          throw std::invalid_argument("CobarGenerators: frame element is not homogeneous");
        deg = d;
        first = false;
      }
      gens_.push_back({n, c, -deg - n + 2, names[c]});
    }
    elements_[n] = std::move(elems);
    inverse_.emplace(n, std::move(*inv));
  }
}

int CobarGenerators::count(int n) const {
  if (n < 2 || n > nmax_)
    return 0;
  return dual_->dim(n);
}

int CobarGenerators::id(int n, int basis_index) const {
  if (basis_index < 0 || basis_index >= count(n))
    throw std::out_of_range("CobarGenerators::id");
  return first_.at(n) + basis_index;
}

TreeCombination CobarGenerators::dual_element(int dec) const {
  const Gen &g = gens_.at(dec);
  const ArityBasis &b = dual_->basis(g.arity);
  return dual_->free_basis(g.arity).to_combination(b.lift(elements_.at(g.arity)[g.index]));
}

SparseVector CobarGenerators::frame_coordinates(int n, const TreeCombination &x) const {
  return inverse_.at(n).apply(dual_->basis(n).coordinates(x));
}

Tree CobarGenerators::corolla(int dec) const {
  std::vector<Tree> leaves;
  for (int l = 1; l <= arity(dec); ++l)
    leaves.push_back(Tree::leaf(l));
  return Tree::node(dec, std::move(leaves));
}

// E(n) is the contragredient of P^!(n) tensored with sgn_n. With the engine's
// convention dec(X) = sum c d'(X o pi), the coefficient of d' is
// sgn(pi) * <b_dec, b_d' . pi>, writing b . pi for the relabelling action.
std::vector<std::pair<int, Scalar>> CobarGenerators::permute_inputs(int dec, const Permutation &pi) const {
  const Gen &g = gens_.at(dec);
  std::vector<int> key{g.arity};
  key.insert(key.end(), pi.images().begin(), pi.images().end());
  auto it = action_.find(key);
  if (it == action_.end()) {
    std::vector<SparseVector> cols;
    const int first = first_.at(g.arity);
    for (int r = 0; r < count(g.arity); ++r)
      cols.push_back(frame_coordinates(g.arity, act(dual_element(first + r), pi, dual_->module())));
    it = action_.emplace(std::move(key), std::move(cols)).first;
  }
  std::vector<std::pair<int, Scalar>> out;
  const int first = first_.at(g.arity);
  for (int r = 0; r < static_cast<int>(it->second.size()); ++r) {
    const Scalar c = it->second[r].at(g.index);
    if (!is_zero(c))
      out.emplace_back(first + r, pi.sign() * c);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int parity(int x) { return x & 1; }

// Sign of the term g1 o_i g2 (arities p, q; P^! degrees d1, d2) in delta.
// With suspended degrees d' = d + arity - 1: the suspension composition sign
// (p-1) d2 + (q-1)(i-1), the dual pairing sign d1' d2', the desuspension
// sign d1' and an overall minus.
int term_sign(int p, int q, int i, int d1, int d2) {
  const int s1 = d1 + p - 1;
  const int s2 = d2 + q - 1;
  return parity(1 + (p - 1) * d2 + (q - 1) * (i - 1) + s1 * s2 + s1) ? -1 : 1;
}

} // namespace

Cobar::Cobar(const QuadraticPresentation &p, int nmax, const FrameBuilder &frame)
    : p_(p), nmax_(nmax), dual_(std::make_unique<QuadraticOperad>(koszul_dual(p))) {
  if (nmax < 2)
    throw std::invalid_argument("Cobar: nmax must be at least 2");
  gens_ = std::make_unique<CobarGenerators>(*dual_, nmax, frame ? frame(*dual_, nmax) : DualFrame{});
  delta_.assign(gens_->count(), {});
  for (int n = 3; n <= nmax; ++n)
    build_delta(n);
}

void Cobar::build_delta(int n) {
  const SModuleSpec &ma = dual_->module();
  // P^! degree of the element a generator is dual to.
  auto dual_degree = [&](int dec) { return -gens_->degree(dec) - gens_->arity(dec) + 2; };
  for (int q = 2; q <= n - 1; ++q) {
    const int p = n + 1 - q;
    // q-subsets S of {1..n} carried by the upper vertex.
    std::vector<bool> mask(n, false);
    std::fill(mask.end() - q, mask.end(), true);
    do {
      std::vector<int> s, rest;
      for (int l = 1; l <= n; ++l)
        (mask[l - 1] ? s : rest).push_back(l);
      std::vector<int> img;
      int i = 1;
      for (int l : rest)
        if (l < s.front()) {
          img.push_back(l);
          ++i;
        }
      img.insert(img.end(), s.begin(), s.end());
      for (int l : rest)
        if (l > s.front())
          img.push_back(l);
      const Permutation sigma(img);
      for (int r1 = 0; r1 < gens_->count(p); ++r1) {
        const int e1 = gens_->id(p, r1);
        const TreeCombination x1 = gens_->dual_element(e1);
        for (int r2 = 0; r2 < gens_->count(q); ++r2) {
          const int e2 = gens_->id(q, r2);
          const SparseVector coords =
              gens_->frame_coordinates(n, act(graft(x1, i, gens_->dual_element(e2), ma), sigma, ma));
          if (coords.empty())
            continue;
          const TreeCombination term = act(graft(gens_->corolla(e1), i, gens_->corolla(e2), *gens_), sigma, *gens_);
          const int sign = sigma.sign() * term_sign(p, q, i, dual_degree(e1), dual_degree(e2));
          for (const auto &[r, c] : coords.entries())
            koszul::accumulate(delta_[gens_->id(n, r)], term, sign * c);
        }
      }
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
}

TreeCombination Cobar::delta_tree(const Tree &t) const {
  if (t.is_leaf())
    return {};
  std::vector<TreeCombination> inputs;
  for (const auto &c : t.children)
    inputs.push_back({{c, Scalar(1)}});
  TreeCombination out = compose_inputs(delta(t.dec), inputs, *gens_);
  const TreeCombination top{{gens_->corolla(t.dec), Scalar(1)}};
  int before = gens_->degree(t.dec);
  for (std::size_t j = 0; j < t.children.size(); ++j) {
    const Tree &c = t.children[j];
    if (!c.is_leaf()) {
      std::vector<TreeCombination> in = inputs;
      in[j] = delta_tree(c);
      koszul::accumulate(out, compose_inputs(top, in, *gens_), Scalar(parity(before) ? -1 : 1));
    }
    before += tree_degree(c, *gens_);
  }
  return out;
}

TreeCombination Cobar::delta(const TreeCombination &c) const {
  TreeCombination out;
  for (const auto &[t, v] : c)
    koszul::accumulate(out, delta_tree(t), v);
  return out;
}

namespace {

Tree to_presentation_tree(const Tree &t, const CobarGenerators &g, const SModuleSpec &m, Scalar &coef) {
  if (t.is_leaf())
    return t;
  if (g.arity(t.dec) != 2)
    throw std::invalid_argument("to_presentation: generator of arity > 2");
  const TreeCombination b = g.dual_element(t.dec);
  if (b.size() != 1)
    throw std::invalid_argument("to_presentation: binary generator is not dual to a decoration");
  const int dec = b.begin()->first.dec; // the dual module keeps decoration ids
  coef *= m.decorations()[dec].op ? -b.begin()->second : b.begin()->second;
  Tree out = Tree::node(dec, {});
  for (const auto &c : t.children)
    out.children.push_back(to_presentation_tree(c, g, m, coef));
  return out;
}

} // namespace

TreeCombination Cobar::to_presentation(const TreeCombination &c) const {
  TreeCombination out;
  for (const auto &[t, v] : c) {
    Scalar coef(1);
    Tree u = to_presentation_tree(t, *gens_, p_.module, coef);
    koszul::accumulate(out, u, coef * v);
  }
  return out;
}

DeltaSquaredReport delta_squared_check(const Cobar &c) {
  DeltaSquaredReport r;
  r.nmax = c.nmax();
  const CobarGenerators &g = c.generators();
  for (int dec = 0; dec < g.count(); ++dec) {
    ++r.generators;
    if (!c.delta(c.delta(dec)).empty() && r.zero) {
      r.zero = false;
      r.failing = g.name(dec);
    }
  }
  return r;
}

WeightTwoReport weight_two_projection(const Cobar &c) {
  WeightTwoReport r;
  const QuadraticOperad op(c.presentation());
  const FreeBasis &fb = op.free_basis(3);
  const Subspace rel = relation_ideal_span(op, 3);
  r.relation_dim = rel.dim();
  std::vector<SparseVector> image;
  const CobarGenerators &g = c.generators();
  for (int k = 0; k < g.count(3); ++k)
    image.push_back(fb.to_vector(c.to_presentation(c.delta(g.id(3, k)))));
  const Subspace im = Subspace::span(fb.size(), image);
  r.image_dim = im.dim();
  r.equal = im == rel;
  return r;
}

std::string delta_table(const Cobar &c, int n) {
  std::ostringstream out;
  const CobarGenerators &g = c.generators();
  for (int k = 0; k < g.count(n); ++k) {
    const int dec = g.id(n, k);
    out << g.name(dec) << " [deg " << g.degree(dec) << "] -> ";
    const auto &d = c.delta(dec);
    out << (d.empty() ? "0" : serialize(d, g)) << "\n";
  }
  return out.str();
}

} // namespace koszul

namespace koszul {

void validate(const InfinityGenerator &g) {
  const int n = g.arity();
  std::vector<int> all = g.I;
  all.insert(all.end(), g.J.begin(), g.J.end());
  std::sort(all.begin(), all.end());
  bool ok = n >= 2 && !g.I.empty() && g.k >= 0 && g.k <= static_cast<int>(g.J.size()) &&
            std::is_sorted(g.I.begin(), g.I.end()) && std::is_sorted(g.J.begin(), g.J.end());
  for (int l = 1; ok && l <= n; ++l)
    ok = all[l - 1] == l;
  if (!ok)
    throw std::invalid_argument("invalid BiNij_infinity generator " + to_string(g));
}

std::string to_string(const InfinityGenerator &g) {
  std::string s = "m" + std::to_string(g.k) + "[";
  for (int i : g.I)
    s += std::to_string(i);
  s += "|";
  for (int j : g.J)
    s += std::to_string(j);
  return s + "]";
}

std::vector<InfinityGenerator> binij_generators(int n) {
  std::vector<InfinityGenerator> out;
  for (int j = 0; j < n; ++j) {
    std::vector<bool> mask(n, false); // true marks J
    std::fill(mask.end() - j, mask.end(), true);
    std::vector<InfinityGenerator> level;
    do {
      InfinityGenerator g;
      for (int l = 1; l <= n; ++l)
        (mask[l - 1] ? g.J : g.I).push_back(l);
      level.push_back(g);
    } while (std::next_permutation(mask.begin(), mask.end()));
    std::sort(level.begin(), level.end(), [](const auto &a, const auto &b) { return a.I < b.I; });
    for (auto &g : level)
      for (int k = 0; k <= j; ++k) {
        g.k = k;
        out.push_back(g);
      }
  }
  return out;
}

DualFrame binij_frame(const QuadraticOperad &binij_dual, int nmax) {
  const SModuleSpec &m = binij_dual.module();
  const int y = m.find("y"), w = m.find("pl_w"), b = m.find("pl_b");
  if (y < 0 || w < 0 || b < 0)
    throw std::invalid_argument("binij_frame: not a BiNij^! presentation");
  DualFrame frame;
  for (int n = 2; n <= nmax; ++n) {
    for (const auto &g : binij_generators(n)) {
      Tree t = Tree::leaf(g.I.front());
      for (std::size_t a = 1; a < g.I.size(); ++a)
        t = Tree::node(y, {t, Tree::leaf(g.I[a])});
      const int blacks = static_cast<int>(g.J.size()) - g.k;
      for (std::size_t a = 0; a < g.J.size(); ++a)
        t = Tree::node(static_cast<int>(a) < blacks ? b : w, {t, Tree::leaf(g.J[a])});
      // Sign chosen so that the dual generator is the shuffle image of the
      // standard one m[1..p|p+1..n], times (-1)^C(n,2).
      std::vector<int> word = g.I;
      word.insert(word.end(), g.J.begin(), g.J.end());
      int inversions = n * (n - 1) / 2;
      for (std::size_t a = 0; a < word.size(); ++a)
        for (std::size_t c = a + 1; c < word.size(); ++c)
          inversions += word[a] > word[c];
      SparseVector v = binij_dual.basis(n).coordinates(normalize(t, m));
      if (inversions % 2)
        v *= Scalar(-1);
      frame.elements[n].push_back(std::move(v));
      frame.names[n].push_back(to_string(g));
    }
  }
  return frame;
}

namespace {

int inversions(const std::vector<int> &w) {
  int c = 0;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b)
      c += w[a] > w[b];
  return c;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int> &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int size(const std::vector<int> &v) { return static_cast<int>(v.size()); }

// Generator id of m_k[1..p|p+1..p+q].
int standard_id(const CobarGenerators &gens, int p, int q, int k) {
  InfinityGenerator s;
  for (int l = 1; l <= p + q; ++l)
    (l <= p ? s.I : s.J).push_back(l);
  s.k = k;
  const auto all = binij_generators(p + q);
  const auto it = std::find(all.begin(), all.end(), s);
  return gens.id(p + q, static_cast<int>(it - all.begin()));
}

TreeCombination corolla_on(const CobarGenerators &gens, const InfinityGenerator &g,
                           std::vector<TreeCombination> inputs) {
  const int id = standard_id(gens, size(g.I), size(g.J), g.k);
  return compose_inputs({{gens.corolla(id), Scalar(1)}}, inputs, gens);
}

} // namespace

bool DifferentialTerm::into_antisymmetric() const {
  return std::find(lower.J.begin(), lower.J.end(), 0) != lower.J.end();
}

std::vector<DifferentialTerm> binij_delta_closed_form(const InfinityGenerator &g, bool literal) {
  validate(g);
  const std::vector<int> &I = g.I, &J = g.J;
  const int ni = size(I), nj = size(J);
  std::vector<DifferentialTerm> out;
  auto emit = [&](InfinityGenerator lower, InfinityGenerator upper, int exponent) {
    const int jl = size(lower.J), ju = size(upper.J);
    if (lower.arity() < 2 || upper.arity() < 2 || upper.I.empty() || lower.I.empty())
      return;
    for (int k1 = 0; k1 <= jl; ++k1) {
      const int k2 = g.k - k1;
      if (k2 < 0 || k2 > ju)
        continue;
      lower.k = k1;
      upper.k = k2;
      out.push_back({lower, upper, exponent % 2 ? -1 : 1});
    }
  };
  for (int mi = 0; mi < (1 << ni); ++mi)
    for (int mj = 0; mj < (1 << nj); ++mj) {
      std::vector<int> i1, i2, j1, j2; // lower and upper parts
      for (int a = 0; a < ni; ++a)
        (mi >> a & 1 ? i2 : i1).push_back(I[a]);
      for (int a = 0; a < nj; ++a)
        (mj >> a & 1 ? j2 : j1).push_back(J[a]);
      // Upper output in a symmetric input: sign -(-1)^(|J_1| + sigma(J_2 J_1)).
      emit({concat({0}, i1), j1, 0}, {i2, j2, 0}, 1 + size(j1) + inversions(concat(j2, j1)));
      // Upper output in an antisymmetric input, one label j of J turning
      // symmetric upstairs.
      for (int a = 0; a < nj; ++a) {
        if (mj >> a & 1)
          continue;
        std::vector<int> low, up = i2;
        for (int x : j1)
          if (x != J[a])
            low.push_back(x);
        up.insert(std::lower_bound(up.begin(), up.end(), J[a]), J[a]);
        int e = size(low) + size(j2) + inversions(concat(concat(low, {J[a]}), j2));
        if (!literal)
          e += size(low) * size(j2);
        emit({i1, concat(low, {0}), 0}, {up, j2, 0}, e);
      }
    }
  return out;
}

TreeCombination to_tree(const Cobar &c, const std::vector<DifferentialTerm> &terms) {
  const CobarGenerators &gens = c.generators();
  auto leaves = [](const InfinityGenerator &g) {
    std::vector<TreeCombination> in;
    for (int l : concat(g.I, g.J))
      in.push_back({{Tree::leaf(l), Scalar(1)}});
    return in;
  };
  TreeCombination out;
  for (const auto &t : terms) {
    const TreeCombination up = corolla_on(gens, t.upper, leaves(t.upper));
    std::vector<TreeCombination> in = leaves(t.lower);
    for (std::size_t a = 0; a < in.size(); ++a)
      if (concat(t.lower.I, t.lower.J)[a] == 0)
        in[a] = up;
    koszul::accumulate(out, corolla_on(gens, t.lower, std::move(in)), Scalar(t.sign));
  }
  return out;
}

ClosedFormReport compare_closed_form(const Cobar &c, bool literal) {
  ClosedFormReport r;
  const CobarGenerators &gens = c.generators();
  for (int n = 2; n <= c.nmax(); ++n) {
    const auto all = binij_generators(n);
    for (std::size_t a = 0; a < all.size(); ++a) {
      const int id = gens.id(n, static_cast<int>(a));
      if (gens.name(id) != to_string(all[a]))
        throw std::invalid_argument("compare_closed_form: cobar does not use binij_frame");
      ++r.generators;
      if (to_tree(c, binij_delta_closed_form(all[a], literal)) == c.delta(id))
        ++r.agreeing;
      else if (!r.first_disagreement)
        r.first_disagreement = to_string(all[a]);
    }
  }
  return r;
}

} // namespace koszul
