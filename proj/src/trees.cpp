#include "koszul/trees.hpp"

#include "koszul/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace koszul {

int Tree::arity() const {
  if (is_leaf())
    return 1;
  int n = 0;
  for (const auto &c : children)
    n += c.arity();
  return n;
}

int Tree::vertex_count() const {
  if (is_leaf())
    return 0;
  int n = 1;
  for (const auto &c : children)
    n += c.vertex_count();
  return n;
}

std::strong_ordering Tree::operator<=>(const Tree &o) const {
  if (auto c = dec <=> o.dec; c != 0)
    return c;
  if (auto c = label <=> o.label; c != 0)
    return c;
  const std::size_t n = std::min(children.size(), o.children.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = children[i] <=> o.children[i]; c != 0)
      return c;
  return children.size() <=> o.children.size();
}

bool Tree::operator==(const Tree &o) const {
  return dec == o.dec && label == o.label && children == o.children;
}

int Tree::min_label() const {
  if (is_leaf())
    return label;
  int m = children.front().min_label();
  for (const auto &c : children)
    m = std::min(m, c.min_label());
  return m;
}

void accumulate(TreeCombination &into, const Tree &t, const Scalar &c) {
  if (is_zero(c))
    return;
  auto [it, inserted] = into.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second))
      into.erase(it);
  }
}

void accumulate(TreeCombination &into, const TreeCombination &from, const Scalar &c) {
  for (const auto &[t, v] : from)
    koszul::accumulate(into, t, c * v);
}

int tree_degree(const Tree &t, const DecorationModule &m) {
  if (t.is_leaf())
    return 0;
  int d = m.degree(t.dec);
  for (const auto &c : t.children)
    d += tree_degree(c, m);
  return d;
}

namespace {

void normalize_choices(const Tree &t, const DecorationModule &m,
                       const std::vector<TreeCombination> &kids, std::size_t pos,
                       std::vector<Tree> &chosen, const Scalar &coef, TreeCombination &out) {
  if (pos < kids.size()) {
    for (const auto &[child, c] : kids[pos]) {
      chosen.push_back(child);
      normalize_choices(t, m, kids, pos + 1, chosen, coef * c, out);
      chosen.pop_back();
    }
    return;
  }
  const int k = static_cast<int>(chosen.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> mins(k);
  std::vector<int> degs(k);
  for (int i = 0; i < k; ++i) {
    mins[i] = chosen[i].min_label();
    degs[i] = tree_degree(chosen[i], m);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return mins[a] < mins[b]; });

  int parity = 0;
  for (int r = 0; r < k; ++r)
    for (int s = r + 1; s < k; ++s)
      if (order[r] > order[s])
        parity += degs[order[r]] * degs[order[s]];

  std::vector<Tree> sorted;
  sorted.reserve(k);
  bool identity = true;
  std::vector<int> images(k);
  for (int r = 0; r < k; ++r) {
    sorted.push_back(chosen[order[r]]);
    images[r] = order[r] + 1;
    identity = identity && order[r] == r;
  }
  const Scalar base = coef * sign_scalar(parity);
  if (identity) {
    koszul::accumulate(out, Tree::node(t.dec, std::move(sorted)), base);
    return;
  }
  for (const auto &[d, c] : m.permute_inputs(t.dec, Permutation(images)))
    koszul::accumulate(out, Tree::node(d, sorted), base * c);
}

} // namespace

TreeCombination normalize(const Tree &t, const DecorationModule &m) {
  TreeCombination out;
  if (t.is_leaf()) {
    out.emplace(t, Scalar(1));
    return out;
  }
  if (static_cast<int>(t.children.size()) != m.arity(t.dec))
    throw std::invalid_argument("normalize: vertex arity does not match its decoration");
  std::vector<TreeCombination> kids;
  kids.reserve(t.children.size());
  for (const auto &c : t.children)
    kids.push_back(normalize(c, m));
  std::vector<Tree> chosen;
  normalize_choices(t, m, kids, 0, chosen, Scalar(1), out);
  return out;
}

TreeCombination normalize(const TreeCombination &c, const DecorationModule &m) {
  TreeCombination out;
  for (const auto &[t, v] : c)
    koszul::accumulate(out, normalize(t, m), v);
  return out;
}

bool is_planar_normal(const Tree &t) {
  if (t.is_leaf())
    return true;
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (!is_planar_normal(t.children[i]))
      return false;
    if (i && t.children[i - 1].min_label() > t.children[i].min_label())
      return false;
  }
  return true;
}

Tree planar_order(const Tree &t) {
  if (t.is_leaf())
    return t;
  if (t.children.empty())
    throw std::invalid_argument("planar_order: vertex without inputs");
  Tree out = Tree::node(t.dec, {});
  for (const auto &c : t.children)
    out.children.push_back(planar_order(c));
  std::stable_sort(out.children.begin(), out.children.end(),
                   [](const Tree &a, const Tree &b) { return a.min_label() < b.min_label(); });
  return out;
}

Tree relabel(const Tree &t, const std::function<int(int)> &f) {
  if (t.is_leaf())
    return Tree::leaf(f(t.label));
  Tree out = Tree::node(t.dec, {});
  out.children.reserve(t.children.size());
  for (const auto &c : t.children)
    out.children.push_back(relabel(c, f));
  return out;
}

namespace {

// Builds a o_i b and accumulates the degree of the vertices of `a` reached
// after leaf i in preorder.
Tree graft_rec(const Tree &a, int i, const Tree &b, int nb, const DecorationModule &m, bool &passed,
               int &after_degree) {
  if (a.is_leaf()) {
    if (a.label == i) {
      passed = true;
      return relabel(b, [i](int l) { return l + i - 1; });
    }
    return Tree::leaf(a.label < i ? a.label : a.label + nb - 1);
  }
  if (passed)
    after_degree += m.degree(a.dec);
  Tree out = Tree::node(a.dec, {});
  for (const auto &c : a.children)
    out.children.push_back(graft_rec(c, i, b, nb, m, passed, after_degree));
  return out;
}

} // namespace

TreeCombination graft(const Tree &a, int i, const Tree &b, const DecorationModule &m) {
  const int na = a.arity();
  if (i < 1 || i > na)
    throw std::out_of_range("graft: slot index out of range");
  bool passed = false;
  int after = 0;
  Tree g = graft_rec(a, i, b, b.arity(), m, passed, after);
  TreeCombination out = normalize(g, m);
  if ((tree_degree(b, m) * after) & 1)
    for (auto &[t, c] : out)
      c = -c;
  return out;
}

TreeCombination graft(const TreeCombination &a, int i, const TreeCombination &b, const DecorationModule &m) {
  TreeCombination out;
  for (const auto &[ta, ca] : a)
    for (const auto &[tb, cb] : b)
      koszul::accumulate(out, graft(ta, i, tb, m), ca * cb);
  return out;
}

TreeCombination act(const Tree &t, const Permutation &sigma, const DecorationModule &m) {
  if (sigma.size() != t.arity())
    throw std::invalid_argument("act: permutation size does not match arity");
  return normalize(relabel(t, [&](int l) { return sigma(l); }), m);
}

TreeCombination act(const TreeCombination &c, const Permutation &sigma, const DecorationModule &m) {
  TreeCombination out;
  for (const auto &[t, v] : c)
    koszul::accumulate(out, act(t, sigma, m), v);
  return out;
}

namespace {

void leaf_labels(const Tree &t, std::vector<int> &out) {
  if (t.is_leaf()) {
    out.push_back(t.label);
    return;
  }
  for (const auto &c : t.children)
    leaf_labels(c, out);
}

int rank_in(const std::vector<int> &sorted, int label) {
  return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), label) - sorted.begin()) + 1;
}

} // namespace

TreeCombination compose_inputs(const TreeCombination &top, const std::vector<TreeCombination> &inputs,
                               const DecorationModule &m) {
  std::vector<int> concat;
  TreeCombination x = top;
  int offset = 0;
  for (const auto &in : inputs) {
    if (in.empty())
      return {};
    std::vector<int> labels;
    leaf_labels(in.begin()->first, labels);
    std::sort(labels.begin(), labels.end());
    TreeCombination standard;
    for (const auto &[t, v] : in)
      koszul::accumulate(standard, relabel(t, [&](int l) { return rank_in(labels, l); }), v);
    x = graft(x, offset + 1, standard, m);
    offset += static_cast<int>(labels.size());
    concat.insert(concat.end(), labels.begin(), labels.end());
  }
  std::vector<int> sorted = concat;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> img;
  for (int l : concat)
    img.push_back(rank_in(sorted, l));
  x = act(x, Permutation(img), m);
  TreeCombination out;
  for (const auto &[t, v] : x)
    koszul::accumulate(out, relabel(t, [&](int r) { return sorted[r - 1]; }), v);
  return out;
}

namespace {

void collect_words(const Tree &t, std::vector<int> &path, std::vector<std::vector<int>> &words) {
  if (t.is_leaf()) {
    words[t.label - 1] = path;
    return;
  }
  path.push_back(t.dec);
  for (const auto &c : t.children)
    collect_words(c, path, words);
  path.pop_back();
}

} // namespace

std::vector<std::vector<int>> path_words(const Tree &t) {
  std::vector<std::vector<int>> words(t.arity());
  std::vector<int> path;
  collect_words(t, path, words);
  return words;
}

std::strong_ordering tree_compare(const Tree &a, const Tree &b, const DecorationRank &order,
                                  bool *used_tiebreak) {
  const auto wa = path_words(a);
  const auto wb = path_words(b);
  if (wa.size() != wb.size())
    throw std::invalid_argument("tree_compare: arity mismatch");
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (wa[i].size() != wb[i].size())
      return wa[i].size() <=> wb[i].size();
    for (std::size_t j = 0; j < wa[i].size(); ++j) {
      const int ra = order(wa[i][j]);
      const int rb = order(wb[i][j]);
      if (ra != rb)
        return ra <=> rb;
    }
  }
  if (a == b)
    return std::strong_ordering::equal;
  if (used_tiebreak)
    *used_tiebreak = true;
  return a <=> b;
}

namespace {

void preorder_vertices(const Tree &t, std::vector<const Tree *> &out, std::vector<int> &parent, int up) {
  if (t.is_leaf())
    return;
  const int me = static_cast<int>(out.size());
  out.push_back(&t);
  parent.push_back(up);
  for (const auto &c : t.children)
    preorder_vertices(c, out, parent, me);
}

} // namespace

std::vector<int> internal_edges(const Tree &t) {
  std::vector<const Tree *> v;
  std::vector<int> parent;
  preorder_vertices(t, v, parent, -1);
  std::vector<int> edges;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    edges.push_back(i);
  return edges;
}

Tree restrict_edge(const Tree &t, int edge) {
  std::vector<const Tree *> v;
  std::vector<int> parent;
  preorder_vertices(t, v, parent, -1);
  if (edge < 1 || edge >= static_cast<int>(v.size()))
    throw std::invalid_argument("restrict_edge: not an internal edge");
  const Tree &upper = *v[edge];
  const Tree &lower = *v[parent[edge]];

  std::vector<int> mins;
  Tree out = Tree::node(lower.dec, {});
  for (const auto &c : lower.children) {
    if (&c == &upper) {
      Tree up = Tree::node(upper.dec, {});
      for (const auto &g : upper.children) {
        mins.push_back(g.min_label());
        up.children.push_back(Tree::leaf(g.min_label()));
      }
      out.children.push_back(std::move(up));
    } else {
      mins.push_back(c.min_label());
      out.children.push_back(Tree::leaf(c.min_label()));
    }
  }
  std::sort(mins.begin(), mins.end());
  return relabel(out, [&](int l) {
    return static_cast<int>(std::lower_bound(mins.begin(), mins.end(), l) - mins.begin()) + 1;
  });
}

std::string serialize(const Tree &t, const DecorationModule &m) {
  if (t.is_leaf())
    return std::to_string(t.label);
  std::string s = m.name(t.dec) + "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i)
      s += ",";
    s += serialize(t.children[i], m);
  }
  return s + ")";
}

std::string serialize(const TreeCombination &c, const DecorationModule &m) {
  if (c.empty())
    return "0";
  std::string s;
  bool first = true;
  for (const auto &[t, v] : c) {
    const bool neg = sgn(v) < 0;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    s += to_string(Scalar(abs(v))) + " " + serialize(t, m);
    first = false;
  }
  return s;
}

namespace {

struct TreeParser {
  std::string_view text;
  std::size_t pos = 0;
  const std::function<int(std::string_view)> &resolve;

  [[noreturn]] void fail(const std::string &what) const {
    throw InputError(what, 0, static_cast<int>(pos) + 1);
  }
  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  Tree parse() {
    skip();
    if (pos >= text.size())
      fail("unexpected end of tree");
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + (text[pos++] - '0');
      if (v < 1)
        fail("leaf labels start at 1");
      return Tree::leaf(v);
    }
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos)
      fail(std::string("unexpected character '") + text[pos] + "'");
    const std::string_view name = text.substr(start, pos - start);
    const int dec = resolve(name);
    if (dec < 0) {
      pos = start;
      fail("unknown generator '" + std::string(name) + "'");
    }
    skip();
    if (pos >= text.size() || text[pos] != '(')
      fail("expected '('");
    ++pos;
    Tree node = Tree::node(dec, {});
    while (true) {
      node.children.push_back(parse());
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      fail("expected ',' or ')'");
    }
    return node;
  }
};

} // namespace

Tree parse_tree(std::string_view text, const std::function<int(std::string_view)> &resolve) {
  TreeParser p{text, 0, resolve};
  Tree t = p.parse();
  p.skip();
  if (p.pos != text.size())
    p.fail("trailing characters after tree");
  std::vector<int> labels;
  std::function<void(const Tree &)> walk = [&](const Tree &x) {
    if (x.is_leaf())
      labels.push_back(x.label);
    for (const auto &c : x.children)
      walk(c);
  };
  walk(t);
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1)
      throw InputError("leaf labels must be exactly 1..n");
  return t;
}

} // namespace koszul
