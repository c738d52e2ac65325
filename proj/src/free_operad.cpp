#include "koszul/free_operad.hpp"

#include "koszul/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace koszul {

std::string to_string(Symmetry s) {
  switch (s) {
  case Symmetry::trivial:
    return "trivial";
  case Symmetry::sign:
    return "sign";
  case Symmetry::regular:
    return "regular";
  }
  return "?";
}

Symmetry parse_symmetry(const std::string &s) {
  if (s == "trivial")
    return Symmetry::trivial;
  if (s == "sign")
    return Symmetry::sign;
  if (s == "regular")
    return Symmetry::regular;
  throw InputError("unknown symmetry '" + s + "'");
}

SModuleSpec::SModuleSpec(std::vector<GeneratorSymbol> generators) : generators_(std::move(generators)) {
  std::set<std::string> names;
  for (int g = 0; g < static_cast<int>(generators_.size()); ++g) {
    const auto &gen = generators_[g];
    if (gen.arity < 1)
      throw InputError("generator '" + gen.name + "' must have arity >= 1");
    if (gen.symmetry == Symmetry::regular && gen.arity != 2)
      throw InputError("regular symmetry is supported for binary generators only");
    if (!names.insert(gen.name).second)
      throw InputError("duplicate generator name '" + gen.name + "'");
    decorations_.push_back({g, false});
    if (gen.symmetry == Symmetry::regular) {
      if (!names.insert(gen.name + "_op").second)
        throw InputError("generator name clashes with '" + gen.name + "_op'");
      decorations_.push_back({g, true});
    }
  }
}

int SModuleSpec::find(std::string_view name) const {
  for (int d = 0; d < decoration_count(); ++d)
    if (this->name(d) == name)
      return d;
  return -1;
}

int SModuleSpec::dim(int arity) const {
  int n = 0;
  for (int d = 0; d < decoration_count(); ++d)
    n += this->arity(d) == arity;
  return n;
}

int SModuleSpec::arity(int dec) const { return generators_[decorations_.at(dec).generator].arity; }

int SModuleSpec::degree(int dec) const { return generators_[decorations_.at(dec).generator].degree; }

std::string SModuleSpec::name(int dec) const {
  const auto &d = decorations_.at(dec);
  return generators_[d.generator].name + (d.op ? "_op" : "");
}

std::vector<std::pair<int, Scalar>> SModuleSpec::permute_inputs(int dec, const Permutation &pi) const {
  const auto &d = decorations_.at(dec);
  switch (generators_[d.generator].symmetry) {
  case Symmetry::trivial:
    return {{dec, Scalar(1)}};
  case Symmetry::sign:
    return {{dec, Scalar(pi.sign())}};
  case Symmetry::regular:
    // g(X1, X2) = g_op(X2, X1); decorations of one generator are adjacent.
    if (pi.is_identity())
      return {{dec, Scalar(1)}};
    return {{d.op ? dec - 1 : dec + 1, Scalar(1)}};
  }
  return {};
}

SModuleSpec czech_dual(const SModuleSpec &m) {
  std::vector<GeneratorSymbol> out;
  for (auto g : m.generators()) {
    g.degree = -g.degree;
    if (g.symmetry == Symmetry::trivial)
      g.symmetry = Symmetry::sign;
    else if (g.symmetry == Symmetry::sign)
      g.symmetry = Symmetry::trivial;
    out.push_back(g);
  }
  return SModuleSpec(std::move(out));
}

namespace {

// Set partitions of `labels` (sorted) into exactly k blocks, blocks ordered by minimum.
void partitions(const std::vector<int> &labels, std::size_t pos, int k, std::vector<std::vector<int>> &blocks,
                std::vector<std::vector<std::vector<int>>> &out) {
  const auto remaining = static_cast<int>(labels.size() - pos);
  if (static_cast<int>(blocks.size()) + remaining < k)
    return;
  if (pos == labels.size()) {
    if (static_cast<int>(blocks.size()) == k)
      out.push_back(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(labels[pos]);
    partitions(labels, pos + 1, k, blocks, out);
    blocks[b].pop_back();
  }
  if (static_cast<int>(blocks.size()) < k) {
    blocks.push_back({labels[pos]});
    partitions(labels, pos + 1, k, blocks, out);
    blocks.pop_back();
  }
}

std::vector<Tree> trees_on(const SModuleSpec &m, const std::vector<int> &labels,
                           std::map<std::vector<int>, std::vector<Tree>> &memo) {
  if (auto it = memo.find(labels); it != memo.end())
    return it->second;
  std::vector<Tree> out;
  if (labels.size() == 1) {
    out.push_back(Tree::leaf(labels[0]));
  } else {
    for (int d = 0; d < m.decoration_count(); ++d) {
      const int k = m.arity(d);
      if (k < 2 || k > static_cast<int>(labels.size()))
        continue;
      std::vector<std::vector<std::vector<int>>> parts;
      std::vector<std::vector<int>> blocks;
      partitions(labels, 0, k, blocks, parts);
      for (const auto &p : parts) {
        std::vector<std::vector<Tree>> options;
        for (const auto &b : p)
          options.push_back(trees_on(m, b, memo));
        std::vector<Tree> chosen;
        std::function<void(std::size_t)> pick = [&](std::size_t i) {
          if (i == options.size()) {
            out.push_back(Tree::node(d, chosen));
            return;
          }
          for (const auto &t : options[i]) {
            chosen.push_back(t);
            pick(i + 1);
            chosen.pop_back();
          }
        };
        pick(0);
      }
    }
  }
  memo.emplace(labels, out);
  return out;
}

std::string shape_of(const Tree &t) {
  if (t.is_leaf())
    return std::to_string(t.label);
  std::string s = "*(";
  for (std::size_t i = 0; i < t.children.size(); ++i)
    s += (i ? "," : "") + shape_of(t.children[i]);
  return s + ")";
}

} // namespace

std::vector<Tree> enumerate_basis(const SModuleSpec &m, int n) {
  if (n < 1)
    throw std::invalid_argument("enumerate_basis: arity must be >= 1");
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i)
    labels[i] = i + 1;
  std::map<std::vector<int>, std::vector<Tree>> memo;
  std::vector<Tree> trees = trees_on(m, labels, memo);
  std::vector<std::pair<std::pair<std::string, std::string>, Tree>> keyed;
  keyed.reserve(trees.size());
  for (auto &t : trees)
    keyed.push_back({{shape_of(t), serialize(t, m)}, std::move(t)});
  std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  std::vector<Tree> out;
  out.reserve(keyed.size());
  for (auto &k : keyed)
    out.push_back(std::move(k.second));
  return out;
}

int free_dim(const SModuleSpec &m, int n) { return static_cast<int>(enumerate_basis(m, n).size()); }

TreeCombination normalize_combination(const SModuleSpec &m, const TreeCombination &raw) {
  int arity = -1;
  std::function<void(const Tree &)> check = [&](const Tree &t) {
    if (t.is_leaf())
      return;
    if (t.dec >= m.decoration_count())
      throw InputError("unknown generator in tree");
    if (static_cast<int>(t.children.size()) != m.arity(t.dec))
      throw InputError("arity mismatch: '" + m.name(t.dec) + "' applied to " +
                       std::to_string(t.children.size()) + " inputs");
    for (const auto &c : t.children)
      check(c);
  };
  for (const auto &[t, c] : raw) {
    check(t);
    if (arity < 0)
      arity = t.arity();
    else if (arity != t.arity())
      throw InputError("terms of a combination have different arities");
  }
  return normalize(raw, m);
}

FreeBasis::FreeBasis(const SModuleSpec &m, int n) : arity_(n), trees_(enumerate_basis(m, n)) {
  for (int i = 0; i < size(); ++i)
    index_.emplace(trees_[i], i);
}

int FreeBasis::index_of(const Tree &t) const {
  auto it = index_.find(t);
  return it == index_.end() ? -1 : it->second;
}

SparseVector FreeBasis::to_vector(const TreeCombination &c) const {
  std::vector<SparseVector::Entry> e;
  e.reserve(c.size());
  for (const auto &[t, v] : c) {
    const int i = index_of(t);
    if (i < 0)
      throw std::invalid_argument("FreeBasis::to_vector: tree is not a normal-form basis element");
    e.emplace_back(i, v);
  }
  return SparseVector(std::move(e));
}

TreeCombination FreeBasis::to_combination(const SparseVector &v) const {
  TreeCombination c;
  for (const auto &[i, x] : v.entries())
    c.emplace(trees_[i], x);
  return c;
}

} // namespace koszul
