#ifndef KOSZUL_TREES_HPP
#define KOSZUL_TREES_HPP

#include "koszul/permutation.hpp"
#include "koszul/scalar.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

/// A rooted tree whose vertices carry decoration ids and whose leaves carry
/// external labels 1..n. A single leaf is the operadic unit.
struct Tree {
  int dec = -1;   // -1 marks a leaf
  int label = 0;  // leaves only
  std::vector<Tree> children;

  static Tree leaf(int label) { return Tree{-1, label, {}}; }
  static Tree node(int dec, std::vector<Tree> children) { return Tree{dec, 0, std::move(children)}; }

  bool is_leaf() const { return dec < 0; }
  int arity() const;       // number of leaves
  int vertex_count() const;
  int min_label() const;

  std::strong_ordering operator<=>(const Tree &o) const;
  bool operator==(const Tree &o) const;
};

/// Formal linear combination of trees with no zero coefficients stored.
using TreeCombination = std::map<Tree, Scalar>;

void accumulate(TreeCombination &into, const Tree &t, const Scalar &c);
void accumulate(TreeCombination &into, const TreeCombination &from, const Scalar &c);

/// What the tree engine needs to know about the decorations: degrees for
/// Koszul signs and the symmetric-group action on inputs.
class DecorationModule {
public:
  virtual ~DecorationModule() = default;
  virtual int arity(int dec) const = 0;
  virtual int degree(int dec) const = 0;
  virtual std::string name(int dec) const = 0;
  /// Reorders the inputs of `dec`: returns terms (d', c) with
  ///   dec(X_1, ..., X_k) = sum c * d'(X_{pi(1)}, ..., X_{pi(k)})
  /// before Koszul signs of moving the inputs, which the engine applies.
  virtual std::vector<std::pair<int, Scalar>> permute_inputs(int dec, const Permutation &pi) const = 0;
};

int tree_degree(const Tree &t, const DecorationModule &m);

/// Planar normal form: at every vertex inputs are sorted by the minimal
/// external label linked through them; decorations and Koszul signs follow.
TreeCombination normalize(const Tree &t, const DecorationModule &m);
TreeCombination normalize(const TreeCombination &c, const DecorationModule &m);
bool is_planar_normal(const Tree &t);
/// Sorts inputs of every vertex by minimal linked label, ignoring decorations
/// (no signs). Throws std::invalid_argument on a vertex without inputs.
Tree planar_order(const Tree &t);

/// Operadic composition a o_i b with standard relabelling, normalized.
TreeCombination graft(const Tree &a, int i, const Tree &b, const DecorationModule &m);
TreeCombination graft(const TreeCombination &a, int i, const TreeCombination &b, const DecorationModule &m);

/// Relabel leaf l to sigma(l) and normalize.
TreeCombination act(const Tree &t, const Permutation &sigma, const DecorationModule &m);
TreeCombination act(const TreeCombination &c, const Permutation &sigma, const DecorationModule &m);

/// top o (in_1, ..., in_k) with Koszul order top, in_1, ..., in_k. Each input
/// is a combination of trees on one label set; the sets are disjoint and the
/// result is labelled by their union. A zero input gives zero.
TreeCombination compose_inputs(const TreeCombination &top, const std::vector<TreeCombination> &inputs,
                               const DecorationModule &m);

/// Leaf relabelling without normalization.
Tree relabel(const Tree &t, const std::function<int(int)> &f);

/// Decoration ids along the root-to-leaf path, one word per leaf 1..n.
std::vector<std::vector<int>> path_words(const Tree &t);

/// Ordering on decorations for the length-lex path-word order.
struct DecorationRank {
  std::vector<int> rank; // rank[dec]
  int operator()(int dec) const { return rank.at(dec); }
};

/// Length-lexicographic path-word comparison; returns std::nullopt-free
/// result. `used_tiebreak` is set when path words coincide for distinct trees.
std::strong_ordering tree_compare(const Tree &a, const Tree &b, const DecorationRank &order,
                                  bool *used_tiebreak = nullptr);

/// Internal edges are named by the preorder index (root = 0) of their upper vertex.
std::vector<int> internal_edges(const Tree &t);
/// Two-vertex tree around the given internal edge, leaves relabelled by rank of
/// their minimal linked label.
Tree restrict_edge(const Tree &t, int edge);

std::string serialize(const Tree &t, const DecorationModule &m);
std::string serialize(const TreeCombination &c, const DecorationModule &m);

/// Parses `g(x1,...,xk)` terms; `resolve` maps a name to a decoration id or -1.
Tree parse_tree(std::string_view text, const std::function<int(std::string_view)> &resolve);

} // namespace koszul

#endif // KOSZUL_TREES_HPP
