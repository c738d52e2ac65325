#ifndef KOSZUL_FREE_OPERAD_HPP
#define KOSZUL_FREE_OPERAD_HPP

#include "koszul/linalg.hpp"
#include "koszul/trees.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

enum class Symmetry { trivial, sign, regular };

std::string to_string(Symmetry s);
Symmetry parse_symmetry(const std::string &s);

struct GeneratorSymbol {
  std::string name;
  int arity = 2;
  int degree = 0;
  Symmetry symmetry = Symmetry::regular;

  bool operator==(const GeneratorSymbol &) const = default;
};

/// Generators of a presentation. A regular binary generator g contributes the
/// two basis decorations g and g_op = g.(12).
class SModuleSpec : public DecorationModule {
public:
  struct Decoration {
    int generator;
    bool op;
  };

  SModuleSpec() = default;
  explicit SModuleSpec(std::vector<GeneratorSymbol> generators);

  std::span<const GeneratorSymbol> generators() const { return generators_; }
  std::span<const Decoration> decorations() const { return decorations_; }
  int decoration_count() const { return static_cast<int>(decorations_.size()); }
  /// Decoration id for a name such as "pl" or "pl_op"; -1 when unknown.
  int find(std::string_view name) const;
  /// Number of basis decorations of the given arity (dim M(n)).
  int dim(int arity) const;

  int arity(int dec) const override;
  int degree(int dec) const override;
  std::string name(int dec) const override;
  std::vector<std::pair<int, Scalar>> permute_inputs(int dec, const Permutation &pi) const override;

  bool operator==(const SModuleSpec &o) const { return generators_ == o.generators_; }

private:
  std::vector<GeneratorSymbol> generators_;
  std::vector<Decoration> decorations_;
};

/// M^v(n) = M(n)^* (x) sgn_n: trivial <-> sign, regular stays regular, degrees negated.
SModuleSpec czech_dual(const SModuleSpec &m);

/// All normal-form decorated trees of arity n, in a deterministic order
/// (shape serialization, then decoration names).
std::vector<Tree> enumerate_basis(const SModuleSpec &m, int n);
int free_dim(const SModuleSpec &m, int n);

/// Normal-form rewriting of a formal sum; throws on unknown decorations or
/// inconsistent arity.
TreeCombination normalize_combination(const SModuleSpec &m, const TreeCombination &raw);

/// Enumerated basis of F(M)(n) with coordinate maps.
class FreeBasis {
public:
  FreeBasis(const SModuleSpec &m, int n);

  int arity() const { return arity_; }
  int size() const { return static_cast<int>(trees_.size()); }
  const Tree &tree(int i) const { return trees_[i]; }
  std::span<const Tree> trees() const { return trees_; }
  int index_of(const Tree &t) const; // -1 when absent

  SparseVector to_vector(const TreeCombination &c) const;
  TreeCombination to_combination(const SparseVector &v) const;

private:
  int arity_;
  std::vector<Tree> trees_;
  std::map<Tree, int> index_;
};

} // namespace koszul

#endif // KOSZUL_FREE_OPERAD_HPP
