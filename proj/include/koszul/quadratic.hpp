#ifndef KOSZUL_QUADRATIC_HPP
#define KOSZUL_QUADRATIC_HPP

#include "koszul/free_operad.hpp"
#include "koszul/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

/// <M | R>: binary generators and arity-3 relations in normal form.
struct QuadraticPresentation {
  std::string name;
  SModuleSpec module;
  std::vector<TreeCombination> relations;
};

/// Parses the operad spec grammar:
///   name <id>                                   (optional)
///   generator <id> arity 2 degree <int> symmetry <trivial|sign|regular>
///   rel: <coef> <tree> (+|-) <coef> <tree> ...
/// Blank lines and lines starting with '#' are ignored.
QuadraticPresentation parse_spec(std::string_view text);
std::string write_spec(const QuadraticPresentation &p);

/// Com, Lie1, Perm, PreLie, Nij, BiNij; a trailing '!' asks for the Koszul dual.
QuadraticPresentation builtin_presentation(std::string_view name);
std::vector<std::string> builtin_names();
/// Shipped spec text of a non-dual built-in.
std::string_view builtin_spec_text(std::string_view name);

/// Linearly independent sparse spanning vectors of the ideal in F(M)(n).
struct IdealSpan {
  int arity = 0;
  int ambient = 0;
  std::vector<SparseVector> generators;
  int dim() const { return static_cast<int>(generators.size()); }
};

class QuadraticOperad;

/// Quotient basis of P(n) for a decoration order: columns of F(M)(n) are
/// sorted increasingly by tree_compare, the ideal is echelonized in that
/// column order, its pivots are the leading terms, the rest are representatives.
class ArityBasis {
public:
  ArityBasis(const QuadraticOperad &op, int n, const DecorationRank &order);

  int arity() const { return arity_; }
  int dim() const { return static_cast<int>(representatives_.size()); }
  /// Free-basis indices of the representatives, increasing.
  std::span<const int> representative_indices() const { return representatives_; }
  const Tree &representative(int i) const;
  /// Free-basis indices of the leading terms of the ideal.
  std::span<const int> leading_indices() const { return leading_; }
  bool is_representative(int free_index) const { return rep_pos_.count(free_index) != 0; }
  bool used_tiebreak() const { return used_tiebreak_; }

  /// Quotient coordinates of an element of F(M)(n) (free-basis vector or trees).
  SparseVector coordinates(const SparseVector &free_vector) const;
  SparseVector coordinates(const TreeCombination &c) const;
  /// Free-basis vector supported on representatives.
  SparseVector lift(const SparseVector &q) const;

private:
  const FreeBasis *free_;
  int arity_;
  std::vector<int> column_of_;   // free index -> column in sorted order
  std::vector<int> free_of_;     // column -> free index
  Echelon echelon_;              // in column coordinates
  std::vector<int> representatives_;
  std::vector<int> leading_;
  std::map<int, int> rep_pos_;
  bool used_tiebreak_ = false;
};

/// Per-arity data of a presentation, computed lazily and cached.
class QuadraticOperad {
public:
  explicit QuadraticOperad(QuadraticPresentation p);
  QuadraticOperad(QuadraticPresentation p, DecorationRank order);

  const QuadraticPresentation &presentation() const { return p_; }
  const SModuleSpec &module() const { return p_.module; }
  const DecorationRank &order() const { return order_; }
  /// Same presentation and cached ideals, different order.
  QuadraticOperad with_order(DecorationRank order) const;

  const FreeBasis &free_basis(int n) const;
  const IdealSpan &ideal(int n) const;
  const ArityBasis &basis(int n) const;
  int dim(int n) const { return basis(n).dim(); }

  /// x o_i y on quotient coordinates of arities m and k.
  SparseVector compose(int m, const SparseVector &x, int i, int k, const SparseVector &y) const;

private:
  struct Cache {
    std::map<int, std::unique_ptr<FreeBasis>> free;
    std::map<int, IdealSpan> ideals;
  };
  QuadraticPresentation p_;
  DecorationRank order_;
  std::shared_ptr<Cache> cache_;
  mutable std::map<int, std::unique_ptr<ArityBasis>> bases_;
};

/// The operadic ideal generated by R in arity n, as a reduced echelon subspace.
Subspace relation_ideal_span(const QuadraticOperad &op, int n);

/// Declaration-order ranks.
DecorationRank default_order(const SModuleSpec &m);
/// Parses "a<b<c" over all decorations of m.
DecorationRank parse_order(const SModuleSpec &m, std::string_view text);
std::string order_string(const SModuleSpec &m, const DecorationRank &r);

/// <T', T> between F(M^v)(3) (rows) and F(M)(3) (columns), enumerated bases.
Matrix pairing_matrix(const SModuleSpec &m);

/// <M^v | R^perp>.
QuadraticPresentation koszul_dual(const QuadraticPresentation &p);

struct SeriesReport {
  std::vector<int> dims;      // dims[n-1] = dim P(n)
  std::vector<int> dual_dims; // dims of P^!
  std::vector<Scalar> composite; // coefficients of f_{P!}(-f_P(-x)), index = power
  bool consistent = false;
};

/// Checks f_{P!}(-f_P(-x)) = x up to x^nmax with f_P = sum dim P(n) x^n / n!.
SeriesReport gk_series_check(const QuadraticPresentation &p, int nmax);

} // namespace koszul

#endif // KOSZUL_QUADRATIC_HPP
