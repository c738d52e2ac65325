#ifndef KOSZUL_PBW_HPP
#define KOSZUL_PBW_HPP

#include "koszul/quadratic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace koszul {

struct RewriteRule {
  Tree lhs;
  TreeCombination rhs; // lhs == rhs modulo the relations, every term > lhs
};

struct RewritingSystem {
  std::vector<RewriteRule> rules;
  bool oriented = true;
  /// First rule with a term not strictly above its source, when !oriented.
  std::optional<RewriteRule> offending;
  bool tiebreak_used = false;
};

/// Two-vertex rewrite rules from the arity-3 echelon form under the operad's order.
RewritingSystem orient_relations(const QuadraticOperad &op);

/// Arity-n trees all of whose restricted two-vertex trees are arity-3
/// quotient representatives. Returned as free-basis indices, increasing.
std::vector<int> candidate_monomials(const QuadraticOperad &op, int n);

/// The tree t with the two-vertex subtree around `edge` replaced by beta
/// (an arity-3 combination), inputs and context kept. Linear in beta.
TreeCombination substitute_edge(const Tree &t, int edge, const TreeCombination &beta, const SModuleSpec &m);

/// Repeatedly applies the two-vertex rules until every term is a candidate.
TreeCombination rewrite_to_candidates(const QuadraticOperad &op, const TreeCombination &c);

struct PBWArityReport {
  int arity = 0;
  int candidates = 0;
  int quotient_dim = 0;
  bool condition1 = true;
  bool condition2 = true;
};

struct PBWCertificate {
  std::string presentation;
  std::string order;
  int nmax = 0;
  int rules = 0;
  bool oriented = true;
  std::vector<PBWArityReport> arities; // n = 2..nmax
  bool tiebreak_used = false;
  bool verified = false;
  /// On failure: what went wrong and the offending tree.
  std::string witness_kind;
  int witness_arity = 0;
  std::optional<Tree> witness;
};

PBWCertificate verify_pbw(const QuadraticOperad &op, int nmax);
std::string to_text(const PBWCertificate &c, const SModuleSpec &m);

} // namespace koszul

#endif // KOSZUL_PBW_HPP
