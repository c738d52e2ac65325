#ifndef KOSZUL_CHECKS_HPP
#define KOSZUL_CHECKS_HPP

#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// One randomized property: how many samples satisfied it.
struct CheckLine {
  std::string name;
  int samples = 0;
  int passed = 0;
  bool informational = false; // reported, not part of the verdict
  std::optional<std::string> first_failure;
  bool ok() const { return passed == samples; }
};

struct CheckReport {
  std::vector<CheckLine> lines;
  std::vector<std::string> notes;
  bool ok() const;
};

/// "name: passed/samples" lines, then the notes.
std::string to_text(const CheckReport &r);

/// Bracket identities on even spaces of dimension <= 3 with weight <= 2 and
/// polynomial degree <= 3: graded antisymmetry, graded Jacobi, the weight-0
/// Lie bracket, N_J = c[J, J] and N_{J,K} + N_{K,J} = 2c[J, K]. The stated
/// form N_{J,K} + N_{K,J} = c[J, K] is reported as an informational line.
CheckReport fn_identity_check(unsigned seed, int samples = 100);

/// Random families with two or three entry orbits over spaces of dimension
/// <= 2: the operadic residual vanishes iff [Gamma, Gamma] does, the residual
/// equals [Gamma, Gamma] / 2, and degree-0 solutions consist of weight-1 forms
/// with hbar order <= 1. Also runs the pre-Lie table e1 o e1 = e2.
CheckReport rep_equivalence_check(unsigned seed, int samples = 60, int nmax = 3);

} // namespace koszul

#endif // KOSZUL_CHECKS_HPP
