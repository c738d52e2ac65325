#ifndef KOSZUL_REPRESENTATION_HPP
#define KOSZUL_REPRESENTATION_HPP

#include "koszul/cobar.hpp"
#include "koszul/fn_geometry.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// Operations kmu_{i,j}: V^{(.)i} (x) V^{^j} -> V of degree 1 - j, stored as
/// the coefficients Gamma^c_{(a_1..a_i)[b_1..b_j]} of the dictionary. Arrays
/// carry the symmetry of the monomial t^{a_1}..t^{a_i} gamma^{b_1}..gamma^{b_j}:
/// graded symmetric in the a's, graded antisymmetric in the b's.
struct RepFamily {
  GradedSpace space;
  // (k, i, j) -> word a_1..a_i b_1..b_j c -> coefficient; whole orbits stored.
  std::map<std::array<int, 3>, std::map<std::vector<int>, Scalar>> maps;

  Scalar coefficient(int k, const std::vector<int> &a, const std::vector<int> &b, int c) const;
  /// Sets an entry together with its symmetry images. Throws
  /// std::invalid_argument if the symmetry forces a nonzero entry to vanish.
  void set(int k, const std::vector<int> &a, const std::vector<int> &b, int c, const Scalar &v);
  /// Throws std::invalid_argument on bad index ranges (i >= 1, i + j >= 2,
  /// 0 <= k <= j), wrong degrees or broken symmetry.
  void validate() const;
};

/// Text table: one "k i j | a.. | b.. | c = value" line per sorted entry, and
/// "d a -> b = value" lines for the differential.
std::string to_text(const RepFamily &mu);
/// Inverse of to_text; entries may be given in any order of their orbit.
/// Blank lines and '#' comments are ignored. Throws InputError.
RepFamily parse_rep_family(const std::string &text);

/// Gamma_k = sum 1/(i! j!) Gamma^c_{(a)[b]} t^a gamma^b d_c, with the
/// differential entering Gamma_0 as -D.
FormSeries rep_to_series(const RepFamily &mu, const FormBounds &bounds = {});
/// Inverse of rep_to_series. Throws std::invalid_argument unless every term
/// has degree 1, weight at least its hbar order and a positive t degree.
RepFamily series_to_rep(const FormSeries &gamma, const GradedSpace &space);

/// The map rho(m_k[I|J]) applied to basis vectors e_{x_1}, .., e_{x_n}, as
/// coefficients of e_1..e_dim (index 0 unused).
std::vector<Scalar> evaluate(const RepFamily &mu, const InfinityGenerator &g, const std::vector<int> &x);

struct RepresentationReport {
  int generators = 0;
  int failing = 0;
  std::optional<std::string> first_failure;
  // generator name -> inputs x_1..x_n, output c -> (rho delta - d rho)(e_x)^c
  std::map<std::string, std::map<std::vector<int>, Scalar>> residuals;
  bool zero() const { return failing == 0; }
};

/// Checks rho delta = d rho on every BiNij_infinity generator of `c`, which
/// must carry binij_frame, by composing multilinear maps on basis vectors.
RepresentationReport verify_representation(const RepFamily &mu, const Cobar &c);
RepresentationReport verify_representation(const RepFamily &mu, int nmax);

/// The residuals of `r` as forms through the dictionary of rep_to_series,
/// read off the generators m_k[1..i|i+1..n]. For a family without truncated
/// terms this is half the bracket [Gamma, Gamma].
FormSeries residual_series(const RepresentationReport &r, const GradedSpace &space);

} // namespace koszul

#endif // KOSZUL_REPRESENTATION_HPP
