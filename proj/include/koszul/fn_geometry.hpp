#ifndef KOSZUL_FN_GEOMETRY_HPP
#define KOSZUL_FN_GEOMETRY_HPP

#include "koszul/errors.hpp"
#include "koszul/scalar.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

/// Graded vector space V with basis e_1..e_n (1-based everywhere) and an
/// optional differential d(e_a) = sum_b D^b_a e_b.
struct GradedSpace {
  std::vector<int> degrees;
  std::map<std::pair<int, int>, Scalar> differential; // (a, b) -> D^b_a

  int dim() const { return static_cast<int>(degrees.size()); }
  int degree(int a) const { return degrees.at(a - 1); }
  bool even() const;
  /// Coordinate degrees: |t^a| = -|e_a|, |gamma^a| = 1 - |e_a|, |d_a| = |e_a|.
  int t_degree(int a) const { return -degree(a); }
  int gamma_degree(int a) const { return 1 - degree(a); }
  /// Throws std::invalid_argument on out-of-range indices or a D^b_a with
  /// |e_b| != |e_a| + 1.
  void validate() const;
  bool operator==(const GradedSpace &) const = default;
};

/// Exponents of t^1..t^n followed by gamma^1..gamma^n; the product is taken
/// in this order. Odd variables have exponent at most 1.
struct Monomial {
  std::vector<int> exps;
  auto operator<=>(const Monomial &) const = default;
};

/// Truncation bounds; a negative value means unbounded. Arity is polynomial
/// degree plus weight.
struct FormBounds {
  int poly = -1;
  int weight = -1;
  int arity = -1;

  bool admits(int poly_degree, int form_weight) const;
  bool operator==(const FormBounds &) const = default;
};

/// Polynomial vector form sum c * t^... gamma^... d_out.
class VectorForm {
public:
  struct Key {
    Monomial m;
    int out; // 1-based
    auto operator<=>(const Key &) const = default;
  };

  explicit VectorForm(GradedSpace space, FormBounds bounds = {});

  const GradedSpace &space() const { return space_; }
  const FormBounds &bounds() const { return bounds_; }
  const std::map<Key, Scalar> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * t^{t_1}...t^{t_r} gamma^{g_1}...gamma^{g_s} d_out with the
  /// variables in the given order; reordering signs are applied and a
  /// repeated odd variable gives zero. Throws TruncationOverflow outside the
  /// bounds.
  void add(const std::vector<int> &t, const std::vector<int> &g, int out, const Scalar &c);
  void add(const Key &k, const Scalar &c);
  /// Throws TruncationOverflow if a term lies outside the new bounds.
  void set_bounds(const FormBounds &b);

  int poly_degree(const Key &k) const;
  int weight(const Key &k) const;
  int degree(const Key &k) const;
  /// Weight or degree shared by all terms; nullopt when mixed or zero.
  std::optional<int> weight() const;
  std::optional<int> degree() const;
  std::set<int> degrees() const;
  VectorForm degree_part(int d) const;

  VectorForm &operator+=(const VectorForm &o);
  VectorForm &operator-=(const VectorForm &o);
  VectorForm &operator*=(const Scalar &c);
  friend VectorForm operator+(VectorForm a, const VectorForm &b) { return a += b; }
  friend VectorForm operator-(VectorForm a, const VectorForm &b) { return a -= b; }
  friend VectorForm operator*(const Scalar &c, VectorForm a) { return a *= c; }
  bool operator==(const VectorForm &o) const { return space_ == o.space_ && terms_ == o.terms_; }

private:
  GradedSpace space_;
  FormBounds bounds_;
  std::map<Key, Scalar> terms_;
};

/// Terms inside `b`; `dropped` receives the number of discarded terms.
VectorForm truncated(const VectorForm &f, const FormBounds &b, int *dropped = nullptr);

/// "c * t[..] g[..] d[c]" terms joined by " + "; "0" for the zero form.
std::string to_string(const VectorForm &f);
/// Inverse of to_string; throws InputError.
VectorForm parse_vector_form(const std::string &text, const GradedSpace &space, FormBounds bounds = {});

/// D = D^b_a t^a d_b.
VectorForm induced_vector_field(const GradedSpace &space);

/// Froehlicher-Nijenhuis bracket: L_{[K,L]} = [L_K, L_L] for the Lie
/// derivatives L_K = [i_K, d] acting on functions of t and gamma. Inputs share
/// the space and bounds; throws TruncationOverflow if the result leaves them.
VectorForm fn_bracket(const VectorForm &K, const VectorForm &L);
/// Lie bracket of vector fields (weight 0) by the coordinate formula.
VectorForm lie_bracket(const VectorForm &X, const VectorForm &Y);

/// A (1,2)-tensor on an even space: values(a, b) = T(d_a, d_b), a vector field.
struct TangentTensor {
  GradedSpace space;
  std::map<std::pair<int, int>, VectorForm> values;

  VectorForm at(int a, int b) const;
  bool alternating() const;
  /// sum_{a<b} T(d_a, d_b)^c gamma^a gamma^b d_c; throws std::logic_error
  /// unless alternating.
  VectorForm to_form() const;
  TangentTensor operator+(const TangentTensor &o) const;
  bool operator==(const TangentTensor &o) const;
};

/// JK[X,Y] + [JX,KY] - J[X,KY] - K[JX,Y] on coordinate fields. Both inputs
/// have weight 1 on an even space; throws std::invalid_argument otherwise.
TangentTensor mixed_torsion(const VectorForm &J, const VectorForm &K);
/// mixed_torsion(J, J) as a weight-2 form.
VectorForm nijenhuis_torsion(const VectorForm &J);
/// The constant c with nijenhuis_torsion(J) = c [J, J], evaluated once on a
/// fixed generic example. Consequently N_{J,K} + N_{K,J} = 2c [J, K].
const Scalar &torsion_constant();

/// Power series sum_k coeffs[k] hbar^k.
struct FormSeries {
  std::map<int, VectorForm> coeffs;

  bool is_zero() const;
  bool operator==(const FormSeries &o) const;
};

/// Coefficient of hbar^m is sum_{k+l=m} [A_k, B_l].
FormSeries hbar_fn_bracket(const FormSeries &A, const FormSeries &B);

struct MCReport {
  bool weight_filtration = true; // Gamma_k has weight >= k
  bool degree_one = true;        // every term has degree 1
  bool bracket_zero = true;      // [Gamma, Gamma] = 0 within the bounds
  bool vanishes_at_origin = true; // no term free of t
  std::vector<std::string> offending; // "condition: hbar^k term"
  FormSeries residual;               // [Gamma, Gamma] within the bounds
  int truncated_terms = 0;           // terms of [Gamma, Gamma] outside the bounds
  bool passed() const { return weight_filtration && degree_one && bracket_zero && vanishes_at_origin; }
};

/// Text form of a space and a series, one item per line:
///   degrees: <int>...
///   d <a> -> <b> = <coef>
///   bounds: <poly> <weight> <arity>        (optional, -1 for unbounded)
///   hbar^<k>: <vector form>
/// Blank lines and lines starting with '#' are ignored.
std::string to_text(const GradedSpace &space, const FormSeries &gamma);
/// Throws InputError with the line number.
std::pair<GradedSpace, FormSeries> parse_series_file(const std::string &text);
/// Parses a "degrees:" or "d a -> b = c" line into `space`; false for any
/// other line. Throws InputError on a malformed one of these two kinds.
bool read_space_line(const std::string &line, GradedSpace &space);

/// The four Maurer-Cartan conditions; the bracket is truncated to the bounds
/// of the coefficients, which must agree.
MCReport mc_residual(const FormSeries &gamma, const GradedSpace &space);

} // namespace koszul

#endif // KOSZUL_FN_GEOMETRY_HPP
