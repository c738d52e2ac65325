#ifndef KOSZUL_COBAR_HPP
#define KOSZUL_COBAR_HPP

#include "koszul/quadratic.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// A basis of P^!(n) for each arity n >= 2, as quotient coordinates. Arities
/// left out use the quotient representatives.
struct DualFrame {
  std::map<int, std::vector<SparseVector>> elements;
  std::map<int, std::vector<std::string>> names;
};

/// Generators of the cobar construction on the Koszul dual cooperad of P.
/// E(n) is the linear dual of P^!(n) twisted by the sign representation; the
/// generator dual to a homogeneous basis element b sits in degree -|b| - n + 2.
class CobarGenerators final : public DecorationModule {
public:
  CobarGenerators(const QuadraticOperad &dual, int nmax, const DualFrame &frame = {});

  int arity(int dec) const override { return gens_.at(dec).arity; }
  int degree(int dec) const override { return gens_.at(dec).degree; }
  std::string name(int dec) const override { return gens_.at(dec).name; }
  std::vector<std::pair<int, Scalar>> permute_inputs(int dec, const Permutation &pi) const override;

  int count() const { return static_cast<int>(gens_.size()); }
  int count(int n) const;
  int id(int n, int basis_index) const;
  int basis_index(int dec) const { return gens_.at(dec).index; }
  /// The P^! basis element the generator is dual to, in F(M^v)(n).
  TreeCombination dual_element(int dec) const;
  /// Coordinates of an element of F(M^v)(n) in the frame of P^!(n).
  SparseVector frame_coordinates(int n, const TreeCombination &x) const;
  Tree corolla(int dec) const;

private:
  struct Gen {
    int arity;
    int index;
    int degree;
    std::string name;
  };
  const QuadraticOperad *dual_;
  int nmax_;
  std::vector<Gen> gens_;
  std::map<int, int> first_;
  std::map<int, std::vector<SparseVector>> elements_; // quotient coordinates
  std::map<int, Matrix> inverse_;                     // quotient -> frame coordinates
  // (arity, images of pi) -> frame coordinates of b_r . pi
  mutable std::map<std::vector<int>, std::vector<SparseVector>> action_;
};

/// Omega(P^<) = (F(E), delta) through arity nmax.
class Cobar {
public:
  using FrameBuilder = std::function<DualFrame(const QuadraticOperad &dual, int nmax)>;

  /// Without a frame builder the generators are dual to the quotient representatives.
  Cobar(const QuadraticPresentation &p, int nmax, const FrameBuilder &frame = {});
  Cobar(const Cobar &) = delete;
  Cobar &operator=(const Cobar &) = delete;

  const QuadraticPresentation &presentation() const { return p_; }
  const QuadraticOperad &dual() const { return *dual_; }
  const CobarGenerators &generators() const { return *gens_; }
  int nmax() const { return nmax_; }

  /// delta of a generator, a combination of two-vertex trees.
  const TreeCombination &delta(int dec) const { return delta_.at(dec); }
  /// Extension of delta to trees of generators as a degree-one derivation.
  TreeCombination delta(const TreeCombination &c) const;
  TreeCombination delta_tree(const Tree &t) const;

  /// Trees with binary generators only, rewritten in F(M) under E(2) = M.
  TreeCombination to_presentation(const TreeCombination &c) const;

private:
  void build_delta(int n);

  QuadraticPresentation p_;
  int nmax_;
  std::unique_ptr<QuadraticOperad> dual_;
  std::unique_ptr<CobarGenerators> gens_;
  std::vector<TreeCombination> delta_;
};

struct DeltaSquaredReport {
  int nmax = 0;
  int generators = 0;
  bool zero = true;
  std::optional<std::string> failing; // first generator with delta^2 != 0
};

DeltaSquaredReport delta_squared_check(const Cobar &c);

/// delta(E(3)) against span(R) inside F(M)(3).
struct WeightTwoReport {
  int relation_dim = 0;
  int image_dim = 0;
  bool equal = false;
};

WeightTwoReport weight_two_projection(const Cobar &c);

/// One line per generator of arity n: "name -> delta".
std::string delta_table(const Cobar &c, int n);

/// Generator of BiNij_infinity: symmetric in I, antisymmetric in J, with k of
/// the |J| pre-Lie factors white. Labels are a partition of 1..n.
struct InfinityGenerator {
  std::vector<int> I; // ascending, nonempty
  std::vector<int> J; // ascending
  int k = 0;

  int arity() const { return static_cast<int>(I.size() + J.size()); }
  int degree() const { return 1 - static_cast<int>(J.size()); }
  bool operator==(const InfinityGenerator &) const = default;
};

/// Throws std::invalid_argument unless I, J partition 1..n, |I| >= 1, n >= 2
/// and 0 <= k <= |J|.
void validate(const InfinityGenerator &g);
/// "m<k>[I|J]", e.g. m1[13|2].
std::string to_string(const InfinityGenerator &g);
/// All generators of arity n, ordered by |J|, then I, then k.
std::vector<InfinityGenerator> binij_generators(int n);

/// The basis of BiNij^!(n) dual to binij_generators(n): a y-comb on I followed
/// by |J| - k black and then k white pre-Lie factors taking the labels of J.
DualFrame binij_frame(const QuadraticOperad &binij_dual, int nmax);

/// One summand of the closed-form differential: `upper` grafted into the input
/// of `lower` labelled 0. A corolla takes its inputs in the listed order, I
/// first, as the corresponding relabelling of m[1..p|p+1..n].
struct DifferentialTerm {
  InfinityGenerator lower;
  InfinityGenerator upper;
  int sign = 1;
  bool into_antisymmetric() const;
};

/// delta(g) as a sum over splittings of I and J and k = k1 + k2. With
/// `literal` the antisymmetric-slot sum uses the bare exponent, without the
/// |J_lower| |J_upper| correction.
std::vector<DifferentialTerm> binij_delta_closed_form(const InfinityGenerator &g, bool literal = false);

/// The terms as an element of F(E); `c` must carry binij_frame.
TreeCombination to_tree(const Cobar &c, const std::vector<DifferentialTerm> &terms);

struct ClosedFormReport {
  int generators = 0;
  int agreeing = 0;
  std::optional<std::string> first_disagreement;
  bool agree() const { return agreeing == generators; }
};

/// Compares the closed form with the generic delta on every generator of c.
ClosedFormReport compare_closed_form(const Cobar &c, bool literal = false);

} // namespace koszul

#endif // KOSZUL_COBAR_HPP
