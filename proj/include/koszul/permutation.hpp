#ifndef KOSZUL_PERMUTATION_HPP
#define KOSZUL_PERMUTATION_HPP

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace koszul {

/// Bijection of {1..n}; image(i) is the value at i (1-based).
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  Permutation(std::initializer_list<int> images) : Permutation(std::vector<int>(images)) {}

  static Permutation identity(int n);
  /// The transposition exchanging a and b in S_n.
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  std::span<const int> images() const { return images_; }

  /// Apply *this first, then `after`: (p.then(q))(i) = q(p(i)).
  Permutation then(const Permutation &after) const;
  Permutation inverse() const;
  /// +1 or -1.
  int sign() const;
  bool is_identity() const;

  std::string str() const;

  auto operator<=>(const Permutation &) const = default;

private:
  std::vector<int> images_;
};

/// Sign of the permutation that sorts `seq` (distinct integers) ascending.
int sorting_sign(std::span<const int> seq);

/// All of S_n in lexicographic order of images.
std::vector<Permutation> all_permutations(int n);

/// (p,q)-shuffles: permutations of 1..p+q increasing on 1..p and p+1..p+q.
std::vector<Permutation> shuffles(int p, int q);

bool is_shuffle(const Permutation &s, int p);

} // namespace koszul

#endif // KOSZUL_PERMUTATION_HPP
