#include "koszul/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace koszul {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[v])
      throw std::invalid_argument("Permutation: images are not a bijection of 1..n");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto im = identity(n).images_;
  std::swap(im[a - 1], im[b - 1]);
  return Permutation(std::move(im));
}

Permutation Permutation::then(const Permutation &after) const {
  if (after.size() != size())
    throw std::invalid_argument("Permutation::then: size mismatch");
  std::vector<int> im(images_.size());
  for (int i = 1; i <= size(); ++i)
    im[i - 1] = after((*this)(i));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 1; i <= size(); ++i)
    im[(*this)(i) - 1] = i;
  return Permutation(std::move(im));
}

int Permutation::sign() const { return sorting_sign(images_); }

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i)
      return false;
  return true;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i)
      s += ' ';
    s += std::to_string(images_[i]);
  }
  return s + "]";
}

int sorting_sign(std::span<const int> seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j])
        ++inversions;
  return (inversions & 1) ? -1 : 1;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::vector<Permutation> shuffles(int p, int q) {
  // Choose the image set of the first block; the rest is forced.
  const int n = p + q;
  std::vector<Permutation> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + p, true);
  do {
    std::vector<int> im;
    im.reserve(n);
    for (int v = 1; v <= n; ++v)
      if (mask[v - 1])
        im.push_back(v);
    for (int v = 1; v <= n; ++v)
      if (!mask[v - 1])
        im.push_back(v);
    out.emplace_back(std::move(im));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

bool is_shuffle(const Permutation &s, int p) {
  for (int i = 1; i < s.size(); ++i) {
    if (i == p)
      continue;
    if (s(i) > s(i + 1))
      return false;
  }
  return true;
}

} // namespace koszul
