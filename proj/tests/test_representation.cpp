#include "doctest.h"

#include "koszul/permutation.hpp"
#include "koszul/representation.hpp"

#include <random>

using namespace koszul;

namespace {

GradedSpace space(std::vector<int> degrees, std::map<std::pair<int, int>, Scalar> d = {}) {
  return GradedSpace{std::move(degrees), std::move(d)};
}

int map_degree(const GradedSpace &s, const std::vector<int> &a, const std::vector<int> &b) {
  int deg = 1 - static_cast<int>(b.size());
  for (int x : a)
    deg += s.degree(x);
  for (int x : b)
    deg += s.degree(x);
  return deg;
}

// Random well-formed family with up to `tries` entries per (k, i, j).
RepFamily random_family(const GradedSpace &s, int nmax, std::mt19937 &rng, int tries = 6) {
  RepFamily mu{s, {}};
  const int n = s.dim();
  std::uniform_int_distribution<int> idx(1, n), val(-2, 2);
  for (int i = 1; i <= nmax; ++i)
    for (int j = 0; i + j <= nmax; ++j)
      for (int k = 0; k <= j; ++k) {
        if (i + j < 2)
          continue;
        for (int r = 0; r < tries; ++r) {
          std::vector<int> a(i), b(j);
          for (int &x : a)
            x = idx(rng);
          for (int &x : b)
            x = idx(rng);
          const int c = idx(rng);
          if (s.degree(c) != map_degree(s, a, b))
            continue;
          try {
            mu.set(k, a, b, c, Scalar(val(rng)));
          } catch (const std::invalid_argument &) {
          }
        }
      }
  return mu;
}

// A random square-zero differential, or none.
std::map<std::pair<int, int>, Scalar> random_differential(const std::vector<int> &degrees, std::mt19937 &rng) {
  const int n = static_cast<int>(degrees.size());
  std::map<std::pair<int, int>, Scalar> d;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      if (degrees[b - 1] == degrees[a - 1] + 1 && rng() % 2)
        d[{a, b}] = Scalar(static_cast<int>(rng() % 3) + 1);
  for (const auto &[ab, x] : d)
    for (const auto &[cd, y] : d)
      if (ab.second == cd.first)
        return {};
  return d;
}

FormSeries half_bracket(const RepFamily &mu, int nmax) {
  const FormSeries g = rep_to_series(mu);
  FormSeries out;
  for (const auto &[k, f] : hbar_fn_bracket(g, g).coeffs)
    out.coeffs.emplace(k, Scalar(1, 2) * truncated(f, {-1, -1, nmax}));
  return out;
}

bool mc_bracket_zero(const RepFamily &mu, int nmax) {
  return mc_residual(rep_to_series(mu, {-1, -1, nmax}), mu.space).bracket_zero;
}

const Cobar &binij_cobar(int nmax) {
  static std::map<int, Cobar> cache;
  auto it = cache.find(nmax);
  if (it == cache.end())
    it = cache.try_emplace(nmax, builtin_presentation("BiNij"), nmax, binij_frame).first;
  return it->second;
}

const std::vector<std::vector<int>> graded_patterns = {{0, 1},  {-1, 0}, {0, -1}, {1, 0},     {1, 2},     {-1, 1},
                                                       {2, 1},  {0, 2},  {0, 0},  {1, 1, 0}, {0, -1, 1}, {0, 1, 1}};

} // namespace

TEST_CASE("dictionary round trip") {
  std::mt19937 rng(3);
  for (const auto &p : graded_patterns)
    for (int s = 0; s < 3; ++s) {
      const RepFamily mu = random_family(space(p, random_differential(p, rng)), 3, rng);
      const RepFamily back = series_to_rep(rep_to_series(mu), mu.space);
      CHECK(back.maps == mu.maps);
    }
}

TEST_CASE("single linear operation gives a linear weight-one form") {
  const GradedSpace s = space({0, 0});
  RepFamily mu{s, {}};
  mu.set(0, {1}, {2}, 1, Scalar(3));
  const FormSeries g = rep_to_series(mu);
  REQUIRE(g.coeffs.size() == 1);
  VectorForm expected(s);
  expected.add({1}, {2}, 1, Scalar(3));
  CHECK(g.coeffs.at(0) == expected);
  CHECK(g.coeffs.at(0).weight() == 1);
}

TEST_CASE("differential enters with a minus sign") {
  const GradedSpace s = space({0, 1}, {{{1, 2}, Scalar(5)}});
  const RepFamily mu{s, {}};
  const FormSeries g = rep_to_series(mu);
  REQUIRE(g.coeffs.count(0));
  CHECK(g.coeffs.at(0) == Scalar(-1) * induced_vector_field(s));
  CHECK(series_to_rep(g, s).maps.empty());
}

TEST_CASE("symmetry violations are rejected") {
  // e_1 odd: t^1 t^1 = 0, so a nonzero symmetric entry on (1, 1) is impossible.
  RepFamily odd{space({1, 0}), {}};
  CHECK_THROWS_AS(odd.set(0, {1, 1}, {}, 1, Scalar(1)), std::invalid_argument);
  CHECK(odd.maps.empty());
  // Even space: gamma^1 gamma^1 = 0.
  RepFamily even{space({0, 0}), {}};
  CHECK_THROWS_AS(even.set(0, {1}, {1, 1}, 1, Scalar(1)), std::invalid_argument);
  // An orbit stored without its images.
  RepFamily broken{space({0, 0}), {}};
  broken.maps[{0, 2, 1}][{1, 2, 1, 1}] = Scalar(1);
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  CHECK_THROWS_AS(verify_representation(broken, 3), std::invalid_argument);
  // Wrong degree.
  RepFamily bad{space({0, 0}), {}};
  bad.set(0, {1, 2}, {}, 1, Scalar(1));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("zero family has zero residual") {
  const RepFamily mu{space({0, 0}), {}};
  const RepresentationReport r = verify_representation(mu, binij_cobar(3));
  CHECK(r.zero());
  CHECK(r.generators > 0);
  CHECK(!r.first_failure);
}

TEST_CASE("pre-Lie algebra e1 o e1 = e2") {
  // Brute force: every associator of the table vanishes, so it is pre-Lie for
  // either side convention.
  auto prod = [](const std::vector<int> &u, const std::vector<int> &v) {
    return std::vector<int>{0, 0, u[1] * v[1]};
  };
  const std::vector<std::vector<int>> basis = {{0, 1, 0}, {0, 0, 1}};
  for (const auto &x : basis)
    for (const auto &y : basis)
      for (const auto &z : basis)
        CHECK(prod(prod(x, y), z) == prod(x, prod(y, z)));

  RepFamily mu{space({0, 0}), {}};
  mu.set(0, {1}, {1}, 2, Scalar(1));
  CHECK(verify_representation(mu, binij_cobar(3)).zero());
  CHECK(mc_residual(rep_to_series(mu), mu.space).passed());
}

TEST_CASE("perturbed solution fails on both sides") {
  RepFamily mu{space({0, 0}), {}};
  mu.set(0, {1}, {1}, 2, Scalar(1));
  mu.set(0, {2}, {1}, 1, Scalar(1));
  const RepresentationReport r = verify_representation(mu, binij_cobar(3));
  CHECK(!r.zero());
  REQUIRE(r.first_failure);
  CHECK(!mc_bracket_zero(mu, 3));
}

TEST_CASE("residual is half the bracket") {
  std::mt19937 rng(11);
  for (int nmax : {3, 4})
    for (const auto &p : graded_patterns)
      for (int s = 0; s < 2; ++s) {
        const RepFamily mu = random_family(space(p, random_differential(p, rng)), nmax, rng);
        const RepresentationReport r = verify_representation(mu, binij_cobar(nmax));
        INFO("nmax " << nmax << ", family\n" << to_text(mu));
        CHECK(residual_series(r, mu.space) == half_bracket(mu, nmax));
      }
}

TEST_CASE("operadic and Maurer-Cartan residuals vanish together") {
  // One or two unit entries over spaces of dimension at most two: a mix of
  // solutions and non-solutions.
  std::mt19937 rng(5);
  const std::vector<std::vector<int>> patterns = {{0}, {0, 0}, {0, 1}, {-1, 0}, {1, 0}, {0, -1}};
  int solutions = 0, others = 0;
  for (int sample = 0; sample < 120; ++sample) {
    const auto &p = patterns[sample % patterns.size()];
    RepFamily mu{space(p), {}};
    const int entries = 1 + static_cast<int>(rng() % 2);
    while (static_cast<int>(mu.maps.size()) < entries) {
      RepFamily one = random_family(mu.space, 3, rng, 1);
      if (one.maps.empty())
        continue;
      auto it = std::next(one.maps.begin(), static_cast<long>(rng() % one.maps.size()));
      for (const auto &[word, v] : it->second)
        mu.maps[it->first][word] = v;
    }
    const bool operadic = verify_representation(mu, binij_cobar(3)).zero();
    CHECK(operadic == mc_bracket_zero(mu, 3));
    ++(operadic ? solutions : others);
  }
  CHECK(solutions >= 10);
  CHECK(others >= 10);
}

TEST_CASE("residuals are equivariant") {
  // The residual of m_k[I|J] on e_x is the residual of the standard generator
  // on the inputs listed as I then J, up to the Koszul sign of the reordering.
  std::mt19937 rng(8);
  const GradedSpace s = space({0, 1});
  const RepFamily mu = random_family(s, 3, rng);
  const RepresentationReport r = verify_representation(mu, binij_cobar(3));
  REQUIRE(!r.zero());
  int compared = 0;
  for (int n = 2; n <= 3; ++n)
    for (const auto &g : binij_generators(n)) {
      InfinityGenerator st = g;
      for (std::size_t l = 0; l < g.I.size(); ++l)
        st.I[l] = static_cast<int>(l) + 1;
      for (std::size_t l = 0; l < g.J.size(); ++l)
        st.J[l] = static_cast<int>(g.I.size() + l) + 1;
      std::vector<int> order = g.I;
      order.insert(order.end(), g.J.begin(), g.J.end());
      auto find = [&](const InfinityGenerator &h) {
        auto it = r.residuals.find(to_string(h));
        return it == r.residuals.end() ? std::map<std::vector<int>, Scalar>{} : it->second;
      };
      const auto mine = find(g), standard = find(st);
      std::map<std::vector<int>, Scalar> mapped;
      for (const auto &[key, v] : mine) {
        std::vector<int> x(key.begin(), key.end() - 1), y;
        int sign = 1;
        for (std::size_t u = 0; u < order.size(); ++u)
          for (std::size_t w = u + 1; w < order.size(); ++w)
            if (order[u] > order[w] && s.degree(x[order[u] - 1]) % 2 && s.degree(x[order[w] - 1]) % 2)
              sign = -sign;
        for (int o : order)
          y.push_back(x[o - 1]);
        y.push_back(key.back());
        mapped[y] = sign * v;
      }
      CHECK(mapped == standard);
      ++compared;
    }
  CHECK(compared == static_cast<int>(binij_generators(2).size() + binij_generators(3).size()));
}

TEST_CASE("graded and dg examples") {
  SUBCASE("square-zero differential alone") {
    const RepFamily mu{space({0, 1}, {{{1, 2}, Scalar(2)}}), {}};
    CHECK(verify_representation(mu, binij_cobar(3)).zero());
    CHECK(mc_residual(rep_to_series(mu, {-1, -1, 3}), mu.space).bracket_zero);
  }
  SUBCASE("bracket compatible with the differential") {
    // d e_1 = e_2 together with the degree-one bracket mu_{2,0}(e_1, e_1) = e_2.
    RepFamily mu{space({0, 1}, {{{1, 2}, Scalar(1)}}), {}};
    mu.set(0, {1, 1}, {}, 2, Scalar(1));
    const RepresentationReport r = verify_representation(mu, binij_cobar(3));
    CHECK(r.zero() == mc_bracket_zero(mu, 3));
    CHECK(residual_series(r, mu.space) == half_bracket(mu, 3));
  }
  SUBCASE("cobar without the BiNij frame is rejected") {
    const Cobar plain(builtin_presentation("BiNij"), 3);
    const RepFamily mu{space({0, 0}), {}};
    CHECK_THROWS_AS(verify_representation(mu, plain), std::invalid_argument);
  }
}
