#include "doctest.h"

#include "koszul/cobar.hpp"

#include <algorithm>

using namespace koszul;

namespace {

QuadraticPresentation associative() {
  return parse_spec("generator m arity 2 degree 0 symmetry regular\n"
                    "rel: 1 m(m(1,2),3) - 1 m(1,m(2,3))\n");
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

// Sum of the white counts k over the two vertices, read off the names.
int white_count(const Tree &t, const CobarGenerators &g) {
  if (t.is_leaf())
    return 0;
  int k = g.name(t.dec)[1] - '0';
  for (const auto &c : t.children)
    k += white_count(c, g);
  return k;
}

int vertices(const Tree &t) {
  if (t.is_leaf())
    return 0;
  int v = 1;
  for (const auto &c : t.children)
    v += vertices(c);
  return v;
}

InfinityGenerator gen(std::vector<int> I, std::vector<int> J, int k) { return {std::move(I), std::move(J), k}; }

} // namespace

TEST_CASE("delta squares to zero through arity 4") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    const Cobar c(builtin_presentation(name), 4);
    const auto r = delta_squared_check(c);
    CHECK(r.zero);
    CHECK_FALSE(r.failing.has_value());
    CHECK(r.generators == c.dual().dim(2) + c.dual().dim(3) + c.dual().dim(4));
  }
  const Cobar ass(associative(), 4);
  CHECK(delta_squared_check(ass).zero);
  const Cobar framed(builtin_presentation("BiNij"), 4, binij_frame);
  CHECK(delta_squared_check(framed).zero);
}

TEST_CASE("weight-two part of delta recovers the relations") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    const Cobar c(builtin_presentation(name), 3);
    const auto r = weight_two_projection(c);
    CHECK(r.equal);
    CHECK(r.image_dim == r.relation_dim);
    const QuadraticOperad op(builtin_presentation(name));
    CHECK(r.relation_dim == op.free_basis(3).size() - op.dim(3));
  }
  const Cobar framed(builtin_presentation("BiNij"), 3, binij_frame);
  CHECK(weight_two_projection(framed).equal);
}

TEST_CASE("binary generators are cycles and delta has degree one") {
  const Cobar c(builtin_presentation("Nij"), 4);
  const auto &g = c.generators();
  CHECK(g.count(2) == 3);
  for (int k = 0; k < g.count(2); ++k)
    CHECK(c.delta(g.id(2, k)).empty());
  for (int dec = 0; dec < g.count(); ++dec)
    for (const auto &[t, v] : c.delta(dec)) {
      CHECK(tree_degree(t, g) == g.degree(dec) + 1);
      CHECK(vertices(t) == 2);
    }
}

TEST_CASE("Lie1 arity-3 generator has the three Jacobi terms") {
  const Cobar c(builtin_presentation("Lie1"), 3);
  const auto &g = c.generators();
  REQUIRE(g.count(3) == 1);
  const auto &d = c.delta(g.id(3, 0));
  CHECK(d.size() == 3);
  for (const auto &[t, v] : d)
    CHECK(abs(v) == 1);
}

TEST_CASE("generator module action is functorial and delta is equivariant") {
  const Cobar c(builtin_presentation("BiNij"), 4, binij_frame);
  const auto &g = c.generators();
  for (int n : {3, 4}) {
    const auto perms = all_permutations(n);
    for (int k = 0; k < g.count(n); k += 5) {
      const Tree e = g.corolla(g.id(n, k));
      for (std::size_t a = 0; a < perms.size(); a += 5)
        for (std::size_t b = 1; b < perms.size(); b += 7) {
          CHECK(act(act(e, perms[a], g), perms[b], g) == act(e, perms[a].then(perms[b]), g));
        }
      for (std::size_t a = 0; a < perms.size(); a += 3) {
        const TreeCombination x = act(e, perms[a], g);
        CHECK(c.delta(x) == act(c.delta(TreeCombination{{e, Scalar(1)}}), perms[a], g));
      }
    }
  }
}

TEST_CASE("cobar generator counts and degrees") {
  const Cobar c(builtin_presentation("BiNij"), 4, binij_frame);
  const auto &g = c.generators();
  for (int n = 2; n <= 4; ++n) {
    long expected = 0;
    for (int j = 0; j < n; ++j)
      expected += binomial(n, j) * (j + 1);
    CHECK(g.count(n) == expected);
    const auto gens = binij_generators(n);
    REQUIRE(static_cast<long>(gens.size()) == expected);
    for (int r = 0; r < g.count(n); ++r) {
      CHECK(g.name(g.id(n, r)) == to_string(gens[r]));
      CHECK(g.degree(g.id(n, r)) == gens[r].degree());
      CHECK(gens[r].degree() == 1 - static_cast<int>(gens[r].J.size()));
    }
  }
  // Arity 2 splits as (|I|,|J|,k) = (2,0,0), (1,1,0), (1,1,1) with dims 1, 2, 2.
  std::map<std::tuple<int, int, int>, int> types;
  for (const auto &x : binij_generators(2))
    ++types[{static_cast<int>(x.I.size()), static_cast<int>(x.J.size()), x.k}];
  CHECK(types == std::map<std::tuple<int, int, int>, int>{{{2, 0, 0}, 1}, {{1, 1, 0}, 2}, {{1, 1, 1}, 2}});
  // Arity 3: C(3, j) labellings for each white count 0..j.
  std::map<std::pair<int, int>, int> by_jk;
  for (const auto &x : binij_generators(3))
    ++by_jk[{static_cast<int>(x.J.size()), x.k}];
  CHECK(binij_generators(3).size() == 16);
  for (const auto &[jk, count] : by_jk)
    CHECK(count == binomial(3, jk.first));
}

TEST_CASE("frame generators are relabellings of the standard ones") {
  const Cobar c(builtin_presentation("BiNij"), 4, binij_frame);
  const auto &g = c.generators();
  for (int n = 2; n <= 4; ++n) {
    const auto gens = binij_generators(n);
    for (std::size_t r = 0; r < gens.size(); ++r) {
      std::vector<int> word = gens[r].I;
      word.insert(word.end(), gens[r].J.begin(), gens[r].J.end());
      InfinityGenerator s{{}, {}, gens[r].k};
      for (int l = 1; l <= n; ++l)
        (l <= static_cast<int>(gens[r].I.size()) ? s.I : s.J).push_back(l);
      const int std_id = g.id(n, static_cast<int>(std::find(gens.begin(), gens.end(), s) - gens.begin()));
      std::vector<TreeCombination> in;
      for (int l : word)
        in.push_back({{Tree::leaf(l), Scalar(1)}});
      const auto x = compose_inputs({{g.corolla(std_id), Scalar(1)}}, in, g);
      CHECK(x == TreeCombination{{g.corolla(g.id(n, static_cast<int>(r))), Scalar(1)}});
    }
  }
}

TEST_CASE("generic delta splits the white count") {
  const Cobar c(builtin_presentation("BiNij"), 3, binij_frame);
  const auto &g = c.generators();
  const auto gens = binij_generators(3);
  for (std::size_t r = 0; r < gens.size(); ++r) {
    const auto &d = c.delta(g.id(3, static_cast<int>(r)));
    CHECK_FALSE(d.empty());
    bool white = false, black = false;
    for (const auto &[t, v] : d) {
      CHECK(white_count(t, g) == gens[r].k);
      white = white || g.name(t.dec)[1] != '0';
      black = black || g.name(t.dec)[1] == '0';
    }
    if (gens[r] == gen({1}, {2, 3}, 1)) {
      CHECK(white);
      CHECK(black);
    }
  }
}

TEST_CASE("closed-form delta agrees with the generic one through arity 4") {
  const Cobar c(builtin_presentation("BiNij"), 4, binij_frame);
  const auto r = compare_closed_form(c);
  CHECK(r.generators == 5 + 16 + 43);
  CHECK(r.agree());
  CHECK_FALSE(r.first_disagreement.has_value());
  for (int n = 2; n <= 4; ++n) {
    const auto gens = binij_generators(n);
    for (std::size_t r = 0; r < gens.size(); ++r)
      CHECK(to_tree(c, binij_delta_closed_form(gens[r])) == c.delta(c.generators().id(n, static_cast<int>(r))));
  }
}

TEST_CASE("literal closed-form sign disagrees from arity 4") {
  const Cobar c3(builtin_presentation("BiNij"), 3, binij_frame);
  CHECK(compare_closed_form(c3, true).agree());
  const Cobar c4(builtin_presentation("BiNij"), 4, binij_frame);
  const auto r = compare_closed_form(c4, true);
  CHECK_FALSE(r.agree());
  CHECK(r.agreeing == 48);
  CHECK(r.first_disagreement == std::optional<std::string>("m0[1|234]"));
}

TEST_CASE("closed-form terms") {
  CHECK(binij_delta_closed_form(gen({1, 2}, {}, 0)).empty());
  CHECK(binij_delta_closed_form(gen({1}, {2}, 0)).empty());
  CHECK(binij_delta_closed_form(gen({2}, {1}, 1)).empty());

  const auto lie = binij_delta_closed_form(gen({1, 2, 3}, {}, 0));
  REQUIRE(lie.size() == 3);
  for (const auto &t : lie) {
    CHECK(t.sign == lie.front().sign);
    CHECK(t.upper.I.size() == 2);
    CHECK_FALSE(t.into_antisymmetric());
  }

  const auto g = gen({1}, {2, 3}, 1);
  const auto terms = binij_delta_closed_form(g);
  CHECK(terms.size() == 8);
  int into_j = 0;
  for (const auto &t : terms) {
    CHECK(t.lower.degree() + t.upper.degree() == g.degree() + 1);
    CHECK(t.lower.k + t.upper.k == g.k);
    CHECK(t.lower.arity() + t.upper.arity() == g.arity() + 1);
    CHECK(std::abs(t.sign) == 1);
    into_j += t.into_antisymmetric();
  }
  CHECK(into_j == 4);

  for (int n = 2; n <= 5; ++n)
    for (const auto &x : binij_generators(n))
      for (const auto &t : binij_delta_closed_form(x))
        CHECK(t.lower.degree() + t.upper.degree() == x.degree() + 1);
}

TEST_CASE("generator validation") {
  CHECK_NOTHROW(validate(gen({1, 3}, {2}, 1)));
  CHECK_THROWS_AS(validate(gen({}, {1, 2}, 0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(gen({1}, {2}, 2)), std::invalid_argument);
  CHECK_THROWS_AS(validate(gen({1}, {2}, -1)), std::invalid_argument);
  CHECK_THROWS_AS(validate(gen({1}, {}, 0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(gen({1, 4}, {2}, 0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(gen({3, 1}, {2}, 0)), std::invalid_argument);
  CHECK_THROWS_AS(binij_delta_closed_form(gen({1, 1}, {}, 0)), std::invalid_argument);
  CHECK(to_string(gen({1, 3}, {2}, 1)) == "m1[13|2]");
}

TEST_CASE("delta table lists every generator") {
  const Cobar c(builtin_presentation("BiNij"), 3, binij_frame);
  const std::string t2 = delta_table(c, 2);
  CHECK(t2.find("m0[12|] [deg 1] -> 0") != std::string::npos);
  CHECK(std::count(t2.begin(), t2.end(), '\n') == 5);
  const std::string t3 = delta_table(c, 3);
  CHECK(std::count(t3.begin(), t3.end(), '\n') == 16);
  CHECK(t3 == delta_table(c, 3));
  CHECK_THROWS(Cobar(builtin_presentation("Nij"), 1));
}
