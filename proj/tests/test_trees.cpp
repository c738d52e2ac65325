#include "doctest.h"

#include "koszul/errors.hpp"
#include "koszul/free_operad.hpp"
#include "koszul/trees.hpp"

#include <random>

using namespace koszul;

namespace {

// One regular generator g, one trivial generator h, one odd sign generator s.
SModuleSpec sample_module() {
  return SModuleSpec({{"g", 2, 0, Symmetry::regular}, {"h", 2, 0, Symmetry::trivial}, {"s", 2, 1, Symmetry::sign}});
}

Tree parse(const SModuleSpec &m, std::string_view text) {
  return parse_tree(text, [&](std::string_view n) { return m.find(n); });
}

Tree single(const TreeCombination &c) {
  REQUIRE(c.size() == 1);
  return c.begin()->first;
}

DecorationRank identity_rank(const SModuleSpec &m) {
  DecorationRank r;
  for (int d = 0; d < m.decoration_count(); ++d)
    r.rank.push_back(d);
  return r;
}

} // namespace

TEST_CASE("planar order") {
  Tree corolla = Tree::node(0, {Tree::leaf(3), Tree::leaf(1), Tree::leaf(2)});
  Tree p = planar_order(corolla);
  CHECK(p.children[0].label == 1);
  CHECK(p.children[1].label == 2);
  CHECK(p.children[2].label == 3);
  CHECK(planar_order(p) == p);

  Tree t1 = Tree::node(0, {Tree::node(0, {Tree::leaf(3), Tree::leaf(2)}), Tree::leaf(1)});
  Tree p1 = planar_order(t1);
  CHECK(p1.children[0].is_leaf());
  CHECK(p1.children[0].label == 1);

  Tree t2 = Tree::node(0, {Tree::leaf(2), Tree::node(0, {Tree::leaf(1), Tree::leaf(3)})});
  Tree p2 = planar_order(t2);
  CHECK_FALSE(p2.children[0].is_leaf());
  CHECK(p2.children[1].label == 2);

  CHECK_THROWS(planar_order(Tree::node(0, {Tree::leaf(1), Tree::node(0, {})})));
}

TEST_CASE("path words") {
  const auto m = sample_module();
  const int g = m.find("g"), h = m.find("h");
  auto w = path_words(parse(m, "g(1,2)"));
  CHECK(w == std::vector<std::vector<int>>{{g}, {g}});
  w = path_words(parse(m, "g(1,h(2,3))"));
  CHECK(w == std::vector<std::vector<int>>{{g}, {g, h}, {g, h}});
  // three-vertex left comb g(h(k(1,2),3),4) with k = g
  w = path_words(parse(m, "g(h(g(1,2),3),4)"));
  CHECK(w == std::vector<std::vector<int>>{{g, h, g}, {g, h, g}, {g, h}, {g}});
}

TEST_CASE("length-lex comparison") {
  const SModuleSpec dual({{"pl", 2, 0, Symmetry::regular}, {"y", 2, -1, Symmetry::sign}});
  DecorationRank order;
  order.rank.resize(3);
  order.rank[dual.find("pl_op")] = 0;
  order.rank[dual.find("y")] = 1;
  order.rank[dual.find("pl")] = 2;

  Tree a = parse(dual, "y(pl(1,2),3)");
  Tree b = parse(dual, "pl(y(1,2),3)");
  CHECK(tree_compare(a, a, order) == std::strong_ordering::equal);
  CHECK(tree_compare(a, b, order) == std::strong_ordering::less);
  CHECK(tree_compare(b, a, order) == std::strong_ordering::greater);

  // (g) vs (g,h) on the first word: shorter wins.
  const auto m = sample_module();
  auto r = identity_rank(m);
  CHECK(tree_compare(parse(m, "g(1,h(2,3))"), parse(m, "g(h(1,2),3)"), r) == std::strong_ordering::less);
  CHECK_THROWS(tree_compare(parse(m, "g(1,2)"), parse(m, "g(1,h(2,3))"), r));

  bool tie = false;
  Tree x = parse(m, "h(h(1,2),h(3,4))");
  Tree y = parse(m, "h(h(1,3),h(2,4))");
  CHECK(tree_compare(x, y, r, &tie) != std::strong_ordering::equal);
  CHECK(tie);
}

TEST_CASE("restricted trees") {
  const auto m = sample_module();
  Tree two = parse(m, "g(1,h(2,3))");
  REQUIRE(internal_edges(two).size() == 1);
  CHECK(restrict_edge(two, 1) == two);

  Tree comb = parse(m, "g(h(s(1,2),3),4)");
  auto edges = internal_edges(comb);
  REQUIRE(edges.size() == 2);
  // preorder: 0 = g, 1 = h, 2 = s
  CHECK(restrict_edge(comb, 2) == parse(m, "h(s(1,2),3)"));
  CHECK(restrict_edge(comb, 1) == parse(m, "g(h(1,2),3)"));

  Tree t = parse(m, "g(h(1,4),s(2,3))");
  CHECK(restrict_edge(t, 1) == parse(m, "g(h(1,3),2)"));
  CHECK(restrict_edge(t, 2) == parse(m, "g(1,s(2,3))"));
  CHECK_THROWS(restrict_edge(t, 0));
  CHECK_THROWS(restrict_edge(t, 3));
}

TEST_CASE("grafting") {
  const auto m = sample_module();
  Tree g = parse(m, "g(1,2)");
  CHECK(single(graft(g, 1, Tree::leaf(1), m)) == g);
  CHECK(single(graft(g, 1, g, m)) == parse(m, "g(g(1,2),3)"));
  CHECK(single(graft(g, 2, g, m)) == parse(m, "g(1,g(2,3))"));
  CHECK_THROWS(graft(g, 3, g, m));

  // Two odd vertices: moving one past the other costs a sign.
  Tree s = parse(m, "s(1,2)");
  Tree ss = parse(m, "s(1,s(2,3))");
  auto c = graft(ss, 3, s, m);
  CHECK(c == TreeCombination{{parse(m, "s(1,s(2,s(3,4)))"), 1}});
  auto c2 = graft(ss, 1, s, m);
  CHECK(c2 == TreeCombination{{parse(m, "s(s(1,2),s(3,4))"), -1}});
}

TEST_CASE("composing along all inputs") {
  const auto m = sample_module();
  const Tree s = parse(m, "s(1,2)");
  const TreeCombination top{{s, 1}};
  auto on = [](const Tree &t, int a, int b) { return Tree::node(t.dec, {Tree::leaf(a), Tree::leaf(b)}); };
  // Inputs on consecutive labels: iterated grafting.
  const auto std_inputs = compose_inputs(top, {{{s, 1}}, {{on(s, 3, 4), 1}}}, m);
  const auto grafted = graft(graft(top, 1, TreeCombination{{s, 1}}, m), 3, TreeCombination{{s, 1}}, m);
  CHECK(std_inputs == grafted);
  // Interleaved label sets: the same composite relabelled by 1 3 2 4.
  const auto shuffled = compose_inputs(top, {{{on(s, 1, 3), 1}}, {{on(s, 2, 4), 1}}}, m);
  CHECK(shuffled == act(grafted, Permutation{1, 3, 2, 4}, m));
  // A leaf input leaves its slot alone; inputs are linear.
  const auto h = on(parse(m, "h(1,2)"), 1, 3);
  CHECK(compose_inputs(top, {{{h, 1}}, {{Tree::leaf(2), 1}}}, m) == act(graft(top, 1, TreeCombination{{parse(m, "h(1,2)"), 1}}, m), Permutation{1, 3, 2}, m));
  const TreeCombination two_h{{h, Scalar(2, 3)}};
  const auto scaled = compose_inputs(top, {two_h, {{Tree::leaf(2), 1}}}, m);
  auto expected = compose_inputs(top, {{{h, 1}}, {{Tree::leaf(2), 1}}}, m);
  for (auto &[t, c] : expected)
    c *= Scalar(2, 3);
  CHECK(scaled == expected);
  CHECK(compose_inputs(top, {{}, {{Tree::leaf(2), 1}}}, m).empty());
}

TEST_CASE("action") {
  const auto m = sample_module();
  Tree g = parse(m, "g(1,2)");
  CHECK(single(act(g, Permutation::identity(2), m)) == g);
  CHECK(single(act(g, Permutation{2, 1}, m)) == parse(m, "g_op(1,2)"));
  Tree t = parse(m, "g(1,h(2,3))");
  Permutation cyc{2, 3, 1};
  CHECK(single(act(t, cyc, m)) == parse(m, "g_op(h(1,3),2)"));
  CHECK_THROWS(act(t, Permutation{2, 1}, m));
}

TEST_CASE("action is functorial and grafting associative") {
  const SModuleSpec m({{"g", 2, 0, Symmetry::regular}, {"s", 2, 1, Symmetry::sign}, {"h", 2, 1, Symmetry::trivial}});
  std::mt19937 rng(5);
  auto b3 = enumerate_basis(m, 3);
  auto b2 = enumerate_basis(m, 2);
  auto perms = all_permutations(3);
  for (const auto &t : b3)
    for (const auto &p : perms)
      for (const auto &q : perms) {
        TreeCombination lhs = act(act(t, p, m), q, m);
        TreeCombination rhs = act(t, p.then(q), m);
        CHECK(lhs == rhs);
      }
  std::uniform_int_distribution<int> pick3(0, static_cast<int>(b3.size()) - 1), pick2(0, 1);
  for (int k = 0; k < 200; ++k) {
    const Tree a = b3[pick3(rng)], b = b3[pick3(rng)];
    const Tree c = b2[pick2(rng) % b2.size()];
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        TreeCombination lhs = graft(graft(TreeCombination{{a, 1}}, i, TreeCombination{{b, 1}}, m), i + j - 1,
                                    TreeCombination{{c, 1}}, m);
        TreeCombination rhs = graft(TreeCombination{{a, 1}}, i, graft(TreeCombination{{b, 1}}, j, TreeCombination{{c, 1}}, m), m);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("order is compatible with grafting") {
  const auto m = sample_module();
  auto r = identity_rank(m);
  std::mt19937 rng(9);
  for (int n = 2; n <= 4; ++n) {
    auto basis = enumerate_basis(m, n);
    auto small = enumerate_basis(m, 2);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
    for (int k = 0; k < 150; ++k) {
      Tree a = basis[pick(rng)], b = basis[pick(rng)];
      bool tie = false;
      auto ab = tree_compare(a, b, r, &tie);
      if (tie || ab != std::strong_ordering::less)
        continue;
      const Tree &c = small[k % small.size()];
      for (int i = 1; i <= n; ++i) {
        Tree x = single(graft(a, i, c, m)), y = single(graft(b, i, c, m));
        CHECK(tree_compare(x, y, r) == std::strong_ordering::less);
      }
      for (int i = 1; i <= 2; ++i) {
        Tree x = single(graft(c, i, a, m)), y = single(graft(c, i, b, m));
        CHECK(tree_compare(x, y, r) == std::strong_ordering::less);
      }
    }
  }
}

TEST_CASE("serialization round trip") {
  const auto m = sample_module();
  for (int n = 1; n <= 4; ++n)
    for (const auto &t : enumerate_basis(m, n)) {
      CHECK(parse(m, serialize(t, m)) == t);
      CHECK(is_planar_normal(t));
    }
  CHECK(serialize(parse(m, "g( 1, h(2 ,3))"), m) == "g(1,h(2,3))");
  CHECK_THROWS_AS(parse(m, "g(1,q(2,3))"), InputError);
  CHECK_THROWS_AS(parse(m, "g(1,2"), InputError);
  CHECK_THROWS_AS(parse(m, "g(1,3)"), InputError);
}
