#include "doctest.h"

#include "koszul/errors.hpp"
#include "koszul/quadratic.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace koszul;

namespace {

int dense_rank(std::vector<std::vector<Scalar>> a) {
  int r = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(a[p], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      Scalar f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j)
        a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Rank of the S_3-orbit of the relations, by dense elimination.
int orbit_rank(const QuadraticPresentation &p) {
  FreeBasis b(p.module, 3);
  std::vector<std::vector<Scalar>> rows;
  for (const auto &r : p.relations)
    for (const auto &s : all_permutations(3)) {
      std::vector<Scalar> row(b.size());
      for (const auto &[t, c] : act(r, s, p.module))
        row[b.index_of(t)] += c;
      rows.push_back(row);
    }
  return dense_rank(rows);
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char *all_builtins[] = {"Com", "Lie1", "Perm", "PreLie", "Nij", "BiNij"};

} // namespace

TEST_CASE("relation spans in arity 3") {
  const auto nij = builtin_presentation("Nij");
  const auto binij = builtin_presentation("BiNij");
  CHECK(relation_ideal_span(QuadraticOperad(nij), 3).dim() == 7);
  CHECK(relation_ideal_span(QuadraticOperad(binij), 3).dim() == 16);
  CHECK(orbit_rank(nij) == 7);
  CHECK(orbit_rank(binij) == 16);
  auto free = nij;
  free.relations.clear();
  CHECK(relation_ideal_span(QuadraticOperad(free), 3).dim() == 0);
  CHECK(relation_ideal_span(QuadraticOperad(free), 4).dim() == 0);
}

TEST_CASE("quotient dimensions") {
  CHECK(QuadraticOperad(builtin_presentation("PreLie")).dim(3) == 9);
  CHECK(QuadraticOperad(builtin_presentation("Nij")).dim(3) == 20);
  CHECK(QuadraticOperad(builtin_presentation("Lie1")).dim(3) == 2);
  CHECK(QuadraticOperad(builtin_presentation("BiNij")).dim(3) == 59);
  const QuadraticOperad perm(builtin_presentation("Perm"));
  const QuadraticOperad com(builtin_presentation("Com"));
  for (int n = 1; n <= 5; ++n) {
    CHECK(perm.dim(n) == n);
    CHECK(com.dim(n) == 1);
  }
  const QuadraticOperad nij_dual(builtin_presentation("Nij!"));
  const QuadraticOperad binij_dual(builtin_presentation("BiNij!"));
  for (int n = 2; n <= 4; ++n) {
    CHECK(nij_dual.dim(n) == (1 << n) - 1);
    int expected = 0;
    for (int p = 0; p <= n - 1; ++p)
      expected += static_cast<int>(binomial(n, p).get_num().get_si()) * (p + 1);
    CHECK(binij_dual.dim(n) == expected);
  }
  CHECK(binij_dual.dim(2) == 5);
  CHECK(binij_dual.dim(3) == 16);
  CHECK(binij_dual.dim(4) == 43);
}

TEST_CASE("quotient representatives avoid the leading terms") {
  const QuadraticOperad op(builtin_presentation("Nij"));
  const auto &b = op.basis(3);
  CHECK(b.dim() + static_cast<int>(b.leading_indices().size()) == 27);
  for (int i : b.leading_indices())
    CHECK_FALSE(b.is_representative(i));
  // Every leading term is smaller than all the other terms of its reduction.
  const FreeBasis &fb = op.free_basis(3);
  for (int i : b.leading_indices()) {
    const SparseVector q = b.coordinates(SparseVector::unit(i));
    for (const auto &[k, c] : q.entries())
      CHECK(tree_compare(fb.tree(i), b.representative(k), op.order()) == std::strong_ordering::less);
  }
}

TEST_CASE("czech duals of the built-in generators") {
  const auto nij = builtin_presentation("Nij").module;
  const auto d = czech_dual(nij);
  CHECK(d.generators()[0].symmetry == Symmetry::regular);
  CHECK(d.generators()[1].symmetry == Symmetry::sign);
  const auto bd = czech_dual(builtin_presentation("BiNij").module);
  CHECK(bd.dim(2) == 5);
  CHECK(bd.generators()[2].symmetry == Symmetry::sign);
  CHECK(bd.generators()[2].degree == -1);
  for (const char *name : all_builtins) {
    const auto m = builtin_presentation(name).module;
    CHECK(czech_dual(czech_dual(m)) == m);
  }
}

TEST_CASE("pairing is nondegenerate and sign-equivariant") {
  for (const char *name : all_builtins) {
    CAPTURE(name);
    const auto m = builtin_presentation(name).module;
    const auto dual = czech_dual(m);
    const Matrix p = pairing_matrix(m);
    const FreeBasis b(m, 3), bd(dual, 3);
    CHECK(rank(p) == b.size());
    for (int i = 0; i < p.rows(); ++i)
      for (const auto &[j, v] : p.row(i).entries())
        CHECK(abs(v) == 1);
    auto pair = [&](const TreeCombination &xi, const TreeCombination &x) {
      Scalar s(0);
      for (const auto &[u, a] : xi)
        for (const auto &[t, c] : x)
          s += a * c * p.at(bd.index_of(u), b.index_of(t));
      return s;
    };
    for (int i = 0; i < bd.size(); ++i)
      for (int j = 0; j < b.size(); ++j)
        for (const auto &s : all_permutations(3)) {
          const Scalar lhs = pair(act(bd.tree(i), s, dual), act(b.tree(j), s, m));
          CHECK(lhs == s.sign() * p.at(i, j));
        }
  }
}

TEST_CASE("duality dimension count") {
  for (const char *name : all_builtins) {
    CAPTURE(name);
    const auto p = builtin_presentation(name);
    const int d2 = p.module.dim(2);
    const QuadraticOperad a(p), b(koszul_dual(p));
    CHECK(a.dim(3) + b.dim(3) == 3 * d2 * d2);
    CHECK(b.dim(3) == relation_ideal_span(a, 3).dim());
  }
  const auto bd = koszul_dual(builtin_presentation("BiNij"));
  CHECK(relation_ideal_span(QuadraticOperad(bd), 3).dim() == 59);
  CHECK(bd.name == "BiNij!");
}

TEST_CASE("double dual") {
  for (const char *name : all_builtins) {
    CAPTURE(name);
    const auto p = builtin_presentation(name);
    const auto dd = koszul_dual(koszul_dual(p));
    CHECK(dd.name == p.name);
    CHECK(dd.module == p.module);
    const QuadraticOperad a(p), b(dd);
    for (int n = 1; n <= 4; ++n)
      CHECK(a.dim(n) == b.dim(n));
    CHECK(relation_ideal_span(a, 3) == relation_ideal_span(b, 3));
  }
}

TEST_CASE("composition in the quotient") {
  const QuadraticOperad op(builtin_presentation("Nij!"));
  const auto &m = op.module();
  const SparseVector unit = SparseVector::unit(0);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto random_element = [&](int n) {
    std::vector<SparseVector::Entry> e;
    for (int i = 0; i < op.dim(n); ++i)
      e.emplace_back(i, Scalar(coef(rng)));
    return SparseVector(std::move(e));
  };
  for (int n = 2; n <= 3; ++n) {
    const SparseVector x = random_element(n);
    for (int i = 1; i <= n; ++i)
      CHECK(op.compose(n, x, i, 1, unit) == x);
    CHECK(op.compose(1, unit, 1, n, x) == x);
  }

  // The odd dual bracket is associative modulo the relations.
  const int y = m.find("y");
  const auto &b2 = op.basis(2);
  const SparseVector yv = b2.coordinates(TreeCombination{{Tree::node(y, {Tree::leaf(1), Tree::leaf(2)}), 1}});
  const SparseVector left = op.compose(2, yv, 1, 2, yv);
  const SparseVector right = op.compose(2, yv, 2, 2, yv);
  CHECK_FALSE(left.empty());
  CHECK((left == right || left == Scalar(-1) * right));

  for (int trial = 0; trial < 20; ++trial) {
    const SparseVector a = random_element(2), b = random_element(2), c = random_element(2);
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        CHECK(op.compose(3, op.compose(2, a, i, 2, b), i + j - 1, 2, c) ==
              op.compose(2, a, i, 3, op.compose(2, b, j, 2, c)));
    const SparseVector x3 = random_element(3);
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 3; ++j)
        CHECK(op.compose(4, op.compose(2, a, i, 3, x3), i + j - 1, 2, c) ==
              op.compose(2, a, i, 4, op.compose(3, x3, j, 2, c)));
  }

  const auto &b4 = op.basis(4);
  for (const auto &g : op.ideal(4).generators)
    CHECK(b4.coordinates(g).empty());
  CHECK_THROWS(op.compose(2, yv, 3, 2, yv));
}

TEST_CASE("generating series") {
  for (const char *name : all_builtins) {
    CAPTURE(name);
    CHECK(gk_series_check(builtin_presentation(name), 4).consistent);
  }
  const auto anti = parse_spec("generator p arity 2 degree 0 symmetry regular\n"
                               "rel: 1 p(p(1,2),3) + 1 p(1,p(2,3))\n");
  const auto r = gk_series_check(anti, 5);
  CHECK_FALSE(r.consistent);
  CHECK(r.dims == std::vector<int>{1, 2, 6, 0, 0});
  CHECK(r.composite[5] != 0);
  CHECK(gk_series_check(anti, 4).consistent);
}

TEST_CASE("spec files") {
  const auto nij = parse_spec(builtin_spec_text("nij"));
  CHECK(nij.name == "Nij");
  CHECK(nij.module.dim(2) == 3);
  CHECK(nij.relations.size() == 3);

  for (const char *name : all_builtins) {
    CAPTURE(name);
    std::string stem(name);
    for (auto &c : stem)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    CHECK(read_file(std::string(KOSZUL_SOURCE_DIR) + "/data/operads/" + stem + ".op") == builtin_spec_text(name));
    const auto p = builtin_presentation(name);
    const auto q = parse_spec(write_spec(p));
    CHECK(q.module == p.module);
    CHECK(q.relations == p.relations);
  }

  const auto empty = parse_spec("generator pl arity 2 degree 0 symmetry regular\n");
  CHECK(empty.relations.empty());
  CHECK(QuadraticOperad(empty).dim(3) == 12);

  auto error_at = [](const std::string &text) -> std::pair<int, int> {
    try {
      parse_spec(text);
    } catch (const InputError &e) {
      return {e.line(), e.column()};
    }
    return {-1, -1};
  };
  const std::string header = "generator pl arity 2 degree 0 symmetry regular\n";
  CHECK(error_at(header + "rel: 1 pl(1,2,3) - 1 pl(pl(1,2),3)\n") == std::pair{2, 8});
  CHECK(error_at(header + "rel: 1 pl(1,q(2,3))\n") == std::pair{2, 13});
  CHECK(error_at(header + "rel: 1 pl(pl(1,2),3) 1 pl(1,pl(2,3))\n") == std::pair{2, 22});
  CHECK(error_at(header + "rel: 1/0 pl(pl(1,2),3)\n") == std::pair{2, 6});
  CHECK(error_at("generator pl arity 3 degree 0 symmetry regular\n") == std::pair{1, 20});
  CHECK(error_at("generator pl arity 2 degree x symmetry regular\n") == std::pair{1, 29});
  CHECK(error_at("generator pl arity 2 degree 0 symmetry odd\n") == std::pair{1, 40});
  CHECK(error_at("# nothing\nbogus line\n") == std::pair{2, 1});
  CHECK(error_at(header + "rel: 1 pl(1,2)\n") == std::pair{2, 8});
  CHECK_THROWS_AS(builtin_presentation("Ass"), InputError);
  CHECK(builtin_presentation("nij!").name == "Nij!");
}

TEST_CASE("orders") {
  const auto m = builtin_presentation("Nij!").module;
  auto r = parse_order(m, "pl_op<y<pl");
  CHECK(order_string(m, r) == "pl_op<y<pl");
  CHECK(r(m.find("pl_op")) == 0);
  CHECK(r(m.find("pl")) == 2);
  CHECK_THROWS_AS(parse_order(m, "pl<y"), InputError);
  CHECK_THROWS_AS(parse_order(m, "pl<y<pl"), InputError);
  CHECK_THROWS_AS(parse_order(m, "pl<y<z"), InputError);
  CHECK(order_string(m, default_order(m)) == "pl<pl_op<y");
}
