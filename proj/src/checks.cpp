#include "koszul/checks.hpp"

#include "koszul/representation.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace koszul {

bool CheckReport::ok() const {
  for (const auto &l : lines)
    if (!l.informational && !l.ok())
      return false;
  return true;
}

std::string to_text(const CheckReport &r) {
  std::ostringstream out;
  for (const auto &l : r.lines) {
    out << l.name << ": " << l.passed << "/" << l.samples;
    if (l.informational)
      out << " (informational)";
    out << "\n";
    if (l.first_failure)
      out << "  first failure: " << *l.first_failure << "\n";
  }
  for (const auto &n : r.notes)
    out << n << "\n";
  return out.str();
}

namespace {

// Modulo draws keep the streams identical across standard libraries.
class Draw {
public:
  explicit Draw(unsigned seed) : rng_(seed) {}
  int range(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<unsigned>(hi - lo + 1)); }
  Scalar scalar() {
    int a = 0;
    while (a == 0)
      a = range(-4, 4);
    Scalar q(a, range(1, 3));
    q.canonicalize();
    return q;
  }

private:
  std::mt19937 rng_;
};

GradedSpace even_space(int n) { return GradedSpace{std::vector<int>(n, 0), {}}; }

VectorForm random_form(const GradedSpace &s, int weight, Draw &draw) {
  VectorForm f(s);
  const int n = s.dim();
  for (int r = draw.range(1, 3); r > 0; --r) {
    std::vector<int> t, g;
    for (int e = draw.range(0, 3); e > 0; --e)
      t.push_back(draw.range(1, n));
    for (int w = 0; w < weight; ++w)
      g.push_back(draw.range(1, n));
    f.add(t, g, draw.range(1, n), draw.scalar());
  }
  return f;
}

void record(CheckLine &line, bool ok, const std::function<std::string()> &describe) {
  ++line.samples;
  if (ok)
    ++line.passed;
  else if (!line.first_failure)
    line.first_failure = describe();
}

CheckLine line(std::string name, bool informational = false) {
  CheckLine l;
  l.name = std::move(name);
  l.informational = informational;
  return l;
}

std::string forms(std::initializer_list<std::pair<const char *, const VectorForm *>> items) {
  std::string s;
  for (const auto &[name, f] : items)
    s += std::string(s.empty() ? "" : "; ") + name + " = " + to_string(*f);
  return s;
}

} // namespace

CheckReport fn_identity_check(unsigned seed, int samples) {
  Draw draw(seed);
  CheckLine anti = line("graded antisymmetry"), jacobi = line("graded Jacobi identity"),
            lie = line("weight 0 gives the Lie bracket"), nj = line("N_J = c [J,J]"),
            mixed = line("N_{J,K} + N_{K,J} = 2c [J,K]"), literal = line("N_{J,K} + N_{K,J} = c [J,K] as stated", true);
  const Scalar &c = torsion_constant();
  for (int s = 0; s < samples; ++s) {
    const GradedSpace V = even_space(draw.range(1, 3));
    const int p = draw.range(0, 2), q = draw.range(0, 2), r = draw.range(0, 2);
    const VectorForm K = random_form(V, p, draw), L = random_form(V, q, draw), M = random_form(V, r, draw);
    const Scalar spq((p * q) % 2 ? 1 : -1);
    record(anti, fn_bracket(K, L) == spq * fn_bracket(L, K), [&] { return forms({{"K", &K}, {"L", &L}}); });
    const VectorForm lhs = fn_bracket(K, fn_bracket(L, M));
    const VectorForm rhs = fn_bracket(fn_bracket(K, L), M) + Scalar(-1) * spq * fn_bracket(L, fn_bracket(K, M));
    record(jacobi, lhs == rhs, [&] { return forms({{"K", &K}, {"L", &L}, {"M", &M}}); });

    const VectorForm X = random_form(V, 0, draw), Y = random_form(V, 0, draw);
    record(lie, fn_bracket(X, Y) == lie_bracket(X, Y), [&] { return forms({{"X", &X}, {"Y", &Y}}); });

    const GradedSpace W = even_space(draw.range(2, 3));
    const VectorForm J = random_form(W, 1, draw), H = random_form(W, 1, draw);
    record(nj, nijenhuis_torsion(J) == c * fn_bracket(J, J), [&] { return forms({{"J", &J}}); });
    const VectorForm sum = (mixed_torsion(J, H) + mixed_torsion(H, J)).to_form();
    const VectorForm jh = fn_bracket(J, H);
    record(mixed, sum == Scalar(2) * c * jh, [&] { return forms({{"J", &J}, {"K", &H}}); });
    record(literal, sum == c * jh, [&] { return forms({{"J", &J}, {"K", &H}}); });
  }
  CheckReport rep;
  rep.lines = {anti, jacobi, lie, nj, mixed, literal};
  rep.notes.push_back("torsion constant c = " + c.get_str());
  return rep;
}

namespace {

int map_degree(const GradedSpace &s, const std::vector<int> &a, const std::vector<int> &b) {
  int deg = 1 - static_cast<int>(b.size());
  for (int x : a)
    deg += s.degree(x);
  for (int x : b)
    deg += s.degree(x);
  return deg;
}

// One entry orbit with a random admissible index word, or nothing.
bool add_random_entry(RepFamily &mu, int nmax, Draw &draw) {
  const GradedSpace &s = mu.space;
  const int n = s.dim();
  const int arity = draw.range(2, nmax);
  const int i = draw.range(1, arity), j = arity - i;
  const int k = draw.range(0, j);
  std::vector<int> a(i), b(j);
  for (int &x : a)
    x = draw.range(1, n);
  for (int &x : b)
    x = draw.range(1, n);
  const int c = draw.range(1, n);
  if (s.degree(c) != map_degree(s, a, b) || !is_zero(mu.coefficient(k, a, b, c)))
    return false;
  try {
    mu.set(k, a, b, c, draw.scalar());
  } catch (const std::invalid_argument &) {
    return false;
  }
  return true;
}

} // namespace

CheckReport rep_equivalence_check(unsigned seed, int samples, int nmax) {
  Draw draw(seed);
  const Cobar cobar(builtin_presentation("BiNij"), nmax, binij_frame);
  const std::vector<std::vector<int>> patterns = {{0}, {0, 0}, {0, 1}, {1, 0}, {-1, 0}, {0, -1}, {1}};
  CheckLine iff = line("operadic residual vanishes iff [Gamma,Gamma] does"),
            half = line("operadic residual equals [Gamma,Gamma]/2"),
            degree0 = line("degree-0 solutions are weight-1 forms at hbar^0 and hbar^1"),
            prelie = line("pre-Lie table e1 o e1 = e2 passes both sides");
  int solutions = 0;
  for (int s = 0; s < samples; ++s) {
    RepFamily mu{GradedSpace{patterns[s % patterns.size()], {}}, {}};
    const int entries = draw.range(2, 3);
    for (int placed = 0, tries = 0; placed < entries && tries < 200; ++tries)
      placed += add_random_entry(mu, nmax, draw) ? 1 : 0;
    const RepresentationReport r = verify_representation(mu, cobar);
    const FormSeries gamma = rep_to_series(mu, {-1, -1, nmax});
    const MCReport mc = mc_residual(gamma, mu.space);
    record(iff, r.zero() == mc.bracket_zero, [&] { return to_text(mu); });
    FormSeries expected;
    for (const auto &[k, f] : mc.residual.coeffs)
      expected.coeffs.emplace(k, Scalar(1, 2) * truncated(f, {}));
    record(half, residual_series(r, mu.space) == expected, [&] { return to_text(mu); });
    if (r.zero())
      ++solutions;
    if (r.zero() && mu.space.even()) {
      bool pair = true;
      for (const auto &[k, f] : gamma.coeffs)
        if (!f.is_zero() && (k > 1 || f.weight() != 1))
          pair = false;
      record(degree0, pair, [&] { return to_text(mu); });
    }
  }
  RepFamily table{GradedSpace{{0, 0}, {}}, {}};
  table.set(0, {1}, {1}, 2, Scalar(1));
  const bool ops = verify_representation(table, cobar).zero();
  record(prelie, ops && mc_residual(rep_to_series(table), table.space).passed(), [&] { return to_text(table); });
  CheckReport rep;
  rep.lines = {iff, half, degree0, prelie};
  rep.notes.push_back("solutions among samples: " + std::to_string(solutions) + "/" + std::to_string(samples));
  return rep;
}

} // namespace koszul
