#include "koszul/commands.hpp"

#include "koszul/checks.hpp"
#include "koszul/cobar.hpp"
#include "koszul/pbw.hpp"
#include "koszul/representation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace koszul {

namespace {

bool is_builtin(std::string base) {
  for (const auto &n : builtin_names())
    if (std::equal(n.begin(), n.end(), base.begin(), base.end(),
                   [](char a, char b) { return std::tolower(a) == std::tolower(b); }))
      return true;
  return false;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

QuadraticPresentation load_target(const std::string &target) {
  std::string base = target;
  bool dual = false;
  if (!base.empty() && base.back() == '!') {
    base.pop_back();
    dual = true;
  }
  if (is_builtin(base))
    return builtin_presentation(target);
  QuadraticPresentation p = parse_spec(read_file(base));
  return dual ? koszul_dual(p) : p;
}

CommandResult dims_command(const QuadraticPresentation &p, int nmax) {
  const QuadraticOperad op(p);
  std::ostringstream out;
  out << "operad: " << p.name << "\n";
  out << "n free dim\n";
  for (int n = 1; n <= nmax; ++n)
    out << n << " " << op.free_basis(n).size() << " " << op.dim(n) << "\n";
  const SeriesReport series = gk_series_check(p, nmax);
  out << "series check through x^" << nmax << ": " << (series.consistent ? "consistent" : "inconsistent") << "\n";
  if (p.name == "BiNij!" && nmax >= 3)
    out << "note: computed dim BiNij!(3) = " << op.dim(3)
        << ", while the published basis list gamma_1..gamma_13 of BiNij!(3) has 13 elements\n";
  return {series.consistent ? 0 : 1, out.str()};
}

CommandResult dual_command(const QuadraticPresentation &p) { return {0, write_spec(koszul_dual(p))}; }

CommandResult pbw_check_command(const QuadraticPresentation &p, const std::string &order, int nmax) {
  const DecorationRank rank = order.empty() ? default_order(p.module) : parse_order(p.module, order);
  const QuadraticOperad op(p, rank);
  const PBWCertificate cert = verify_pbw(op, nmax);
  return {cert.verified ? 0 : 1, to_text(cert, p.module)};
}

CommandResult cobar_check_command(const QuadraticPresentation &p, int nmax) {
  const Cobar c(p, nmax);
  const DeltaSquaredReport d2 = delta_squared_check(c);
  const WeightTwoReport w2 = weight_two_projection(c);
  std::ostringstream out;
  out << "operad: " << p.name << "\n";
  out << "delta^2 through arity " << d2.nmax << " on " << d2.generators << " generators: "
      << (d2.zero ? "zero" : "nonzero at " + d2.failing.value_or("?")) << "\n";
  out << "weight-two projection: span(R) dim " << w2.relation_dim << ", image dim " << w2.image_dim << ", "
      << (w2.equal ? "equal" : "different") << "\n";
  return {d2.zero && w2.equal ? 0 : 1, out.str()};
}

CommandResult binij_delta_command(int nmax) {
  const Cobar c(builtin_presentation("BiNij"), nmax, binij_frame);
  std::ostringstream out;
  for (int n = 2; n <= nmax; ++n)
    out << "arity " << n << ":\n" << delta_table(c, n);
  const ClosedFormReport fixed = compare_closed_form(c), literal = compare_closed_form(c, true);
  auto line = [&](const char *name, const ClosedFormReport &r) {
    out << name << ": " << r.agreeing << "/" << r.generators << " generators agree";
    if (r.first_disagreement)
      out << ", first disagreement " << *r.first_disagreement;
    out << "\n";
  };
  line("closed form", fixed);
  line("closed form with the literal exponent", literal);
  return {fixed.agree() ? 0 : 1, out.str()};
}

CommandResult fn_check_command(const std::optional<std::string> &series_text, unsigned seed) {
  if (!series_text) {
    const CheckReport r = fn_identity_check(seed);
    return {r.ok() ? 0 : 1, to_text(r)};
  }
  const auto [space, gamma] = parse_series_file(*series_text);
  const MCReport r = mc_residual(gamma, space);
  std::ostringstream out;
  auto flag = [&](const char *name, bool ok) { out << name << ": " << (ok ? "ok" : "fail") << "\n"; };
  flag("weight filtration", r.weight_filtration);
  flag("degree one", r.degree_one);
  flag("bracket zero", r.bracket_zero);
  flag("vanishes at origin", r.vanishes_at_origin);
  for (const auto &o : r.offending)
    out << "  " << o << "\n";
  out << "terms outside the bounds: " << r.truncated_terms << "\n";
  out << "verdict: " << (r.passed() ? "maurer-cartan" : "not maurer-cartan") << "\n";
  return {r.passed() ? 0 : 1, out.str()};
}

CommandResult rep_check_command(const std::optional<std::string> &family_text, unsigned seed, int nmax) {
  if (!family_text) {
    const CheckReport r = rep_equivalence_check(seed, 60, nmax);
    return {r.ok() ? 0 : 1, to_text(r)};
  }
  const RepFamily mu = parse_rep_family(*family_text);
  const RepresentationReport r = verify_representation(mu, nmax);
  const MCReport mc = mc_residual(rep_to_series(mu, {-1, -1, nmax}), mu.space);
  std::ostringstream out;
  out << "generators through arity " << nmax << ": " << r.generators << ", failing " << r.failing << "\n";
  if (r.first_failure) {
    out << "first failure: " << *r.first_failure << "\n";
    for (const auto &[key, v] : r.residuals.at(*r.first_failure)) {
      out << "  e";
      for (std::size_t l = 0; l + 1 < key.size(); ++l)
        out << (l ? "," : "") << key[l];
      out << " -> " << v.get_str() << " e" << key.back() << "\n";
    }
  }
  out << "[Gamma,Gamma] within arity " << nmax << ": " << (mc.bracket_zero ? "zero" : "nonzero") << "\n";
  out << "sides agree: " << (r.zero() == mc.bracket_zero ? "yes" : "no") << "\n";
  out << "verdict: " << (r.zero() ? "representation" : "not a representation") << "\n";
  return {r.zero() ? 0 : 1, out.str()};
}

} // namespace koszul
