#include "koszul/pbw.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>

namespace koszul {

RewritingSystem orient_relations(const QuadraticOperad &op) {
  RewritingSystem sys;
  const ArityBasis &b = op.basis(3);
  const FreeBasis &fb = op.free_basis(3);
  for (int i : b.leading_indices()) {
    RewriteRule r{fb.tree(i), fb.to_combination(b.lift(b.coordinates(SparseVector::unit(i))))};
    for (const auto &[t, c] : r.rhs) {
      bool tie = false;
      const auto cmp = tree_compare(r.lhs, t, op.order(), &tie);
      sys.tiebreak_used = sys.tiebreak_used || tie;
      if (cmp != std::strong_ordering::less || tie) {
        if (sys.oriented)
          sys.offending = r;
        sys.oriented = false;
      }
    }
    sys.rules.push_back(std::move(r));
  }
  return sys;
}

std::vector<int> candidate_monomials(const QuadraticOperad &op, int n) {
  const FreeBasis &fb = op.free_basis(n);
  if (n < 3) {
    std::vector<int> all(fb.size());
    for (int i = 0; i < fb.size(); ++i)
      all[i] = i;
    return all;
  }
  const ArityBasis &b3 = op.basis(3);
  const FreeBasis &fb3 = op.free_basis(3);
  std::vector<int> out;
  for (int i = 0; i < fb.size(); ++i) {
    const Tree &t = fb.tree(i);
    bool ok = true;
    for (int e : internal_edges(t)) {
      const int j = fb3.index_of(restrict_edge(t, e));
      if (j < 0 || !b3.is_representative(j)) {
        ok = false;
        break;
      }
    }
    if (ok)
      out.push_back(i);
  }
  return out;
}

namespace {

struct Substituter {
  const SModuleSpec &m;
  int edge;
  const TreeCombination &beta;
  std::map<const Tree *, int> id;
  const Tree *upper = nullptr;

  void number(const Tree &t, int &next, const Tree *parent, const Tree **lower) {
    if (t.is_leaf())
      return;
    const int me = next++;
    id[&t] = me;
    if (me == edge) {
      upper = &t;
      *lower = parent;
    }
    for (const auto &c : t.children)
      number(c, next, &t, lower);
  }

  bool contains(const Tree &t, const Tree *target) const {
    if (&t == target)
      return true;
    return std::any_of(t.children.begin(), t.children.end(), [&](const Tree &c) { return contains(c, target); });
  }

  TreeCombination run(const Tree &t, const Tree *lower) const {
    std::vector<TreeCombination> inputs;
    if (&t == lower) {
      std::vector<const Tree *> pieces;
      for (const auto &c : t.children) {
        if (&c == upper)
          for (const auto &g : c.children)
            pieces.push_back(&g);
        else
          pieces.push_back(&c);
      }
      std::stable_sort(pieces.begin(), pieces.end(),
                       [](const Tree *a, const Tree *b) { return a->min_label() < b->min_label(); });
      for (const Tree *p : pieces)
        inputs.push_back({{*p, Scalar(1)}});
      return compose_inputs(beta, inputs, m);
    }
    Tree corolla = Tree::node(t.dec, {});
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      const Tree &c = t.children[i];
      corolla.children.push_back(Tree::leaf(static_cast<int>(i) + 1));
      inputs.push_back(contains(c, lower) ? run(c, lower) : TreeCombination{{c, Scalar(1)}});
    }
    return compose_inputs({{corolla, Scalar(1)}}, inputs, m);
  }
};

} // namespace

TreeCombination substitute_edge(const Tree &t, int edge, const TreeCombination &beta, const SModuleSpec &m) {
  Substituter s{m, edge, beta, {}, nullptr};
  int next = 0;
  const Tree *lower = nullptr;
  s.number(t, next, nullptr, &lower);
  if (edge < 1 || s.upper == nullptr)
    throw std::invalid_argument("substitute_edge: not an internal edge");
  return s.run(t, lower);
}

TreeCombination rewrite_to_candidates(const QuadraticOperad &op, const TreeCombination &c) {
  const RewritingSystem sys = orient_relations(op);
  std::map<Tree, const RewriteRule *> rules;
  for (const auto &r : sys.rules)
    rules.emplace(r.lhs, &r);
  const SModuleSpec &m = op.module();
  TreeCombination work = c, done;
  long steps = 0;
  while (!work.empty()) {
    if (++steps > 10'000'000)
      throw std::runtime_error("rewrite_to_candidates: no termination");
    auto it = work.begin();
    const Tree t = it->first;
    const Scalar a = it->second;
    work.erase(it);
    const RewriteRule *rule = nullptr;
    int edge = 0;
    for (int e : internal_edges(t)) {
      auto r = rules.find(restrict_edge(t, e));
      if (r != rules.end()) {
        rule = r->second;
        edge = e;
        break;
      }
    }
    if (rule == nullptr) {
      koszul::accumulate(done, t, a);
      continue;
    }
    const TreeCombination self = substitute_edge(t, edge, TreeCombination{{rule->lhs, Scalar(1)}}, m);
    const Scalar k = self.at(t);
    koszul::accumulate(work, substitute_edge(t, edge, rule->rhs, m), a / k);
  }
  return done;
}

PBWCertificate verify_pbw(const QuadraticOperad &op, int nmax) {
  PBWCertificate cert;
  const SModuleSpec &m = op.module();
  cert.presentation = op.presentation().name;
  cert.order = order_string(m, op.order());
  cert.nmax = nmax;
  const RewritingSystem sys = orient_relations(op);
  cert.rules = static_cast<int>(sys.rules.size());
  cert.oriented = sys.oriented;
  cert.tiebreak_used = sys.tiebreak_used;
  cert.verified = sys.oriented;
  if (!sys.oriented) {
    cert.witness_kind = "rewrite does not go upward";
    cert.witness_arity = 3;
    cert.witness = sys.offending->lhs;
  }
  for (int n = 2; n <= nmax; ++n) {
    const ArityBasis &b = op.basis(n);
    cert.tiebreak_used = cert.tiebreak_used || b.used_tiebreak();
    const std::vector<int> cands = candidate_monomials(op, n);
    const auto reps = b.representative_indices();
    PBWArityReport r;
    r.arity = n;
    r.candidates = static_cast<int>(cands.size());
    r.quotient_dim = b.dim();
    r.condition1 = sys.oriented;
    r.condition2 = std::equal(cands.begin(), cands.end(), reps.begin(), reps.end());
    if (!r.condition2 && cert.verified) {
      cert.verified = false;
      cert.witness_arity = n;
      std::vector<int> extra, missing;
      std::set_difference(cands.begin(), cands.end(), reps.begin(), reps.end(), std::back_inserter(extra));
      std::set_difference(reps.begin(), reps.end(), cands.begin(), cands.end(), std::back_inserter(missing));
      if (!extra.empty()) {
        cert.witness_kind = "restriction-closed tree is a leading term";
        cert.witness = op.free_basis(n).tree(extra.front());
      } else {
        cert.witness_kind = "basis tree has a restriction that is a leading term";
        cert.witness = op.free_basis(n).tree(missing.front());
      }
    }
    cert.arities.push_back(r);
  }
  return cert;
}

std::string to_text(const PBWCertificate &c, const SModuleSpec &m) {
  std::ostringstream out;
  out << "presentation: " << c.presentation << "\n";
  out << "order: " << c.order << "\n";
  out << "nmax: " << c.nmax << "\n";
  out << "rewrite rules: " << c.rules << (c.oriented ? " (all upward)" : " (not oriented)") << "\n";
  for (const auto &a : c.arities)
    out << "arity " << a.arity << ": candidates " << a.candidates << ", quotient " << a.quotient_dim
        << ", condition1 " << (a.condition1 ? "ok" : "fail") << ", condition2 " << (a.condition2 ? "ok" : "fail")
        << "\n";
  out << "tiebreak: " << (c.tiebreak_used ? "used" : "not used") << "\n";
  out << "verdict: " << (c.verified ? "pbw_verified" : "failed") << "\n";
  if (c.verified) {
    std::string dual = c.presentation;
    if (!dual.empty())
      dual = dual.back() == '!' ? dual.substr(0, dual.size() - 1) : dual + "!";
    out << "koszul: " << c.presentation << (dual.empty() ? "" : ", " + dual) << "\n";
  } else if (c.witness) {
    out << "witness: arity " << c.witness_arity << ", " << c.witness_kind << ": " << serialize(*c.witness, m)
        << "\n";
  }
  return out.str();
}

} // namespace koszul
