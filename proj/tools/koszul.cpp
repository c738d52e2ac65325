#include "koszul/commands.hpp"
#include "koszul/errors.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace koszul;

namespace {

struct Options {
  std::string target;
  std::string spec;
  std::string order;
  std::string out;
  int nmax = 3;
  unsigned seed = 0;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// The positional target, or --spec when no positional was given.
std::string operad_target(const Options &o) {
  if (!o.target.empty())
    return o.target;
  if (!o.spec.empty())
    return o.spec;
  throw InputError("this verb needs a built-in operad name or a spec file");
}

std::optional<std::string> file_target(const Options &o) {
  const std::string &path = o.target.empty() ? o.spec : o.target;
  if (path.empty())
    return std::nullopt;
  return read_file(path);
}

CommandResult run(const std::string &verb, const Options &o) {
  if (o.nmax < 1)
    throw InputError("--nmax must be positive");
  if (verb == "dims")
    return dims_command(load_target(operad_target(o)), o.nmax);
  if (verb == "dual")
    return dual_command(load_target(operad_target(o)));
  if (verb == "pbw-check")
    return pbw_check_command(load_target(operad_target(o)), o.order, o.nmax);
  if (verb == "cobar-check")
    return cobar_check_command(load_target(operad_target(o)), o.nmax);
  if (verb == "binij-delta")
    return binij_delta_command(o.nmax);
  if (verb == "fn-check")
    return fn_check_command(file_target(o), o.seed);
  return rep_check_command(file_target(o), o.seed, o.nmax);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quadratic operads, Koszul duality and Froehlicher-Nijenhuis checks"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"dims", "dimension table of an operad"},
      {"dual", "Koszul dual presentation"},
      {"pbw-check", "PBW certificate for a decoration order"},
      {"cobar-check", "delta^2 = 0 and weight-two projection of the cobar construction"},
      {"binij-delta", "BiNij_infinity differential and its closed form"},
      {"fn-check", "Maurer-Cartan report for a series file, or randomized bracket identities"},
      {"rep-check", "representation check for a family file, or the randomized equivalence"}};
  for (const auto &[name, help] : verbs) {
    CLI::App *sub = app.add_subcommand(name, help);
    if (name != "binij-delta")
      sub->add_option("target", o.target, "built-in operad name or file");
    sub->add_option("--nmax", o.nmax, "maximal arity")->capture_default_str();
    sub->add_option("--order", o.order, "decoration order a<b<...");
    sub->add_option("--seed", o.seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--out", o.out, "write the report to this file");
    sub->add_option("--spec", o.spec, "spec or input file");
  }
  if (argc > 1 && argv[1][0] != '-' &&
      std::none_of(verbs.begin(), verbs.end(), [&](const auto &v) { return v.first == argv[1]; })) {
    std::cerr << "error: unknown verb '" << argv[1] << "'\n";
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    const CommandResult r = run(verb, o);
    if (o.out.empty()) {
      std::cout << r.text;
    } else {
      std::ofstream f(o.out);
      if (!(f << r.text)) {
        std::cerr << "error: cannot write '" << o.out << "'\n";
        return 2;
      }
    }
    return r.status;
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const TruncationOverflow &e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
