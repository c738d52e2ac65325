#ifndef KOSZUL_COMMANDS_HPP
#define KOSZUL_COMMANDS_HPP

#include "koszul/quadratic.hpp"

#include <optional>
#include <string>

namespace koszul {

/// Report text and exit status: 0 verified, 1 verdict failure.
struct CommandResult {
  int status = 0;
  std::string text;
};

/// Built-in name (optionally with a trailing '!') or the text of a spec file
/// (a trailing '!' on the path selects the dual). Throws InputError.
QuadraticPresentation load_target(const std::string &target);

/// Dimensions of F(M)(n) and P(n) for n = 1..nmax and the series check.
CommandResult dims_command(const QuadraticPresentation &p, int nmax);
/// The Koszul dual as spec text.
CommandResult dual_command(const QuadraticPresentation &p);
/// PBW certificate for the order "a<b<..." (empty: declaration order).
CommandResult pbw_check_command(const QuadraticPresentation &p, const std::string &order, int nmax);
/// delta^2 = 0 through nmax and the weight-two projection.
CommandResult cobar_check_command(const QuadraticPresentation &p, int nmax);
/// BiNij_infinity delta table, with the closed form checked in both readings.
CommandResult binij_delta_command(int nmax);
/// Maurer-Cartan report for a series file, or the randomized identities.
CommandResult fn_check_command(const std::optional<std::string> &series_text, unsigned seed);
/// Representation check for a family file, or the randomized equivalence.
CommandResult rep_check_command(const std::optional<std::string> &family_text, unsigned seed, int nmax);

} // namespace koszul

#endif // KOSZUL_COMMANDS_HPP
