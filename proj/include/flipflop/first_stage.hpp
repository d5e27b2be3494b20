#pragma once

#include <string>
#include <variant>
#include <vector>

#include "flipflop/game_core.hpp"
#include "flipflop/second_stage.hpp"

namespace flipflop {

/// Existence threshold Psi(a) = 1 / (1 + 4 sqrt(a(1+a))). A subgame-perfect
/// equilibrium exists iff phi exceeds the thresholds of both candidates.
double psi(double a);

struct Region {
  double lo;
  double hi;
  SubgameStatus status;
  double payoff1;
  double payoff2;
};

/// Ordered, disjoint partition of [0,1] into constant-status bands with the
/// per-band continuation payoffs. Adjacent same-status bands are merged.
using RegionPartition = std::vector<Region>;

RegionPartition region_partition(const PlatformPair& pair,
                                 const GameParams& params);

struct PayoffPair {
  double g1;
  double g2;
};

/// Ex-ante expected payoffs under uniform m: Lebesgue integral of the
/// piecewise-constant region payoffs, or (1/2-phi, 1/2-phi) for identical
/// platforms.
PayoffPair exante_payoff(const PlatformPair& pair, const GameParams& params);

/// Closed piecewise form of g1 for symmetric costs and x1 < x2. The region
/// integration path above is the general implementation; this is kept as an
/// independent algebraic route.
double closed_form_g1(const PlatformPair& pair, const GameParams& params);

/// Closed-form first-stage best response. Uses the opponent's alpha; exists
/// only when phi > Psi(a_responder).
double best_response(double opponent_platform, Candidate responder,
                     const GameParams& params);

struct Spne {
  double x1;
  double x2;
  double payoff1;
  double payoff2;
  Candidate left;  // which candidate sits on the left of the policy space
};

/// Family of near-equilibria (1/2 - eps, 1/2 + eps); the best unilateral
/// deviation gains at most loss_coefficient * eps.
struct EpsilonEquilibrium {
  double center;
  double loss_coefficient;
};

struct NoEquilibrium {
  std::string reason;
};

using FirstStageSolution = std::variant<Spne, EpsilonEquilibrium, NoEquilibrium>;

FirstStageSolution solve_first_stage(const GameParams& params);

}  // namespace flipflop
