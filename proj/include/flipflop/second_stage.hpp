#pragma once

#include "flipflop/game_core.hpp"

namespace flipflop {

/// One candidate's (possibly mixed) second-stage action: stay at the
/// ex-ante platform or adjust to the optimal target with the given
/// probability.
struct MixedAction {
  double stay_platform;
  double adjust_target;
  double adjust_probability;
};

struct SubgameEquilibrium {
  MixedAction action1;
  MixedAction action2;
  double expected_payoff1;
  double expected_payoff2;
  SubgameStatus status;

  const MixedAction& action(Candidate c) const {
    return c == Candidate::one ? action1 : action2;
  }
  double expected_payoff(Candidate c) const {
    return c == Candidate::one ? expected_payoff1 : expected_payoff2;
  }
};

struct CellPayoff {
  double p1;
  double p2;
};

/// Reduced 2x2 normal form. Row player is candidate 1; action index 0 is
/// "adjust to the optimal target", index 1 is "stay".
struct NormalForm {
  CellPayoff cell[2][2];
};

/// Builds the 2x2 game from win/lose determination via voter utilities at
/// m (ties worth 1/2) minus phi for each adjusting candidate. Reproduces
/// the open, identical and weak-favorite tables.
NormalForm normal_form(const PlatformPair& pair, Median m,
                       const GameParams& params);

/// Unique subgame equilibrium for the revealed m. Knife-edge
/// configurations are refused (unresolved_tie_error); simulation resolves
/// them with a fair coin instead.
SubgameEquilibrium solve_subgame(const PlatformPair& pair, Median m,
                                 const GameParams& params);

}  // namespace flipflop
