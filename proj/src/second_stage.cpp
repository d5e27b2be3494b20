#include "flipflop/second_stage.hpp"

#include <cmath>

namespace flipflop {

namespace {

// Win value for candidate 1 from the median's point of view: 1, 0, or 1/2
// on an exact utility tie.
double win_value_1(double u1, double u2) {
  if (u1 > u2) return 1.0;
  if (u1 < u2) return 0.0;
  return 0.5;
}

}  // namespace

NormalForm normal_form(const PlatformPair& pair, Median m,
                       const GameParams& params) {
  const double yhat1 = optimal_adjustment(m.value, pair.x1, params.a1());
  const double yhat2 = optimal_adjustment(m.value, pair.x2, params.a2());
  const double phi = params.phi();

  NormalForm nf{};
  for (int a1 = 0; a1 < 2; ++a1) {    // 0 = adjust, 1 = stay
    for (int a2 = 0; a2 < 2; ++a2) {
      const double y1 = a1 == 0 ? yhat1 : pair.x1;
      const double y2 = a2 == 0 ? yhat2 : pair.x2;
      const double u1 = voter_utility(m.value, pair.x1, y1, params.a1());
      const double u2 = voter_utility(m.value, pair.x2, y2, params.a2());
      const double w1 = win_value_1(u1, u2);
      nf.cell[a1][a2].p1 = w1 - (a1 == 0 && y1 != pair.x1 ? phi : 0.0);
      nf.cell[a1][a2].p2 = (1.0 - w1) - (a2 == 0 && y2 != pair.x2 ? phi : 0.0);
    }
  }
  return nf;
}

SubgameEquilibrium solve_subgame(const PlatformPair& pair, Median m,
                                 const GameParams& params) {
  const SubgameStatus status = classify(pair, m, params);
  const double phi = params.phi();
  const double yhat1 = optimal_adjustment(m.value, pair.x1, params.a1());
  const double yhat2 = optimal_adjustment(m.value, pair.x2, params.a2());

  SubgameEquilibrium eq{MixedAction{pair.x1, yhat1, 0.0},
                        MixedAction{pair.x2, yhat2, 0.0}, 0.0, 0.0, status};

  auto set_prob = [&](Candidate c, double p) {
    (c == Candidate::one ? eq.action1 : eq.action2).adjust_probability = p;
  };
  auto set_payoff = [&](Candidate c, double g) {
    (c == Candidate::one ? eq.expected_payoff1 : eq.expected_payoff2) = g;
  };

  switch (status.kind()) {
    case SubgameStatus::Kind::identical:
      set_prob(Candidate::one, 1.0);
      set_prob(Candidate::two, 1.0);
      eq.expected_payoff1 = eq.expected_payoff2 = 0.5 - phi;
      break;
    case SubgameStatus::Kind::secured:
      set_payoff(status.favorite(), 1.0);
      set_payoff(status.challenger(), 0.0);
      break;
    case SubgameStatus::Kind::open:
      set_prob(status.favorite(), 1.0 - phi);
      set_prob(status.challenger(), phi);
      set_payoff(status.favorite(), 1.0 - phi);
      set_payoff(status.challenger(), 0.0);
      break;
    case SubgameStatus::Kind::weak_favorite:
      // Both actions strictly dominant: the strong challenger adjusts and
      // wins, the weak favorite stays.
      set_prob(status.strong_challenger(), 1.0);
      set_payoff(status.strong_challenger(), 1.0 - phi);
      set_payoff(status.weak_favorite_id(), 0.0);
      break;
    case SubgameStatus::Kind::knife_edge:
      throw unresolved_tie_error(
          "solve_subgame: knife-edge configuration has no specified play");
  }
  return eq;
}

}  // namespace flipflop
