#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flipflop/first_stage.hpp"
#include "flipflop/game_core.hpp"
#include "flipflop/second_stage.hpp"

namespace flipflop {

enum class KnifeEdgePolicy { fair_coin, reject };

struct SimulationConfig {
  std::uint64_t draws = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  KnifeEdgePolicy knife_edge_policy = KnifeEdgePolicy::fair_coin;
};

/// Monte Carlo aggregates. Raw counters are exposed alongside the derived
/// frequencies so that callers can form their own error bands. Identical
/// (seed, draws) yield bit-identical stats for any worker count: draw k has
/// its own counter-based substream and partial sums are combined in fixed
/// block order.
struct SimulationStats {
  // echo of the configuration that produced the stats
  double x1 = 0.0, x2 = 0.0;
  double a1 = 0.0, a2 = 0.0, phi = 0.0;
  std::uint64_t draws = 0;
  std::uint64_t seed = 0;

  double payoff_mean1 = 0.0, payoff_mean2 = 0.0;
  double payoff_std_error1 = 0.0, payoff_std_error2 = 0.0;

  double flip_frequency1 = 0.0, flip_frequency2 = 0.0;
  double flip_frequency_given_open_favorite = 0.0;
  double flip_frequency_given_open_challenger = 0.0;

  std::uint64_t flips_toward_center = 0;
  std::uint64_t flips_away_from_center = 0;
  std::uint64_t flips_order_crossing = 0;

  double flip_magnitude_mean_favorite = 0.0;
  double flip_magnitude_mean_challenger = 0.0;
  double flip_success_rate_favorite = 0.0;
  double flip_success_rate_challenger = 0.0;

  double open_election_frequency = 0.0;
  double secured_frequency1 = 0.0, secured_frequency2 = 0.0;

  // raw tallies
  std::uint64_t open_count = 0;
  std::uint64_t secured_count1 = 0, secured_count2 = 0;
  std::uint64_t identical_count = 0;
  std::uint64_t weak_favorite_count = 0;
  std::uint64_t knife_edge_count = 0;
  std::uint64_t flip_count1 = 0, flip_count2 = 0;
  std::uint64_t favorite_flips_in_open = 0, challenger_flips_in_open = 0;
  std::uint64_t favorite_flips = 0, challenger_flips = 0;
  std::uint64_t favorite_flip_wins = 0, challenger_flip_wins = 0;
};

/// Brute-force first-stage best response: argmax of the responder's ex-ante
/// payoff over a uniform grid on [0,1]. Exact payoff ties are broken toward
/// the opponent.
double grid_best_response(double opponent_platform, Candidate responder,
                          const GameParams& params, std::size_t grid_size);

/// Maximum expected-payoff gain either candidate can achieve by a unilateral
/// pure deviation to a grid platform, against the given (possibly perturbed)
/// mixture. A value <= tolerance certifies the equilibrium at grid
/// resolution.
double grid_subgame_check(const PlatformPair& pair, Median m,
                          const GameParams& params,
                          const SubgameEquilibrium& eq, std::size_t grid_size);

/// Same, against the solve_subgame equilibrium.
double grid_subgame_check(const PlatformPair& pair, Median m,
                          const GameParams& params, std::size_t grid_size);

SimulationStats simulate(const PlatformPair& pair, const GameParams& params,
                         const SimulationConfig& config);

struct ImplicationClause {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;
  double band = 0.0;  // acceptance half-width (0 for exact checks)
};

struct ImplicationsReport {
  bool applicable = false;
  std::string note;
  std::vector<ImplicationClause> clauses;
  bool all_pass() const;
};

/// Per-clause check of the on-path flip-flop implications: (i) flips only
/// toward the center and never order-crossing, (ii) favorite flips more
/// often (1-phi vs phi given open, 3 SE bands), (iii) favorite adjustments
/// are smaller, (iv) a flipping favorite always wins while a flipping
/// challenger wins with probability about phi. Marked non-applicable when
/// the stats were not produced at the symmetric SPNE.
ImplicationsReport check_implications(const SimulationStats& stats,
                                      const GameParams& params);

struct SweepRow {
  double a = 0.0;
  double phi = 0.0;
  double psi_value = 0.0;
  bool admissible = false;  // R0 (SPNE exists) vs R1
  double polarization = 0.0;
  double open_probability = 0.0;
  double payoff = 0.0;
  double x1 = 0.0, x2 = 0.0;
  std::optional<double> simulated_payoff;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // monotonicity verdicts over the admissible rows, in increasing a
  bool polarization_decreasing = false;
  bool open_probability_decreasing = false;
  bool payoff_increasing = false;
};

/// Comparative-statics table over symmetric electoral costs at fixed phi.
/// Rows violating phi > Psi(a) are flagged inadmissible, not fatal. When
/// `sim` is provided, a simulated payoff column is added for admissible
/// rows.
SweepResult comparative_sweep(const std::vector<double>& a_values, double phi,
                              const SimulationConfig* sim = nullptr);

}  // namespace flipflop
