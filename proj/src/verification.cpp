#include "flipflop/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace flipflop {

namespace {

// Counter-based substream: every draw index gets its own splitmix64 state,
// so the partition of draws across workers cannot change the numbers.
class DrawRng {
 public:
  DrawRng(std::uint64_t seed, std::uint64_t draw_index)
      : state_(seed ^ (0x9E3779B97F4A7C15ULL * (draw_index + 1))) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  bool coin() { return next_u64() & 1; }

 private:
  std::uint64_t state_;
};

struct Accum {
  double payoff_sum1 = 0.0, payoff_sum2 = 0.0;
  double payoff_sq1 = 0.0, payoff_sq2 = 0.0;
  double mag_sum_favorite = 0.0, mag_sum_challenger = 0.0;
  std::uint64_t open_count = 0;
  std::uint64_t secured_count1 = 0, secured_count2 = 0;
  std::uint64_t identical_count = 0;
  std::uint64_t weak_favorite_count = 0;
  std::uint64_t knife_edge_count = 0;
  std::uint64_t flip_count1 = 0, flip_count2 = 0;
  std::uint64_t favorite_flips_in_open = 0, challenger_flips_in_open = 0;
  std::uint64_t favorite_flips = 0, challenger_flips = 0;
  std::uint64_t favorite_flip_wins = 0, challenger_flip_wins = 0;
  std::uint64_t toward_center = 0, away_from_center = 0, order_crossing = 0;

  void merge(const Accum& o) {
    payoff_sum1 += o.payoff_sum1;
    payoff_sum2 += o.payoff_sum2;
    payoff_sq1 += o.payoff_sq1;
    payoff_sq2 += o.payoff_sq2;
    mag_sum_favorite += o.mag_sum_favorite;
    mag_sum_challenger += o.mag_sum_challenger;
    open_count += o.open_count;
    secured_count1 += o.secured_count1;
    secured_count2 += o.secured_count2;
    identical_count += o.identical_count;
    weak_favorite_count += o.weak_favorite_count;
    knife_edge_count += o.knife_edge_count;
    flip_count1 += o.flip_count1;
    flip_count2 += o.flip_count2;
    favorite_flips_in_open += o.favorite_flips_in_open;
    challenger_flips_in_open += o.challenger_flips_in_open;
    favorite_flips += o.favorite_flips;
    challenger_flips += o.challenger_flips;
    favorite_flip_wins += o.favorite_flip_wins;
    challenger_flip_wins += o.challenger_flip_wins;
    toward_center += o.toward_center;
    away_from_center += o.away_from_center;
    order_crossing += o.order_crossing;
  }
};

void run_draw(const PlatformPair& pair, const GameParams& params,
              KnifeEdgePolicy policy, std::uint64_t seed, std::uint64_t index,
              Accum& acc) {
  DrawRng rng(seed, index);
  const Median m{rng.uniform()};
  const SubgameStatus status = classify(pair, m, params);
  const double phi = params.phi();

  bool flip1 = false, flip2 = false;
  switch (status.kind()) {
    case SubgameStatus::Kind::identical:
      flip1 = flip2 = true;
      acc.identical_count += 1;
      break;
    case SubgameStatus::Kind::secured:
      (status.favorite() == Candidate::one ? acc.secured_count1
                                           : acc.secured_count2) += 1;
      break;
    case SubgameStatus::Kind::open: {
      acc.open_count += 1;
      const bool fav_flips = rng.bernoulli(1.0 - phi);
      const bool chal_flips = rng.bernoulli(phi);
      flip1 = status.favorite() == Candidate::one ? fav_flips : chal_flips;
      flip2 = status.favorite() == Candidate::two ? fav_flips : chal_flips;
      break;
    }
    case SubgameStatus::Kind::weak_favorite:
      acc.weak_favorite_count += 1;
      flip1 = status.strong_challenger() == Candidate::one;
      flip2 = status.strong_challenger() == Candidate::two;
      break;
    case SubgameStatus::Kind::knife_edge:
      if (policy == KnifeEdgePolicy::reject) {
        throw unresolved_tie_error(
            "simulate: knife-edge draw under reject policy");
      }
      // Fair coin, both stay; excluded from role-conditioned statistics.
      acc.knife_edge_count += 1;
      {
        const bool one_wins = rng.coin();
        acc.payoff_sum1 += one_wins ? 1.0 : 0.0;
        acc.payoff_sq1 += one_wins ? 1.0 : 0.0;
        acc.payoff_sum2 += one_wins ? 0.0 : 1.0;
        acc.payoff_sq2 += one_wins ? 0.0 : 1.0;
      }
      return;
  }

  const double y1 =
      flip1 ? optimal_adjustment(m.value, pair.x1, params.a1()) : pair.x1;
  const double y2 =
      flip2 ? optimal_adjustment(m.value, pair.x2, params.a2()) : pair.x2;
  // A degenerate "adjustment" onto the ex-ante platform is not a flip.
  flip1 = y1 != pair.x1;
  flip2 = y2 != pair.x2;

  const double u1 = voter_utility(m.value, pair.x1, y1, params.a1());
  const double u2 = voter_utility(m.value, pair.x2, y2, params.a2());
  const bool one_wins = u1 > u2 || (u1 == u2 && rng.coin());

  const double g1 = (one_wins ? 1.0 : 0.0) - (flip1 ? phi : 0.0);
  const double g2 = (one_wins ? 0.0 : 1.0) - (flip2 ? phi : 0.0);
  acc.payoff_sum1 += g1;
  acc.payoff_sq1 += g1 * g1;
  acc.payoff_sum2 += g2;
  acc.payoff_sq2 += g2 * g2;
  acc.flip_count1 += flip1;
  acc.flip_count2 += flip2;

  auto count_direction = [&](double x, double y) {
    if (std::abs(y - 0.5) > std::abs(x - 0.5)) {
      acc.away_from_center += 1;
    } else {
      acc.toward_center += 1;
    }
  };
  if (flip1) count_direction(pair.x1, y1);
  if (flip2) count_direction(pair.x2, y2);
  if ((flip1 || flip2) && (pair.x2 - pair.x1) * (y2 - y1) < 0.0) {
    acc.order_crossing += 1;
  }

  if (status.has_roles()) {
    const Candidate fav = status.favorite();
    const bool fav_flipped = fav == Candidate::one ? flip1 : flip2;
    const bool chal_flipped = fav == Candidate::one ? flip2 : flip1;
    const bool fav_won = (fav == Candidate::one) == one_wins;
    const double fav_mag = std::abs(fav == Candidate::one ? y1 - pair.x1
                                                          : y2 - pair.x2);
    const double chal_mag = std::abs(fav == Candidate::one ? y2 - pair.x2
                                                           : y1 - pair.x1);
    if (status.kind() == SubgameStatus::Kind::open) {
      acc.favorite_flips_in_open += fav_flipped;
      acc.challenger_flips_in_open += chal_flipped;
    }
    if (fav_flipped) {
      acc.favorite_flips += 1;
      acc.favorite_flip_wins += fav_won;
      acc.mag_sum_favorite += fav_mag;
    }
    if (chal_flipped) {
      acc.challenger_flips += 1;
      acc.challenger_flip_wins += !fav_won;
      acc.mag_sum_challenger += chal_mag;
    }
  }
}

constexpr std::uint64_t kBlockSize = 8192;

}  // namespace

SimulationStats simulate(const PlatformPair& pair, const GameParams& params,
                         const SimulationConfig& config) {
  if (config.draws < 1) {
    throw std::invalid_argument("simulate: draws must be >= 1");
  }
  const std::uint64_t n = config.draws;
  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Accum> block_accums(blocks);

  const unsigned workers = std::max(1u, config.workers);
  std::atomic<std::uint64_t> next_block{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&]() {
    try {
      for (;;) {
        const std::uint64_t b = next_block.fetch_add(1);
        if (b >= blocks) break;
        Accum acc;
        const std::uint64_t lo = b * kBlockSize;
        const std::uint64_t hi = std::min(n, lo + kBlockSize);
        for (std::uint64_t k = lo; k < hi; ++k) {
          run_draw(pair, params, config.knife_edge_policy, config.seed, k,
                   acc);
        }
        block_accums[b] = acc;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  // Fixed reduction order: block index, regardless of which worker ran it.
  Accum total;
  for (const Accum& acc : block_accums) total.merge(acc);

  SimulationStats s;
  s.x1 = pair.x1;
  s.x2 = pair.x2;
  s.a1 = params.a1();
  s.a2 = params.a2();
  s.phi = params.phi();
  s.draws = n;
  s.seed = config.seed;

  const double dn = static_cast<double>(n);
  s.payoff_mean1 = total.payoff_sum1 / dn;
  s.payoff_mean2 = total.payoff_sum2 / dn;
  const double var1 =
      std::max(0.0, total.payoff_sq1 / dn - s.payoff_mean1 * s.payoff_mean1);
  const double var2 =
      std::max(0.0, total.payoff_sq2 / dn - s.payoff_mean2 * s.payoff_mean2);
  s.payoff_std_error1 = std::sqrt(var1 / dn);
  s.payoff_std_error2 = std::sqrt(var2 / dn);

  s.flip_frequency1 = total.flip_count1 / dn;
  s.flip_frequency2 = total.flip_count2 / dn;
  s.open_election_frequency = total.open_count / dn;
  s.secured_frequency1 = total.secured_count1 / dn;
  s.secured_frequency2 = total.secured_count2 / dn;
  if (total.open_count > 0) {
    s.flip_frequency_given_open_favorite =
        static_cast<double>(total.favorite_flips_in_open) / total.open_count;
    s.flip_frequency_given_open_challenger =
        static_cast<double>(total.challenger_flips_in_open) / total.open_count;
  }
  if (total.favorite_flips > 0) {
    s.flip_magnitude_mean_favorite =
        total.mag_sum_favorite / total.favorite_flips;
    s.flip_success_rate_favorite =
        static_cast<double>(total.favorite_flip_wins) / total.favorite_flips;
  }
  if (total.challenger_flips > 0) {
    s.flip_magnitude_mean_challenger =
        total.mag_sum_challenger / total.challenger_flips;
    s.flip_success_rate_challenger =
        static_cast<double>(total.challenger_flip_wins) /
        total.challenger_flips;
  }

  s.flips_toward_center = total.toward_center;
  s.flips_away_from_center = total.away_from_center;
  s.flips_order_crossing = total.order_crossing;
  s.open_count = total.open_count;
  s.secured_count1 = total.secured_count1;
  s.secured_count2 = total.secured_count2;
  s.identical_count = total.identical_count;
  s.weak_favorite_count = total.weak_favorite_count;
  s.knife_edge_count = total.knife_edge_count;
  s.flip_count1 = total.flip_count1;
  s.flip_count2 = total.flip_count2;
  s.favorite_flips_in_open = total.favorite_flips_in_open;
  s.challenger_flips_in_open = total.challenger_flips_in_open;
  s.favorite_flips = total.favorite_flips;
  s.challenger_flips = total.challenger_flips;
  s.favorite_flip_wins = total.favorite_flip_wins;
  s.challenger_flip_wins = total.challenger_flip_wins;
  return s;
}

double grid_best_response(double opponent_platform, Candidate responder,
                          const GameParams& params, std::size_t grid_size) {
  if (grid_size < 2) {
    throw std::invalid_argument("grid_best_response: grid_size must be >= 2");
  }
  if (!(opponent_platform >= 0.0 && opponent_platform <= 1.0)) {
    throw std::invalid_argument(
        "grid_best_response: opponent platform outside [0,1]");
  }
  double best_x = 0.0;
  double best_payoff = -1.0;
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double x = std::min(1.0, k * step);
    const PlatformPair pair = responder == Candidate::one
                                  ? PlatformPair{x, opponent_platform}
                                  : PlatformPair{opponent_platform, x};
    const PayoffPair g = exante_payoff(pair, params);
    const double payoff = responder == Candidate::one ? g.g1 : g.g2;
    const bool better =
        payoff > best_payoff ||
        (payoff == best_payoff && std::abs(x - opponent_platform) <
                                      std::abs(best_x - opponent_platform));
    if (better) {
      best_payoff = payoff;
      best_x = x;
    }
  }
  return best_x;
}

namespace {

// Expected payoff of a pure ex-post platform y for `me` against the
// opponent's mixture.
double pure_vs_mixture(Candidate me, double y, const PlatformPair& pair,
                       Median m, const GameParams& params,
                       const MixedAction& opponent_action) {
  const Candidate opp = other(me);
  const double x_me = pair.x(me);
  const double x_opp = pair.x(opp);
  const double phi_paid = y != x_me ? params.phi() : 0.0;

  auto value_against = [&](double y_opp) {
    const double u_me = voter_utility(m.value, x_me, y, params.a(me));
    const double u_opp = voter_utility(m.value, x_opp, y_opp, params.a(opp));
    double win;
    if (u_me > u_opp) {
      win = 1.0;
    } else if (u_me < u_opp) {
      win = 0.0;
    } else {
      win = 0.5;
    }
    return win - phi_paid;
  };

  const double q = opponent_action.adjust_probability;
  return q * value_against(opponent_action.adjust_target) +
         (1.0 - q) * value_against(x_opp);
}

double mixture_value(Candidate me, const PlatformPair& pair, Median m,
                     const GameParams& params, const SubgameEquilibrium& eq) {
  const MixedAction& mine = eq.action(me);
  const MixedAction& theirs = eq.action(other(me));
  const double p = mine.adjust_probability;
  return p * pure_vs_mixture(me, mine.adjust_target, pair, m, params, theirs) +
         (1.0 - p) *
             pure_vs_mixture(me, mine.stay_platform, pair, m, params, theirs);
}

}  // namespace

double grid_subgame_check(const PlatformPair& pair, Median m,
                          const GameParams& params,
                          const SubgameEquilibrium& eq,
                          std::size_t grid_size) {
  if (grid_size < 2) {
    throw std::invalid_argument("grid_subgame_check: grid_size must be >= 2");
  }
  double max_gain = -1.0;
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  for (Candidate me : {Candidate::one, Candidate::two}) {
    const double baseline = mixture_value(me, pair, m, params, eq);
    const MixedAction& theirs = eq.action(other(me));
    auto consider = [&](double y) {
      const double gain =
          pure_vs_mixture(me, y, pair, m, params, theirs) - baseline;
      max_gain = std::max(max_gain, gain);
    };
    for (std::size_t k = 0; k < grid_size; ++k) {
      consider(std::min(1.0, k * step));
    }
    consider(eq.action(me).stay_platform);
    consider(eq.action(me).adjust_target);
  }
  return max_gain;
}

double grid_subgame_check(const PlatformPair& pair, Median m,
                          const GameParams& params, std::size_t grid_size) {
  return grid_subgame_check(pair, m, params, solve_subgame(pair, m, params),
                            grid_size);
}

bool ImplicationsReport::all_pass() const {
  if (!applicable) return false;
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const ImplicationClause& c) { return c.pass; });
}

ImplicationsReport check_implications(const SimulationStats& stats,
                                      const GameParams& params) {
  ImplicationsReport report;

  if (!params.symmetric() || !(params.phi() > psi(params.a1()))) {
    report.note = "not applicable: requires symmetric costs with phi > Psi(a)";
    return report;
  }
  const auto solution = solve_first_stage(params);
  const Spne* spne = std::get_if<Spne>(&solution);
  if (spne == nullptr || std::abs(stats.x1 - spne->x1) > 1e-12 ||
      std::abs(stats.x2 - spne->x2) > 1e-12 || stats.a1 != params.a1() ||
      stats.a2 != params.a2() || stats.phi != params.phi()) {
    report.note = "not applicable: stats were not produced at the SPNE";
    return report;
  }
  report.applicable = true;

  const double phi = params.phi();
  auto push = [&](std::string name, bool pass, double obs, double exp,
                  double band) {
    report.clauses.push_back(
        ImplicationClause{std::move(name), pass, obs, exp, band});
  };

  push("i_toward_center_only", stats.flips_away_from_center == 0,
       static_cast<double>(stats.flips_away_from_center), 0.0, 0.0);
  push("i_no_order_crossing", stats.flips_order_crossing == 0,
       static_cast<double>(stats.flips_order_crossing), 0.0, 0.0);

  const double n_open = static_cast<double>(stats.open_count);
  const double band_fav =
      n_open > 0 ? 3.0 * std::sqrt(phi * (1.0 - phi) / n_open) : 0.0;
  const double f_fav = stats.flip_frequency_given_open_favorite;
  const double f_chal = stats.flip_frequency_given_open_challenger;
  push("ii_favorite_flip_rate_given_open",
       n_open > 0 && std::abs(f_fav - (1.0 - phi)) <= band_fav, f_fav,
       1.0 - phi, band_fav);
  push("ii_challenger_flip_rate_given_open",
       n_open > 0 && std::abs(f_chal - phi) <= band_fav, f_chal, phi,
       band_fav);
  push("ii_favorite_more_likely", f_fav > f_chal, f_fav, f_chal, 0.0);

  push("iii_magnitude_ordering",
       stats.favorite_flips > 0 && stats.challenger_flips > 0 &&
           stats.flip_magnitude_mean_favorite <
               stats.flip_magnitude_mean_challenger,
       stats.flip_magnitude_mean_favorite,
       stats.flip_magnitude_mean_challenger, 0.0);

  // Deterministic counterpart: for every open m, the favorite's adjustment
  // is the smaller one.
  {
    const PlatformPair pair{stats.x1, stats.x2};
    bool pointwise = true;
    constexpr int kSamples = 2001;
    for (int k = 0; k < kSamples && pointwise; ++k) {
      const double m = (k + 0.5) / kSamples;
      const SubgameStatus st = classify(pair, Median{m}, params);
      if (st.kind() != SubgameStatus::Kind::open) continue;
      const double fav_mag = std::abs(
          optimal_adjustment(m, pair.x(st.favorite()), params.a(st.favorite())) -
          pair.x(st.favorite()));
      const double chal_mag =
          std::abs(optimal_adjustment(m, pair.x(st.challenger()),
                                      params.a(st.challenger())) -
                   pair.x(st.challenger()));
      pointwise = fav_mag < chal_mag;
    }
    push("iii_pointwise_magnitude", pointwise, pointwise ? 1.0 : 0.0, 1.0,
         0.0);
  }

  push("iv_favorite_flip_success_exact",
       stats.favorite_flips > 0 &&
           stats.favorite_flip_wins == stats.favorite_flips,
       stats.flip_success_rate_favorite, 1.0, 0.0);
  const double n_cf = static_cast<double>(stats.challenger_flips);
  const double band_cf =
      n_cf > 0 ? 3.0 * std::sqrt(phi * (1.0 - phi) / n_cf) : 0.0;
  push("iv_challenger_flip_success",
       n_cf > 0 &&
           std::abs(stats.flip_success_rate_challenger - phi) <= band_cf &&
           stats.flip_success_rate_challenger < 0.5,
       stats.flip_success_rate_challenger, phi, band_cf);

  return report;
}

SweepResult comparative_sweep(const std::vector<double>& a_values, double phi,
                              const SimulationConfig* sim) {
  SweepResult result;
  for (double a : a_values) {
    SweepRow row;
    row.a = a;
    row.phi = phi;
    row.psi_value = psi(a);
    row.admissible = phi > row.psi_value && phi < 0.5;
    if (row.admissible) {
      const GameParams params{a, a, phi};
      const auto solution = solve_first_stage(params);
      const Spne& spne = std::get<Spne>(solution);
      row.x1 = spne.x1;
      row.x2 = spne.x2;
      row.payoff = spne.payoff1;
      row.polarization = spne.x2 - spne.x1;
      double open_len = 0.0;
      for (const Region& r :
           region_partition(PlatformPair{spne.x1, spne.x2}, params)) {
        if (r.status.kind() == SubgameStatus::Kind::open) {
          open_len += r.hi - r.lo;
        }
      }
      row.open_probability = open_len;
      if (sim != nullptr && sim->draws > 0) {
        const SimulationStats stats =
            simulate(PlatformPair{spne.x1, spne.x2}, params, *sim);
        row.simulated_payoff = stats.payoff_mean1;
      }
    }
    result.rows.push_back(row);
  }

  std::vector<const SweepRow*> admissible;
  for (const SweepRow& row : result.rows) {
    if (row.admissible) admissible.push_back(&row);
  }
  std::sort(admissible.begin(), admissible.end(),
            [](const SweepRow* l, const SweepRow* r) { return l->a < r->a; });
  result.polarization_decreasing = admissible.size() >= 2;
  result.open_probability_decreasing = admissible.size() >= 2;
  result.payoff_increasing = admissible.size() >= 2;
  for (std::size_t i = 0; i + 1 < admissible.size(); ++i) {
    if (!(admissible[i + 1]->polarization < admissible[i]->polarization)) {
      result.polarization_decreasing = false;
    }
    if (!(admissible[i + 1]->open_probability <
          admissible[i]->open_probability)) {
      result.open_probability_decreasing = false;
    }
    if (!(admissible[i + 1]->payoff > admissible[i]->payoff)) {
      result.payoff_increasing = false;
    }
  }
  return result;
}

}  // namespace flipflop
