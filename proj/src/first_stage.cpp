#include "flipflop/first_stage.hpp"

#include <algorithm>
#include <cmath>

namespace flipflop {

double psi(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("psi: electoral cost must be finite and > 0");
  }
  return 1.0 / (1.0 + 4.0 * std::sqrt(a * (1.0 + a)));
}

RegionPartition region_partition(const PlatformPair& pair,
                                 const GameParams& params) {
  if (pair.identical()) {
    throw std::invalid_argument("region_partition: platforms must differ");
  }
  const SecuredInterval s1 = secured_interval(Candidate::one, pair, params);
  const SecuredInterval s2 = secured_interval(Candidate::two, pair, params);
  const double midpoint = (pair.x1 + pair.x2) / 2.0;

  std::vector<double> cuts{0.0, 1.0, s1.lo, s1.hi, s2.lo, s2.hi, midpoint};
  if (!params.symmetric()) {
    cuts.push_back(weak_favorite_threshold(pair, params));
  }
  for (double& c : cuts) c = std::clamp(c, 0.0, 1.0);
  std::sort(cuts.begin(), cuts.end());
  // Collapse cuts a few ulps apart: those slivers admit no representable
  // interior point to classify. Keep the exact endpoints 0 and 1.
  std::vector<double> dedup;
  for (double c : cuts) {
    if (dedup.empty() || c - dedup.back() > 1e-15) {
      dedup.push_back(c);
    } else if (c == 1.0) {
      dedup.back() = 1.0;
    }
  }
  cuts = std::move(dedup);

  RegionPartition regions;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const SubgameEquilibrium eq = [&] {
      try {
        return solve_subgame(pair, Median{lo + (hi - lo) / 2.0}, params);
      } catch (const unresolved_tie_error&) {
        // the midpoint happened to round onto a classification boundary;
        // probe off-center instead
        return solve_subgame(pair, Median{lo + (hi - lo) * 0.375}, params);
      }
    }();
    if (!regions.empty() && regions.back().status == eq.status) {
      regions.back().hi = hi;
      continue;
    }
    regions.push_back(
        Region{lo, hi, eq.status, eq.expected_payoff1, eq.expected_payoff2});
  }
  return regions;
}

PayoffPair exante_payoff(const PlatformPair& pair, const GameParams& params) {
  if (pair.identical()) {
    const double g = 0.5 - params.phi();
    return PayoffPair{g, g};
  }
  PayoffPair total{0.0, 0.0};
  for (const Region& r : region_partition(pair, params)) {
    const double len = r.hi - r.lo;
    total.g1 += len * r.payoff1;
    total.g2 += len * r.payoff2;
  }
  return total;
}

double closed_form_g1(const PlatformPair& pair, const GameParams& params) {
  if (!params.symmetric()) {
    throw std::invalid_argument(
        "closed_form_g1: only symmetric costs are supported; use "
        "exante_payoff");
  }
  if (!(pair.x1 < pair.x2)) {
    throw std::invalid_argument("closed_form_g1: requires x1 < x2");
  }
  const double a = params.alpha1();
  const double phi = params.phi();
  const double base = (1.0 - phi) / 2.0;
  if (pair.x1 <= pair.x2 / a) {
    return pair.x1 * (base + phi * a / (a + 1.0)) +
           pair.x2 * (base + phi / (a + 1.0));
  }
  const double slope = 2.0 * phi * a / (a * a - 1.0);
  return pair.x1 * (base - slope) + pair.x2 * (base + slope);
}

double best_response(double opponent_platform, Candidate responder,
                     const GameParams& params) {
  if (!(opponent_platform >= 0.0 && opponent_platform <= 1.0)) {
    throw std::invalid_argument("best_response: opponent platform outside [0,1]");
  }
  const double threshold = psi(params.a(responder));
  if (!(params.phi() > threshold)) {
    throw no_best_response_error(
        "best_response: phi <= Psi(a) for the responder; the payoff "
        "increases toward the opponent and no best response is attained");
  }
  // One-sided responses scale the gap to the nearest boundary by the
  // opponent's alpha; the global best response is whichever side pays more.
  // At an exact tie (e.g. opponent at 1/2 with symmetric costs) the
  // left-side response is reported.
  const double beta = params.alpha(other(responder));
  const double left = opponent_platform / beta;
  const double right = 1.0 - (1.0 - opponent_platform) / beta;
  const auto payoff_at = [&](double x) {
    const PlatformPair pair = responder == Candidate::one
                                  ? PlatformPair{x, opponent_platform}
                                  : PlatformPair{opponent_platform, x};
    const PayoffPair g = exante_payoff(pair, params);
    return responder == Candidate::one ? g.g1 : g.g2;
  };
  return payoff_at(left) >= payoff_at(right) ? left : right;
}

FirstStageSolution solve_first_stage(const GameParams& params) {
  const double t1 = psi(params.a1());
  const double t2 = psi(params.a2());
  const double phi = params.phi();
  if (phi == t1 || phi == t2) {
    throw boundary_unspecified_error(
        "solve_first_stage: phi equals an existence threshold; play at the "
        "boundary is unspecified");
  }

  if (phi > std::max(t1, t2)) {
    // The more flexible candidate (larger alpha) takes the more centrist
    // position; the canonical orientation puts him on the left, matching
    // the symmetric convention x1 <= x2 when costs agree.
    const Candidate left =
        params.alpha1() >= params.alpha2() ? Candidate::one : Candidate::two;
    const double af = params.alpha(left);
    const double as = params.alpha(other(left));
    const double x_left = (af - 1.0) / (af * as - 1.0);
    const double x_right = as * x_left;

    Spne spne{};
    spne.left = left;
    if (left == Candidate::one) {
      spne.x1 = x_left;
      spne.x2 = x_right;
    } else {
      spne.x1 = x_right;
      spne.x2 = x_left;
    }
    const PayoffPair g =
        exante_payoff(PlatformPair{spne.x1, spne.x2}, params);
    spne.payoff1 = g.g1;
    spne.payoff2 = g.g2;
    return spne;
  }

  if (params.symmetric()) {
    // Supremum of the unilateral deviation gain against x = 1/2 + eps is
    // lim_{x->1/2+eps} g1 minus the candidate's payoff at 1/2 - eps, which
    // works out to ((1-phi) - 4*alpha*phi/(alpha^2-1)) * eps. The
    // coefficient is positive exactly when phi < Psi(a) and vanishes at
    // the threshold.
    const double a = params.alpha1();
    const double coeff = (1.0 - phi) - 4.0 * a * phi / (a * a - 1.0);
    return EpsilonEquilibrium{0.5, coeff};
  }
  return NoEquilibrium{
      "phi < max(Psi(a1), Psi(a2)): no subgame-perfect equilibrium exists "
      "with asymmetric electoral costs"};
}

}  // namespace flipflop
