#include "flipflop/game_core.hpp"

#include <cmath>

namespace flipflop {

double alpha(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("alpha: electoral cost must be finite and > 0");
  }
  return std::sqrt((1.0 + a) / a);
}

GameParams::GameParams(double a1, double a2, double phi)
    : a1_(a1),
      a2_(a2),
      phi_(phi),
      alpha1_(flipflop::alpha(a1)),
      alpha2_(flipflop::alpha(a2)) {
  if (!(phi > 0.0 && phi < 0.5)) {
    throw std::invalid_argument(
        "GameParams: organizational cost phi must lie in (0, 1/2)");
  }
}

PlatformPair::PlatformPair(double x1_, double x2_) : x1(x1_), x2(x2_) {
  if (!(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0)) {
    throw std::invalid_argument("PlatformPair: platforms must lie in [0,1]");
  }
}

Median::Median(double v) : value(v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("Median: location must lie in [0,1]");
  }
}

Candidate SubgameStatus::favorite() const {
  if (!has_roles()) {
    throw std::logic_error("SubgameStatus: no favorite in " + to_string());
  }
  return favorite_;
}

std::string SubgameStatus::to_string() const {
  switch (kind_) {
    case Kind::identical:
      return "identical";
    case Kind::secured:
      return "secured(" + std::to_string(label(favorite_)) + ")";
    case Kind::open:
      return "open(" + std::to_string(label(favorite_)) + ")";
    case Kind::weak_favorite:
      return "weak_favorite(" + std::to_string(label(favorite_)) + ")";
    case Kind::knife_edge:
      return "knife_edge";
  }
  return "?";
}

double voter_utility(double t, double x, double y, double a) {
  if (!std::isfinite(t) || !std::isfinite(x) || !std::isfinite(y) ||
      !std::isfinite(a)) {
    throw std::domain_error("voter_utility: inputs must be finite");
  }
  const double policy = t - y;
  const double adjust = y - x;
  return -policy * policy - a * adjust * adjust;
}

double optimal_adjustment(double m, double x, double a) {
  return (m + a * x) / (1.0 + a);
}

double adjusted_utility(double m, double x, double a) {
  const double d = m - x;
  return -d * d * a / (1.0 + a);
}

SecuredInterval secured_interval(Candidate candidate, const PlatformPair& pair,
                                 const GameParams& params) {
  if (pair.identical()) {
    throw std::invalid_argument(
        "secured_interval: identical platforms have no secured interval");
  }
  const Candidate opp = other(candidate);
  const double xi = pair.x(candidate);
  const double xj = pair.x(opp);
  const double beta = params.alpha(opp);
  if (xi < xj) {
    const double lo = std::max((beta * xi - xj) / (beta - 1.0), 0.0);
    const double hi = std::min((beta * xi + xj) / (beta + 1.0), 1.0);
    return SecuredInterval{lo, hi, candidate};
  }
  const double lo = std::max((beta * xi + xj) / (beta + 1.0), 0.0);
  const double hi = std::min((beta * xi - xj) / (beta - 1.0), 1.0);
  return SecuredInterval{lo, hi, candidate};
}

double weak_favorite_threshold(const PlatformPair& pair,
                               const GameParams& params) {
  if (pair.identical()) {
    throw std::invalid_argument(
        "weak_favorite_threshold: platforms must differ");
  }
  // Solves |m - x1| / alpha1 = |m - x2| / alpha2 for m between the
  // platforms; the expression is invariant under relabeling.
  const double a1 = params.alpha1();
  const double a2 = params.alpha2();
  return (a1 * pair.x2 + a2 * pair.x1) / (a1 + a2);
}

SubgameStatus classify(const PlatformPair& pair, Median m,
                       const GameParams& params) {
  if (pair.identical()) {
    return SubgameStatus::identical();
  }
  const double d1 = std::abs(pair.x1 - m.value);
  const double d2 = std::abs(pair.x2 - m.value);
  if (d1 == d2) {
    return SubgameStatus::knife_edge();
  }
  const Candidate fav = d1 < d2 ? Candidate::one : Candidate::two;
  const Candidate chal = other(fav);

  const double u_fav_stay =
      voter_utility(m.value, pair.x(fav), pair.x(fav), params.a(fav));
  const double u_chal_adj = adjusted_utility(m.value, pair.x(chal), params.a(chal));
  if (u_fav_stay > u_chal_adj) {
    return SubgameStatus::secured(fav);
  }
  if (u_fav_stay == u_chal_adj) {
    return SubgameStatus::knife_edge();
  }

  const double u_fav_adj = adjusted_utility(m.value, pair.x(fav), params.a(fav));
  if (u_chal_adj > u_fav_adj) {
    return SubgameStatus::weak_favorite(fav);
  }
  if (u_chal_adj == u_fav_adj) {
    return SubgameStatus::knife_edge();
  }
  return SubgameStatus::open(fav);
}

}  // namespace flipflop
