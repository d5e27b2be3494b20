#pragma once

#include <stdexcept>
#include <string>

namespace flipflop {

enum class Candidate { one, two };

constexpr Candidate other(Candidate c) {
  return c == Candidate::one ? Candidate::two : Candidate::one;
}

constexpr int label(Candidate c) { return c == Candidate::one ? 1 : 2; }

/// Thrown when a second-stage configuration is a knife-edge tie and the
/// caller did not supply a resolution policy.
struct unresolved_tie_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a best response does not exist (payoff increasing toward
/// the opponent, supremum not attained).
struct no_best_response_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when phi sits exactly on an existence threshold, where play is
/// unspecified.
struct boundary_unspecified_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// alpha(a) = sqrt((1+a)/a). Strictly decreasing in a, always > 1.
double alpha(double a);

/// Complete parameterization of the game: electoral-cost weights a1, a2 > 0
/// and the organizational cost phi in (0, 1/2). The derived alphas are
/// computed once at construction since every downstream formula consumes
/// alpha rather than a.
class GameParams {
 public:
  GameParams(double a1, double a2, double phi);

  double a(Candidate c) const { return c == Candidate::one ? a1_ : a2_; }
  double alpha(Candidate c) const {
    return c == Candidate::one ? alpha1_ : alpha2_;
  }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  double phi() const { return phi_; }
  bool symmetric() const { return a1_ == a2_; }

 private:
  double a1_;
  double a2_;
  double phi_;
  double alpha1_;
  double alpha2_;
};

/// Ex-ante platforms. Both coordinates must lie in [0,1]; no ordering is
/// imposed, label-preserving symmetry handles x1 > x2.
struct PlatformPair {
  PlatformPair(double x1_, double x2_);

  double x(Candidate c) const { return c == Candidate::one ? x1 : x2; }
  bool identical() const { return x1 == x2; }
  Candidate left() const { return x1 <= x2 ? Candidate::one : Candidate::two; }

  double x1;
  double x2;
};

/// Realized median-voter location, in [0,1].
struct Median {
  explicit Median(double v);
  double value;
};

/// Classification of a second-stage configuration (x1, x2, m).
class SubgameStatus {
 public:
  enum class Kind { identical, secured, open, weak_favorite, knife_edge };

  static SubgameStatus identical() {
    return SubgameStatus{Kind::identical, Candidate::one};
  }
  static SubgameStatus secured(Candidate favorite) {
    return SubgameStatus{Kind::secured, favorite};
  }
  static SubgameStatus open(Candidate favorite) {
    return SubgameStatus{Kind::open, favorite};
  }
  static SubgameStatus weak_favorite(Candidate weak) {
    return SubgameStatus{Kind::weak_favorite, weak};
  }
  static SubgameStatus knife_edge() {
    return SubgameStatus{Kind::knife_edge, Candidate::one};
  }

  Kind kind() const { return kind_; }
  bool has_roles() const {
    return kind_ == Kind::secured || kind_ == Kind::open ||
           kind_ == Kind::weak_favorite;
  }
  /// The favorite (the candidate whose ex-ante platform is closer to m).
  /// For weak_favorite this is the weak favorite. Only valid when
  /// has_roles().
  Candidate favorite() const;
  Candidate challenger() const { return other(favorite()); }
  /// Synonyms for the asymmetric-cost vocabulary.
  Candidate weak_favorite_id() const { return favorite(); }
  Candidate strong_challenger() const { return challenger(); }

  bool operator==(const SubgameStatus&) const = default;
  std::string to_string() const;

 private:
  SubgameStatus(Kind k, Candidate f) : kind_(k), favorite_(f) {}
  Kind kind_;
  Candidate favorite_;
};

/// Interval of m-values for which `candidate` has secured the election.
/// Depends on the opponent's alpha only.
struct SecuredInterval {
  double lo;
  double hi;
  Candidate candidate;
};

/// Voter utility: -(t-y)^2 - a(y-x)^2.
double voter_utility(double t, double x, double y, double a);

/// Optimal ex-post platform (m + a x) / (1 + a); a convex combination of
/// m and x, so it stays in [0,1] for in-range inputs.
double optimal_adjustment(double m, double x, double a);

/// Utility the median gets from `c` adjusting optimally. Simplifies to
/// -(m - x)^2 * a / (1 + a) = -((m - x)/alpha)^2.
double adjusted_utility(double m, double x, double a);

SecuredInterval secured_interval(Candidate candidate, const PlatformPair& pair,
                                 const GameParams& params);

/// The m at which both candidates' optimally adjusted utilities coincide:
/// (alpha_l x_r + alpha_r x_l) / (alpha_l + alpha_r). Equals the midpoint
/// when the alphas agree.
double weak_favorite_threshold(const PlatformPair& pair,
                               const GameParams& params);

/// Classifies (x1, x2, m). Comparisons are exact: boundary realizations
/// surface as knife_edge rather than being silently resolved.
SubgameStatus classify(const PlatformPair& pair, Median m,
                       const GameParams& params);

}  // namespace flipflop
