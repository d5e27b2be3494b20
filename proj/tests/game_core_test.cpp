#include "flipflop/game_core.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace flipflop;

namespace {

// Brute-force argmax of the median's utility over an ex-post grid.
double grid_argmax_adjustment(double m, double x, double a, int n) {
  double best_y = 0.0;
  double best_u = -1e300;
  for (int k = 0; k <= n; ++k) {
    const double y = static_cast<double>(k) / n;
    const double u = voter_utility(m, x, y, a);
    if (u > best_u) {
      best_u = u;
      best_y = y;
    }
  }
  return best_y;
}

}  // namespace

TEST_CASE("alpha matches hand evaluations and is decreasing") {
  CHECK(alpha(1.0 / 3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(alpha(1.0 / 8.0) == doctest::Approx(3.0).epsilon(1e-14));
  double prev = alpha(0.01);
  for (double a = 0.02; a < 200.0; a *= 1.5) {
    const double cur = alpha(a);
    CHECK(cur < prev);
    CHECK(cur > 1.0);
    prev = cur;
  }
  // approaches 1 from above as a grows
  CHECK(alpha(1e12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(alpha(0.0), std::domain_error);
  CHECK_THROWS_AS(alpha(-1.0), std::domain_error);
  CHECK_THROWS_AS(alpha(std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("parameter and platform validation") {
  CHECK_THROWS_AS(GameParams(1.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(GameParams(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GameParams(-0.5, 1.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(PlatformPair(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(PlatformPair(0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Median(1.2), std::invalid_argument);

  const GameParams p{1.0 / 3.0, 1.0 / 8.0, 0.3};
  CHECK(p.alpha1() == doctest::Approx(2.0));
  CHECK(p.alpha2() == doctest::Approx(3.0));
  CHECK_FALSE(p.symmetric());
}

TEST_CASE("voter_utility hand values") {
  CHECK(voter_utility(0.5, 0.4, 0.4, 7.0) == doctest::Approx(-0.01));
  CHECK(voter_utility(0.3, 0.3, 0.3, 1.0) == 0.0);
  CHECK(voter_utility(0.5, 0.2, 0.3, 1.0) == doctest::Approx(-0.05));
  CHECK_THROWS_AS(voter_utility(std::nan(""), 0.0, 0.0, 1.0),
                  std::domain_error);
}

TEST_CASE("optimal_adjustment fixed point, hand value and limit") {
  CHECK(optimal_adjustment(0.4, 0.4, 3.0) == doctest::Approx(0.4));
  CHECK(optimal_adjustment(0.5, 1.0 / 3.0, 1.0 / 3.0) ==
        doctest::Approx(11.0 / 24.0).epsilon(1e-14));
  // monotone approach to x as the penalty grows
  double prev = optimal_adjustment(0.9, 0.2, 1.0);
  for (double a = 10.0; a < 1e6; a *= 10.0) {
    const double cur = optimal_adjustment(0.9, 0.2, a);
    CHECK(cur < prev);
    CHECK(cur > 0.2);
    prev = cur;
  }
}

TEST_CASE("optimal_adjustment agrees with the grid argmax") {
  std::mt19937_64 rng(20240901);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(0.05, 5.0);
  const int n = 100000;
  for (int i = 0; i < 100; ++i) {
    const double m = unit(rng);
    const double x = unit(rng);
    const double a = cost(rng);
    const double yhat = optimal_adjustment(m, x, a);
    CHECK(yhat >= 0.0);
    CHECK(yhat <= 1.0);
    CHECK(std::abs(yhat - grid_argmax_adjustment(m, x, a, n)) <= 1.5 / n);
    if (x != m) {
      CHECK(yhat > std::min(x, m));
      CHECK(yhat < std::max(x, m));
    }
  }
}

TEST_CASE("secured_interval hand values") {
  const GameParams sym{1.0 / 3.0, 1.0 / 3.0, 0.3};
  const PlatformPair pair{1.0 / 3.0, 2.0 / 3.0};
  const SecuredInterval s1 = secured_interval(Candidate::one, pair, sym);
  CHECK(s1.lo == doctest::Approx(0.0));
  CHECK(s1.hi == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  const SecuredInterval s2 = secured_interval(Candidate::two, pair, sym);
  CHECK(s2.lo == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
  CHECK(s2.hi == doctest::Approx(1.0));

  const GameParams asym{1.0 / 8.0, 1.0 / 3.0, 0.45};
  const PlatformPair pa{0.4, 0.8};
  const SecuredInterval t1 = secured_interval(Candidate::one, pa, asym);
  CHECK(t1.lo == doctest::Approx(0.0));
  CHECK(t1.hi == doctest::Approx(8.0 / 15.0).epsilon(1e-14));
  const SecuredInterval t2 = secured_interval(Candidate::two, pa, asym);
  CHECK(t2.lo == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(t2.hi == doctest::Approx(1.0));

  CHECK_THROWS_AS(secured_interval(Candidate::one, PlatformPair{0.5, 0.5}, sym),
                  std::invalid_argument);
}

TEST_CASE("inside the secured interval the favorite beats the best reply") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(0.05, 5.0);
  for (int i = 0; i < 30; ++i) {
    const double x1 = unit(rng);
    double x2 = unit(rng);
    if (x1 == x2) x2 = x1 + 0.1 > 1.0 ? x1 - 0.1 : x1 + 0.1;
    const GameParams params{cost(rng), cost(rng), 0.3};
    const PlatformPair pair{x1, x2};
    for (Candidate c : {Candidate::one, Candidate::two}) {
      const SecuredInterval s = secured_interval(c, pair, params);
      const Candidate j = other(c);
      for (int k = 1; k < 20; ++k) {
        const double m = s.lo + (s.hi - s.lo) * k / 20.0;
        const double u_stay = voter_utility(m, pair.x(c), pair.x(c), params.a(c));
        const double yj = optimal_adjustment(m, pair.x(j), params.a(j));
        const double u_best = voter_utility(m, pair.x(j), yj, params.a(j));
        CHECK(u_stay > u_best - 1e-15);
      }
    }
  }
}

TEST_CASE("secured interval bounds order around the platforms") {
  // m_lo < x_l < m_hi < midpoint < n_lo < x_r < n_hi when unclamped interior
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(0.05, 5.0);
  int interior_seen = 0;
  for (int i = 0; i < 200; ++i) {
    double x1 = unit(rng), x2 = unit(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (x2 - x1 < 1e-3) continue;
    const GameParams params{cost(rng), cost(rng), 0.3};
    const PlatformPair pair{x1, x2};
    const SecuredInterval s1 = secured_interval(Candidate::one, pair, params);
    const SecuredInterval s2 = secured_interval(Candidate::two, pair, params);
    const double mid = (x1 + x2) / 2.0;
    if (s1.lo > 0.0 && s2.hi < 1.0) ++interior_seen;
    CHECK(s1.lo <= x1);
    CHECK(x1 < s1.hi);
    CHECK(s1.hi < mid);
    CHECK(mid < s2.lo);
    CHECK(s2.lo < x2);
    CHECK(x2 <= s2.hi);
  }
  CHECK(interior_seen > 10);
}

TEST_CASE("weak_favorite_threshold hand values and utility equality") {
  const GameParams sym{0.7, 0.7, 0.3};
  CHECK(weak_favorite_threshold(PlatformPair{0.2, 0.6}, sym) ==
        doctest::Approx(0.4).epsilon(1e-14));

  const GameParams asym{1.0 / 8.0, 1.0 / 3.0, 0.45};
  const PlatformPair pair{0.4, 0.8};
  const double mt = weak_favorite_threshold(pair, asym);
  CHECK(mt == doctest::Approx(0.64).epsilon(1e-14));
  const double u1 = voter_utility(
      mt, pair.x1, optimal_adjustment(mt, pair.x1, asym.a1()), asym.a1());
  const double u2 = voter_utility(
      mt, pair.x2, optimal_adjustment(mt, pair.x2, asym.a2()), asym.a2());
  CHECK(std::abs(u1 - u2) < 1e-12);

  CHECK_THROWS_AS(weak_favorite_threshold(PlatformPair{0.5, 0.5}, sym),
                  std::invalid_argument);
}

TEST_CASE("classify hand fixtures") {
  const GameParams sym{1.0 / 3.0, 1.0 / 3.0, 0.3};
  const PlatformPair pair{1.0 / 3.0, 2.0 / 3.0};
  CHECK(classify(pair, Median{0.2}, sym) ==
        SubgameStatus::secured(Candidate::one));
  CHECK(classify(pair, Median{0.47}, sym) ==
        SubgameStatus::open(Candidate::one));
  // knife edges need exactly representable fixtures
  CHECK(classify(PlatformPair{0.25, 0.75}, Median{0.5}, sym) ==
        SubgameStatus::knife_edge());
  CHECK(classify(PlatformPair{0.5, 0.5}, Median{0.9}, sym) ==
        SubgameStatus::identical());

  const GameParams asym{1.0 / 8.0, 1.0 / 3.0, 0.45};
  const SubgameStatus wf = classify(PlatformPair{0.4, 0.8}, Median{0.62}, asym);
  CHECK(wf.kind() == SubgameStatus::Kind::weak_favorite);
  CHECK(wf.weak_favorite_id() == Candidate::two);
  CHECK(wf.strong_challenger() == Candidate::one);
}

TEST_CASE("classify agrees with secured_interval on a dense grid") {
  const GameParams params{1.0 / 3.0, 1.0 / 3.0, 0.3};
  const PlatformPair pair{1.0 / 3.0, 2.0 / 3.0};
  const SecuredInterval s1 = secured_interval(Candidate::one, pair, params);
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const double m = (k + 0.5) / n;
    const SubgameStatus st = classify(pair, Median{m}, params);
    const bool inside = m > s1.lo && m < s1.hi;
    const bool is_secured1 = st == SubgameStatus::secured(Candidate::one);
    CHECK(inside == is_secured1);
  }
}

TEST_CASE("classify is invariant under relabeling and reflection") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(0.05, 5.0);
  for (int i = 0; i < 50; ++i) {
    const double x1 = unit(rng), x2 = unit(rng), m = unit(rng);
    const double a1 = cost(rng), a2 = cost(rng);
    const GameParams params{a1, a2, 0.3};
    const GameParams mirrored{a2, a1, 0.3};
    const SubgameStatus st = classify(PlatformPair{x1, x2}, Median{m}, params);
    const SubgameStatus mt =
        classify(PlatformPair{1.0 - x2, 1.0 - x1}, Median{1.0 - m}, mirrored);
    CHECK(st.kind() == mt.kind());
    if (st.has_roles()) {
      CHECK(other(st.favorite()) == mt.favorite());
    }
  }
}

TEST_CASE("decision branches are exclusive on an m grid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(0.05, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    double x1 = unit(rng), x2 = unit(rng);
    if (x1 == x2) continue;
    const GameParams params{cost(rng), cost(rng), 0.3};
    const PlatformPair pair{x1, x2};
    const SecuredInterval s1 = secured_interval(Candidate::one, pair, params);
    const SecuredInterval s2 = secured_interval(Candidate::two, pair, params);
    for (int k = 0; k < 10000; ++k) {
      const double m = (k + 0.5) / 10000.0;
      const SubgameStatus st = classify(pair, Median{m}, params);
      if (st.kind() == SubgameStatus::Kind::weak_favorite) {
        // a weak favorite can never be inside his own secured interval
        const SecuredInterval& own =
            st.weak_favorite_id() == Candidate::one ? s1 : s2;
        const bool in_own = m > own.lo && m < own.hi;
        CHECK_FALSE(in_own);
      }
    }
  }
}
