#include <doctest.h>

#include <cmath>
#include <random>

#include "qfimeter/analytic_limits.hpp"
#include "qfimeter/errors.hpp"
#include "test_helpers.hpp"

using namespace qfimeter;
using qfimeter::testing::max_abs;

TEST_CASE("tilted frame") {
  const TiltedFrame f = tilted_frame(3.0, 4.0);
  CHECK(f.big_t == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(f.cos_phi == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(f.sin_phi == doctest::Approx(-0.6).epsilon(1e-15));
  CHECK(tilted_frame(0.0, 2.0).cos_phi == 1.0);
  CHECK_THROWS_AS(tilted_frame(0.0, 0.0), InvalidParams);
}

TEST_CASE("no-interaction limit") {
  CHECK(fisher_limit_no_interaction({0.0, 1.0, 0.0, 4}) == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(fisher_limit_no_interaction({1.0, 0.0, 0.0, 4}) == doctest::Approx(0.0));
  CHECK(fisher_limit_no_interaction({1.0, 1.0, 0.0, 6}) == doctest::Approx(18.0).epsilon(1e-14));
  CHECK_THROWS_AS(fisher_limit_no_interaction({1.0, 1.0, 0.5, 6}), InvalidParams);
}

TEST_CASE("strong-interaction limit") {
  CHECK(fisher_limit_strong_interaction(8) == 64.0);
  CHECK(fisher_limit_strong_interaction(1) == 1.0);
  for (int n : {2, 4, 8}) {
    for (double u : {1e4, -1e4}) {
      CAPTURE(n);
      CAPTURE(u);
      const QfiPoint p = evaluate_point({1.0, 1.0, u, n});
      CHECK(std::abs(p.fisher_max / fisher_limit_strong_interaction(n) - 1.0) <= 1e-2);
    }
  }
}

TEST_CASE("interaction is inert for a single atom") {
  // J_z^2 = I/4 at N = 1, so f_M keeps its u = 0 value.
  CHECK(evaluate_point({1.0, 1.0, 1e4, 1}).fisher_scaled ==
        doctest::Approx(evaluate_point({1.0, 1.0, 0.0, 1}).fisher_scaled).epsilon(1e-9));
}

TEST_CASE("u = 0 approaches cos^2(phi) with a 1/x^2 envelope") {
  // tau = eps = x, so cos^2(phi) = 1/2.
  for (double x : {1e2, 1e3, 1e4}) {
    const QfiPoint p = evaluate_point({x, x, 0.0, 8});
    CAPTURE(x);
    CHECK(std::abs(p.fisher_scaled - 0.5) <= 1.0 / (x * x));
    CHECK(p.fisher_max / fisher_limit_no_interaction({x, x, 0.0, 8}) ==
          doctest::Approx(1.0).epsilon(1e-2));
  }
}

TEST_CASE("small scaling gives f_M -> 1") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    HamiltonianParams p = testing::random_params(rng, 2, 2, 5, 8);
    p.tau *= 1e-4;
    p.eps *= 1e-4;
    p.u *= 1e-4;
    CHECK(std::abs(evaluate_point(p).fisher_scaled - 1.0) <= 1e-6);
  }
}

TEST_CASE("large eps gives f_M -> 1") {
  for (int n : {2, 4, 8}) {
    CHECK(std::abs(evaluate_point({1.0, 1e4, 2.0, n}).fisher_scaled - 1.0) <= 1e-3);
  }
}

TEST_CASE("large-scaling local generator") {
  SUBCASE("commuting case is K' itself") {
    const PointAnalysis pa = analyze_point({0.0, 1.0, 2.0, 4});
    CHECK(max_abs(local_generator_large_scaling(pa.eig, pa.kprime).matrix() -
                  pa.kprime.matrix()) < 1e-13);
  }
  SUBCASE("pure tunnelling averages J_z away") {
    const PointAnalysis pa = analyze_point({1.0, 0.0, 0.0, 4});
    CHECK(max_abs(local_generator_large_scaling(pa.eig, pa.kprime).matrix()) < 1e-12);
  }
  SUBCASE("L(xK) converges to the limit as 1/x") {
    const HamiltonianParams base{1.0, 0.7, 1.3, 4};
    const PointAnalysis pa = analyze_point(base);
    const ComplexMatrix lim = local_generator_large_scaling(pa.eig, pa.kprime).matrix();
    auto err = [&](double x) {
      const PointAnalysis s = analyze_point({x * base.tau, x * base.eps, x * base.u, 4});
      return max_abs(s.generator.matrix.matrix() - lim);
    };
    const double e1 = err(1e2), e2 = err(1e3);
    CHECK(e2 < 1e-2);
    CHECK(e1 / e2 == doctest::Approx(10.0).epsilon(0.3));
  }
}

TEST_CASE("attractive ground state approaches NOON") {
  CHECK(noon_ground_state_overlap({1.0, 0.0, -1e3, 4}) > 0.99);
  CHECK(noon_ground_state_overlap({1.0, 0.0, -1e3, 8}) > 0.99);
  CHECK(noon_ground_state_overlap({1.0, 0.0, -1e3, 4}) ==
        doctest::Approx(0.99999822223170387).epsilon(1e-9));
  // Weak attraction: the ground state is the J_x eigenstate, overlap 2^{1-N}.
  CHECK(noon_ground_state_overlap({1.0, 0.0, -1e-9, 4}) == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(noon_ground_state_overlap({1.0, 0.0, -1e-9, 6}) ==
        doctest::Approx(1.0 / 32).epsilon(1e-8));
  // No tunnelling: the ground doublet is spanned by |N,0>, |0,N>.
  CHECK(noon_ground_state_overlap({0.0, 0.0, -1.0, 4}) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(noon_ground_state_overlap({1.0, 0.0, 1.0, 4}), InvalidParams);
  CHECK_THROWS_AS(noon_ground_state_overlap({1.0, 0.0, 0.0, 4}), InvalidParams);
  CHECK_THROWS_AS(noon_ground_state_overlap({1.0, 0.1, -1.0, 4}), InvalidParams);
}

TEST_CASE("eps -> 0 point") {
  CHECK(fisher_eps_zero({0.0, 5.0, 3.0, 4}).fisher_scaled == doctest::Approx(1.0).epsilon(1e-12));
  const QfiPoint p = fisher_eps_zero({1.0, 0.3, 2.0, 8});
  CHECK(p.params.eps == 0.0);
  CHECK(p.fisher_scaled == doctest::Approx(0.926922847717714).epsilon(1e-10));
  const double near = evaluate_point({1.0, 1e-6, 2.0, 8}).fisher_scaled;
  CHECK(std::abs(near - p.fisher_scaled) <= 1e-4);
}

TEST_CASE("eps -> 0 convergence is quadratic") {
  const double f0 = fisher_eps_zero({1.0, 0.0, 2.0, 8}).fisher_scaled;
  double prev = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const double dev = std::abs(evaluate_point({1.0, eps, 2.0, 8}).fisher_scaled - f0);
    CAPTURE(eps);
    if (prev > 0.0) CHECK(prev / dev == doctest::Approx(100.0).epsilon(0.05));
    prev = dev;
  }
}
