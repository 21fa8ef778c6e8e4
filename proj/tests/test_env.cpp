#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fairmab/env.hpp"

TEST_CASE("replication_seed reproduces the published splitmix64 stream") {
  // Seeding walks the splitmix64 sequence, so the reference vectors for
  // that generator pin the scheme down exactly.
  const std::uint64_t seed0[] = {16294208416658607535ULL, 7960286522194355700ULL,
                                 487617019471545679ULL};
  for (std::uint64_t i = 0; i < 3; ++i) {
    CHECK(fairmab::replication_seed(0, i) == seed0[i]);
  }

  const std::uint64_t seed1234567[] = {6457827717110365317ULL, 3203168211198807973ULL,
                                       9817491932198370423ULL, 4593380528125082431ULL,
                                       16408922859458223821ULL};
  for (std::uint64_t i = 0; i < 5; ++i) {
    CHECK(fairmab::replication_seed(1234567, i) == seed1234567[i]);
  }

  CHECK(fairmab::mix64(0) == 16294208416658607535ULL);
}

TEST_CASE("learner_stream_seed decouples the learner stream from the reward stream") {
  CHECK(fairmab::learner_stream_seed(42) == 18103109909017004644ULL);
  CHECK(fairmab::learner_stream_seed(42) != 42);
  CHECK(fairmab::learner_stream_seed(1) != fairmab::learner_stream_seed(2));
  CHECK(fairmab::learner_stream_seed(7) != fairmab::replication_seed(7, 0));
}

TEST_CASE("uniform_unit stays in [0,1) and is a pure function of the generator") {
  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = fairmab::uniform_unit(a);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == fairmab::uniform_unit(b));
    sum += u;
  }
  CHECK(sum / 10000.0 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("degenerate means are deterministic") {
  fairmab::BernoulliEnvironment env({0.0, 1.0}, 5);
  for (int i = 0; i < 200; ++i) {
    CHECK(env.draw_reward(0) == 0);
    CHECK(env.draw_reward(1) == 1);
  }
}

TEST_CASE("draw_reward consumes exactly one generator step per pull") {
  const std::vector<double> means = {0.3, 0.7};
  fairmab::BernoulliEnvironment env(means, 1234);
  std::mt19937_64 shadow(1234);
  for (int i = 0; i < 500; ++i) {
    const std::size_t arm = static_cast<std::size_t>(i % 2);
    const int expected = fairmab::uniform_unit(shadow) < means[arm] ? 1 : 0;
    CHECK(env.draw_reward(arm) == expected);
  }
}

TEST_CASE("empirical frequencies approach the means over many fixed-seed draws") {
  const std::vector<double> means = {0.3, 0.7};
  const int n = 2000;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    fairmab::BernoulliEnvironment env(means, seed);
    for (std::size_t arm = 0; arm < means.size(); ++arm) {
      int hits = 0;
      for (int i = 0; i < n; ++i) {
        hits += env.draw_reward(arm);
      }
      const double mu = means[arm];
      const double sigma = std::sqrt(mu * (1.0 - mu) / n);
      CHECK(std::fabs(static_cast<double>(hits) / n - mu) <= 4.0 * sigma);
    }
  }
}

TEST_CASE("environment construction validates its inputs") {
  CHECK_THROWS_AS(fairmab::BernoulliEnvironment({}, 1), fairmab::Error);
  CHECK_THROWS_AS(fairmab::BernoulliEnvironment({0.5, 1.5}, 1), fairmab::Error);
  CHECK_THROWS_AS(fairmab::BernoulliEnvironment({-0.1}, 1), fairmab::Error);

  fairmab::BernoulliEnvironment env({0.5}, 1);
  CHECK(env.arms() == 1);
  CHECK(env.seed() == 1);
  CHECK_THROWS_AS(env.draw_reward(1), fairmab::Error);
}

TEST_CASE("make_env builds the same environment as the constructor") {
  auto a = fairmab::make_env({0.4, 0.6}, 77);
  fairmab::BernoulliEnvironment b({0.4, 0.6}, 77);
  CHECK(a.arms() == 2);
  CHECK(a.seed() == 77);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.draw_reward(i % 2) == b.draw_reward(i % 2));
  }
}
