#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zeno/zeno_dynamics.hpp"
#include "test_support.hpp"

using namespace zeno;
namespace zt = zeno::testing;

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(ZenoSchedule(0.0, 10), InvalidSchedule);
    CHECK_THROWS_AS(ZenoSchedule(-1.0, 10), InvalidSchedule);
    CHECK_THROWS_AS(ZenoSchedule(1.0, 0), InvalidSchedule);
    const ZenoSchedule s(2.0, 8);
    CHECK(s.tau() == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("frequency table is antisymmetric with zero diagonal") {
    auto rng = zt::make_rng(41);
    const Hamiltonian h(zt::random_hermitian(rng, 5));
    const FrequencyTable freq(h.spectral);
    for (Index m = 0; m < 5; ++m) {
        CHECK(freq.omega(m, m) == 0.0);
        for (Index k = 0; k < 5; ++k) {
            CHECK(freq.omega(m, k) == -freq.omega(k, m));
        }
    }
}

TEST_CASE("short-time reliability diagnostic") {
    const zt::RabiSystem rabi; // level splitting 1
    CHECK_FALSE(zeno_diagnostics(rabi.h, ZenoSchedule(1.0, 1)).short_time_reliable);
    const ZenoDiagnostics fine = zeno_diagnostics(rabi.h, ZenoSchedule(1.0, 10));
    CHECK(fine.short_time_reliable);
    CHECK(fine.tau_omega_max == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("energy variance of the Rabi preset is omega^2/4") {
    const zt::RabiSystem rabi(1.0);
    CHECK(energy_variance(rabi.h, rabi.a, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(energy_variance(rabi.h, rabi.a, 1) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("free evolution at t = 0 is a delta at the preparation") {
    auto rng = zt::make_rng(42);
    const Hamiltonian h(zt::random_hermitian(rng, 4));
    const Observable a(zt::random_hermitian(rng, 4));
    const OutcomeDistribution dist = free_evolution_distribution(h, a, 2, 0.0);
    CHECK(dist.weights(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("free evolution of the Rabi system follows the closed form") {
    const double omega = 1.3;
    const zt::RabiSystem rabi(omega);
    for (double t : {0.0, 0.2, 0.9, 2.4, 3.14}) {
        const OutcomeDistribution dist = free_evolution_distribution(rabi.h, rabi.a, 1, t);
        const double c = std::cos(0.5 * omega * t);
        const double s = std::sin(0.5 * omega * t);
        CHECK(dist.weights(1) == doctest::Approx(c * c).epsilon(1e-12));
        CHECK(dist.weights(0) == doctest::Approx(s * s).epsilon(1e-12));
    }
}

TEST_CASE("commuting observable: free evolution never leaves the preparation") {
    const zt::CommutingSystem sys;
    for (double t : {0.1, 1.0, 7.3}) {
        const OutcomeDistribution dist = free_evolution_distribution(sys.h, sys.a, 1, t);
        CHECK(dist.weights(1) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("survival component matches the cosine double-sum form") {
    auto rng = zt::make_rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const Hamiltonian h(zt::random_hermitian(rng, 4));
        const Observable a(zt::random_hermitian(rng, 4));
        const double t = 0.9;
        const FrequencyTable freq(h.spectral);
        const TransitionMatrix p = transition_matrix(a, h);
        for (Index n0 = 0; n0 < 4; ++n0) {
            double cosine_sum = 0.0;
            for (Index m = 0; m < 4; ++m) {
                for (Index k = 0; k < 4; ++k) {
                    cosine_sum += std::cos(freq.omega(m, k) * t) * p.p(n0, m) * p.p(n0, k);
                }
            }
            const OutcomeDistribution dist = free_evolution_distribution(h, a, n0, t);
            CHECK(std::abs(dist.weights(n0) - cosine_sum) <= 1e-9);
        }
    }
}

TEST_CASE("free survival family equals the squared survival amplitudes") {
    auto rng = zt::make_rng(44);
    const Hamiltonian h(zt::random_hermitian(rng, 5));
    const Observable a(zt::random_hermitian(rng, 5));
    const double t = 1.4;
    const OutcomeDistribution family = free_survival_family(h, a, t);
    CHECK(family.mode == DistributionMode::PaperLiteral);
    for (Index n = 0; n < 5; ++n) {
        const double direct = std::norm(survival_amplitude(h, a, n, t));
        CHECK(std::abs(family.weights(n) - direct) <= 1e-12);
    }
}

TEST_CASE("free evolution entropy") {
    const zt::RabiSystem rabi(1.0);
    CHECK(free_evolution_entropy(rabi.h, rabi.a, 1, 0.0).value == 0.0);
    // omega*t = pi/2 puts the distribution at (1/2, 1/2)
    CHECK(free_evolution_entropy(rabi.h, rabi.a, 1, std::numbers::pi / 2).value ==
          doctest::Approx(std::numbers::ln2).epsilon(1e-12));

    const zt::CommutingSystem sys;
    for (double t : {0.5, 2.0}) {
        CHECK(free_evolution_entropy(sys.h, sys.a, 0, t).value <= 1e-12);
    }
}

TEST_CASE("short-time survival: commuting case stays at one") {
    const zt::CommutingSystem sys;
    for (double tau : {0.0, 0.4, 2.0}) {
        CHECK(survival_short_time(sys.h, sys.a, 0, tau) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("short-time survival: Rabi hand value") {
    const zt::RabiSystem rabi(1.0);
    CHECK(survival_short_time(rabi.h, rabi.a, 1, 0.1) ==
          doctest::Approx(0.9975).epsilon(1e-13));
}

TEST_CASE("short-time survival equals 1 - tau^2 Var") {
    auto rng = zt::make_rng(45);
    std::uniform_int_distribution<int> dims(2, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const Index d = dims(rng);
        const Hamiltonian h(zt::random_hermitian(rng, d));
        const Observable a(zt::random_hermitian(rng, d));
        const FrequencyTable freq(h.spectral);
        const double tau = 0.5 / std::max(1.0, freq.max_abs_value());
        std::uniform_int_distribution<Index> pick(0, d - 1);
        const Index n0 = pick(rng);
        const double lhs = survival_short_time(h, a, n0, tau);
        const double rhs = 1.0 - tau * tau * energy_variance(h, a, n0);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("short-time survival error is fourth order in tau") {
    auto rng = zt::make_rng(46);
    for (int trial = 0; trial < 5; ++trial) {
        const Hamiltonian h(zt::random_hermitian(rng, 4));
        const Observable a(zt::random_hermitian(rng, 4));
        const FrequencyTable freq(h.spectral);
        const double tau = 0.2 / std::max(1.0, freq.max_abs_value());
        const auto error = [&](double step) {
            const double exact = std::norm(survival_amplitude(h, a, 0, step));
            return std::abs(exact - survival_short_time(h, a, 0, step));
        };
        const double e1 = error(tau);
        const double e2 = error(tau / 2.0);
        REQUIRE(e2 > 1e-13); // stay above rounding noise
        CHECK(e1 / e2 >= 10.0);
        CHECK(e1 / e2 <= 22.0);
    }
}

TEST_CASE("zeno survival with N = 1 reduces to the single-step formula") {
    const zt::RabiSystem rabi(1.0);
    const ZenoSchedule one(0.5, 1);
    const double single = survival_short_time(rabi.h, rabi.a, 1, 0.5);
    CHECK(zeno_survival(rabi.h, rabi.a, 1, one, ZenoFormula::Corrected) ==
          doctest::Approx(single).epsilon(1e-14));
    CHECK(zeno_survival(rabi.h, rabi.a, 1, one, ZenoFormula::PaperLiteral) ==
          doctest::Approx(single).epsilon(1e-14));
}

TEST_CASE("zeno survival: corrected Rabi value at N = 1000") {
    const zt::RabiSystem rabi(1.0);
    const double p =
        zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(1.0, 1000), ZenoFormula::Corrected);
    // (1 - 2.5e-7)^1000 = 1 - 2.5e-4 + O(1e-8)
    CHECK(std::abs(p - (1.0 - 2.5e-4)) <= 1e-7);
}

TEST_CASE("zeno survival: commuting case is one in both modes") {
    const zt::CommutingSystem sys;
    for (long long n : {1LL, 10LL, 1000LL}) {
        const ZenoSchedule schedule(2.0, n);
        CHECK(zeno_survival(sys.h, sys.a, 0, schedule, ZenoFormula::Corrected) == 1.0);
        CHECK(zeno_survival(sys.h, sys.a, 0, schedule, ZenoFormula::PaperLiteral) == 1.0);
    }
}

TEST_CASE("zeno survival: corrected mode rejects steps outside validity") {
    const zt::RabiSystem rabi(1.0);
    // tau^2 Var = pi^2/4 > 1
    CHECK_THROWS_AS(zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(std::numbers::pi, 1),
                                  ZenoFormula::Corrected),
                    InvalidSchedule);
}

TEST_CASE("zeno survival: modes agree at N = 1 and diverge for N > 1") {
    const zt::RabiSystem rabi(1.0);
    const double c1 = zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(0.8, 1), ZenoFormula::Corrected);
    const double p1 =
        zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(0.8, 1), ZenoFormula::PaperLiteral);
    CHECK(std::abs(c1 - p1) <= 1e-14);

    const double c10 =
        zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(1.0, 10), ZenoFormula::Corrected);
    const double p10 =
        zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(1.0, 10), ZenoFormula::PaperLiteral);
    CHECK(std::abs(c10 - p10) > 1e-3);
}

TEST_CASE("zeno survival: paper-literal values outside [0,1] are clamped and flagged") {
    const zt::RabiSystem rabi(1.0);
    bool clamped = false;
    // base = 1 - (100/2)*0.5 = -24
    const double p = zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(10.0, 1),
                                   ZenoFormula::PaperLiteral, &clamped);
    CHECK(p == 0.0);
    CHECK(clamped);

    clamped = true;
    zeno_survival(rabi.h, rabi.a, 1, ZenoSchedule(0.1, 4), ZenoFormula::PaperLiteral, &clamped);
    CHECK_FALSE(clamped);
}

TEST_CASE("asymptotic entropy: commuting case vanishes") {
    const zt::CommutingSystem sys;
    CHECK(zeno_entropy_asymptotic(sys.h, sys.a, ZenoSchedule(1.0, 100)) == 0.0);
}

TEST_CASE("asymptotic entropy: Rabi hand value at N = 100") {
    const zt::RabiSystem rabi(1.0);
    // inner sum is 1/2 for each of the two preparations:
    // S = (1/200) * 2 * (1/2) * exp(-1/400)
    const double expected = std::exp(-1.0 / 400.0) / 200.0;
    const double s = zeno_entropy_asymptotic(rabi.h, rabi.a, ZenoSchedule(1.0, 100));
    CHECK(s == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(s - 4.9875e-3) <= 1e-6);
}

TEST_CASE("asymptotic entropy scales like 1/N up to the exponential factor") {
    const zt::RabiSystem rabi(1.0);
    const double s100 = zeno_entropy_asymptotic(rabi.h, rabi.a, ZenoSchedule(1.0, 100));
    const double s1000 = zeno_entropy_asymptotic(rabi.h, rabi.a, ZenoSchedule(1.0, 1000));
    CHECK(10.0 * s1000 / s100 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(zeno_asymptotic_regime_ok(rabi.h, rabi.a, ZenoSchedule(1.0, 100)));
    CHECK_FALSE(zeno_asymptotic_regime_ok(rabi.h, rabi.a, ZenoSchedule(10.0, 10)));
}

TEST_CASE("chain kernel is doubly stochastic") {
    auto rng = zt::make_rng(47);
    const Hamiltonian h(zt::random_hermitian(rng, 6));
    const Observable a(zt::random_hermitian(rng, 6));
    const RealMatrix kernel = zeno_step_kernel(h, a, 0.37);
    for (Index i = 0; i < 6; ++i) {
        CHECK(std::abs(kernel.row(i).sum() - 1.0) <= 1e-9);
        CHECK(std::abs(kernel.col(i).sum() - 1.0) <= 1e-9);
    }
}

TEST_CASE("chain with N = 1 equals free evolution at tau") {
    auto rng = zt::make_rng(48);
    const Hamiltonian h(zt::random_hermitian(rng, 4));
    const Observable a(zt::random_hermitian(rng, 4));
    const OutcomeDistribution chain = zeno_chain_distribution(h, a, 2, ZenoSchedule(0.9, 1));
    const OutcomeDistribution free = free_evolution_distribution(h, a, 2, 0.9);
    CHECK(zt::tv_distance(chain.weights, free.weights) <= 1e-12);
}

TEST_CASE("chain: full Rabi flip at T = pi, suppressed flip for large N") {
    const zt::RabiSystem rabi(1.0);
    const OutcomeDistribution flip =
        zeno_chain_distribution(rabi.h, rabi.a, 1, ZenoSchedule(std::numbers::pi, 1));
    CHECK(flip.weights(1) <= 1e-12); // survival annihilated
    CHECK(flip.weights(0) == doctest::Approx(1.0).epsilon(1e-12));

    const OutcomeDistribution pinned =
        zeno_chain_distribution(rabi.h, rabi.a, 1, ZenoSchedule(std::numbers::pi, 2000));
    CHECK(pinned.weights(1) >= 0.99);
}

TEST_CASE("chain entropy decreases toward zero with measurement count") {
    const zt::RabiSystem rabi(1.0);
    const auto entropy_at = [&](long long n) {
        return zeno_chain_entropy(rabi.h, rabi.a, 1, ZenoSchedule(1.0, n)).value;
    };
    const double s1 = entropy_at(1);
    const double s10 = entropy_at(10);
    const double s100 = entropy_at(100);
    const double s1000 = entropy_at(1000);
    CHECK(s10 < s1);
    CHECK(s100 < s10);
    CHECK(s1000 < s100);
    CHECK(s1000 < 0.01);

    const auto survival_at = [&](long long n) {
        return zeno_chain_distribution(rabi.h, rabi.a, 1, ZenoSchedule(1.0, n)).weights(1);
    };
    CHECK(survival_at(100) > survival_at(10));
    CHECK(survival_at(1000) > survival_at(100));
}

TEST_CASE("chain entropy decreases for the commuting and generic 3-level systems") {
    const zt::CommutingSystem commuting;
    for (long long n : {1LL, 10LL, 100LL}) {
        CHECK(zeno_chain_entropy(commuting.h, commuting.a, 0, ZenoSchedule(1.0, n)).value <=
              1e-12);
    }

    auto rng = zt::make_rng(49);
    const Hamiltonian h(zt::random_hermitian(rng, 3));
    const Observable a(zt::random_hermitian(rng, 3));
    const auto entropy_at = [&](long long n) {
        return zeno_chain_entropy(h, a, 0, ZenoSchedule(1.0, n)).value;
    };
    CHECK(entropy_at(100) < entropy_at(10));
    CHECK(entropy_at(1000) < entropy_at(100));
}

TEST_CASE("monte carlo: commuting system is a delta for any seed") {
    const zt::CommutingSystem sys;
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const OutcomeDistribution empirical =
            monte_carlo_zeno(sys.h, sys.a, 1, ZenoSchedule(1.0, 5), 2000, seed);
        CHECK(empirical.weights(1) == 1.0);
    }
}

TEST_CASE("monte carlo: identical seeds give identical output") {
    const zt::RabiSystem rabi(1.0);
    const ZenoSchedule schedule(1.0, 10);
    const OutcomeDistribution a = monte_carlo_zeno(rabi.h, rabi.a, 1, schedule, 20000, 77);
    const OutcomeDistribution b = monte_carlo_zeno(rabi.h, rabi.a, 1, schedule, 20000, 77);
    CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() == 0.0);

    const OutcomeDistribution c = monte_carlo_zeno(rabi.h, rabi.a, 1, schedule, 20000, 78);
    CHECK((a.weights - c.weights).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("monte carlo tracks the exact chain distribution") {
    const zt::RabiSystem rabi(1.0);
    const ZenoSchedule schedule(1.0, 10);
    const OutcomeDistribution exact = zeno_chain_distribution(rabi.h, rabi.a, 1, schedule);
    const OutcomeDistribution empirical =
        monte_carlo_zeno(rabi.h, rabi.a, 1, schedule, 100000, 20240601);
    CHECK(zt::tv_distance(exact.weights, empirical.weights) <= 0.01);
}

TEST_CASE("monte carlo error shrinks with the trial count") {
    const zt::RabiSystem rabi(1.0);
    const ZenoSchedule schedule(1.0, 4);
    const OutcomeDistribution exact = zeno_chain_distribution(rabi.h, rabi.a, 1, schedule);
    const double small = zt::tv_distance(
        exact.weights, monte_carlo_zeno(rabi.h, rabi.a, 1, schedule, 10000, 5).weights);
    const double large = zt::tv_distance(
        exact.weights, monte_carlo_zeno(rabi.h, rabi.a, 1, schedule, 1000000, 5).weights);
    CHECK(large < small);
}

TEST_CASE("monte carlo input contracts") {
    const zt::RabiSystem rabi(1.0);
    CHECK_THROWS_AS(monte_carlo_zeno(rabi.h, rabi.a, 1, ZenoSchedule(1.0, 2), 0, 1),
                    InvalidSchedule);
    CHECK_THROWS_AS(monte_carlo_zeno(rabi.h, rabi.a, 5, ZenoSchedule(1.0, 2), 10, 1),
                    IndexOutOfRange);
}
