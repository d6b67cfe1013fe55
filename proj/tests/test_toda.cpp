#include <random>

#include <gtest/gtest.h>

#include <bcj/quad.hpp>
#include <bcj/toda.hpp>

using namespace bcj;

namespace {

JacobiSpec<double> random_spec(std::mt19937_64& g, int N)
{
    std::uniform_real_distribution<double> ua(0.5, 2.0), ub(-1.0, 1.0);
    std::vector<double> a(N - 1), b(N);
    for (auto& x : a)
        x = ua(g);
    for (auto& x : b)
        x = ub(g);
    return JacobiSpec<double>(1.0, a, b);
}

const JacobiSpec<double> two_site(1.0, {1.0}, {0.0, 0.0});

}  // namespace

TEST(Moser, TwoAtomWeights)
{
    auto mu0 = spectral_measure(two_site);
    for (double t : {0.0, 0.3, -0.7, 2.0}) {
        auto mu = moser_evolve(mu0, t);
        EXPECT_NEAR(mu.atoms[0].weight, (1 - std::tanh(2 * t)) / 2, 1e-14);
        EXPECT_NEAR(mu.atoms[1].weight, (1 + std::tanh(2 * t)) / 2, 1e-14);
        EXPECT_NEAR(mu.total_weight(), 1.0, 1e-15);
    }
    EXPECT_THROW(moser_evolve(mu0, 400.0), NumericalError);
}

TEST(Moser, Moments)
{
    auto mu0 = spectral_measure(two_site);
    for (double t : {0.0, 0.25, 1.0}) {
        auto s = toda_moments(mu0, t, 3);
        EXPECT_NEAR(s[0], 1.0, 1e-15);
        EXPECT_NEAR(s[1], std::tanh(2 * t), 1e-14);
        EXPECT_NEAR(s[2], 1.0, 1e-14);
        EXPECT_NEAR(s[3], std::tanh(2 * t), 1e-14);
    }
}

TEST(Moser, RecursionResidualIsSecondOrder)
{
    std::mt19937_64 g(41);
    auto mu0 = spectral_measure(random_spec(g, 5));
    double r1 = recursion_residual(mu0, 0.4, 6, 1e-2);
    double r2 = recursion_residual(mu0, 0.4, 6, 5e-3);
    EXPECT_NEAR(r1 / r2, 4.0, 0.1);
    EXPECT_LT(recursion_residual(mu0, 0.4, 6, 1e-4), 1e-4 * r1);
    EXPECT_LT(recursion_residual(SpectralMeasure<double>{{{0.3, 1.0}}}, 0.0, 4, 1e-3), 1e-9);
}

TEST(TodaSolve, TwoSiteClosedForm)
{
    for (double t : {0.0, 0.5, -1.0, 1.5}) {
        auto st = toda_solve(two_site, t);
        EXPECT_NEAR(st.spec.a()[0], 1.0 / std::cosh(2 * t), 1e-12);
        EXPECT_NEAR(st.spec.b()[0], std::tanh(2 * t), 1e-12);
        EXPECT_NEAR(st.spec.b()[1], -std::tanh(2 * t), 1e-12);
    }
}

TEST(TodaSolve, InitialTimeIsIdentity)
{
    std::mt19937_64 g(42);
    auto s = random_spec(g, 6);
    auto st = toda_solve(s, 0.0);
    for (int k = 0; k < 5; ++k)
        EXPECT_NEAR(st.spec.a()[k], s.a()[k], 1e-9);
    for (int k = 0; k < 6; ++k)
        EXPECT_NEAR(st.spec.b()[k], s.b()[k], 1e-9);
}

TEST(TodaSolve, MatchesOdeAndPreservesSpectrum)
{
    std::mt19937_64 g(43);
    for (int N = 2; N <= 6; ++N) {
        auto s = random_spec(g, N);
        auto st = toda_solve(s.cast<quad>(), quad(0.5));
        auto ode = toda_ode_oracle(s, 0.5, 1e-3);
        for (int k = 0; k < N - 1; ++k)
            EXPECT_NEAR(static_cast<double>(st.spec.a()[k]), ode.a()[k], 1e-8);
        for (int k = 0; k < N; ++k)
            EXPECT_NEAR(static_cast<double>(st.spec.b()[k]), ode.b()[k], 1e-8);
        auto e0 = eig_spectral_data(s).eigenvalues;
        auto e1 = eig_spectral_data(ode).eigenvalues;
        for (int k = 0; k < N; ++k)
            EXPECT_NEAR(e0[k], e1[k], 1e-10);
    }
}

TEST(TodaOde, Examples)
{
    auto one = toda_ode_oracle(JacobiSpec<double>(1.0, {}, {0.3}), 2.0, 0.1);
    EXPECT_EQ(one.b()[0], 0.3);
    auto two = toda_ode_oracle(two_site, 1.0, 1e-3);
    EXPECT_NEAR(two.a()[0], 1.0 / std::cosh(2.0), 1e-12);
    EXPECT_NEAR(two.b()[0], std::tanh(2.0), 1e-12);

    std::mt19937_64 g(44);
    auto s = random_spec(g, 7);
    double tr0 = 0.0, tr1 = 0.0;
    auto e = toda_ode_oracle(s, 0.8, 1e-3);
    for (int k = 0; k < 7; ++k) {
        tr0 += s.b()[k];
        tr1 += e.b()[k];
    }
    EXPECT_NEAR(tr0, tr1, 1e-10);
}
