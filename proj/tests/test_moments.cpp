#include <random>

#include <gtest/gtest.h>

#include <bcj/moments.hpp>
#include <bcj/quad.hpp>

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

long long binom(int n, int k)
{
    long long c = 1;
    for (int i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

double rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST(Lambda, FirstRows)
{
    auto L = lambda_matrix(4);
    LambdaMatrix want(4, 4);
    want << 1, 0, 0, 0, 0, 1, 0, 0, -1, 0, 1, 0, 0, -2, 0, 1;
    EXPECT_EQ(L, want);
}

TEST(Lambda, MatchesBinomialFormula)
{
    // T_{t+1}(lambda) = sum_m (-1)^m C(t-m, m) lambda^{t-2m}
    auto L = lambda_matrix(20);
    for (int t = 0; t < 20; ++t)
        for (int j = 0; j <= t; ++j) {
            long long want = 0;
            if ((t - j) % 2 == 0) {
                int m = (t - j) / 2;
                want = (m % 2 ? -1 : 1) * binom(t - m, m);
            }
            EXPECT_EQ(L(t, j), want) << t << "," << j;
        }
}

TEST(MomentsResponse, Examples)
{
    EXPECT_EQ(moments_to_response(MomentSequence<double>{1, 0, 1, 0}), (std::vector<double>{1, 0, 0, 0}));
    EXPECT_EQ(moments_to_response(MomentSequence<double>{1, 0, 0, 0, 0}), (std::vector<double>{1, 0, -1, 0, 1}));
    EXPECT_EQ(response_to_moments(std::vector<double>{1, 0, 0, 0, 0, 0, 0}),
              (MomentSequence<double>{1, 0, 1, 0, 2, 0, 5}));
}

TEST(MomentsResponse, RoundTrip)
{
    std::mt19937_64 g(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        MomentSequence<double> s(1 + trial);
        for (auto& x : s)
            x = u(g);
        auto back = response_to_moments(moments_to_response(s));
        for (std::size_t k = 0; k < s.size(); ++k)
            EXPECT_NEAR(back[k], s[k], 1e-9);
    }
}

TEST(MomentsResponse, AgreesWithSimulatedResponse)
{
    std::mt19937_64 g(32);
    auto spec = random_spec(g, 12);
    auto s = moments_of_measure(spectral_measure(spec), 11);
    auto r = moments_to_response(s);
    auto rw = response_vector(spec, 12);
    for (int t = 0; t < 12; ++t)
        EXPECT_LE(rel(r[t], rw[t]), 1e-10);
}

TEST(Bridge, ConnectingOperatorIsGramOfChebyshevPolynomials)
{
    // C^N_{ij} = sum_k w_k T_{N-i}(l_k) T_{N-j}(l_k), 0-based i, j.
    std::mt19937_64 g(33);
    for (int N = 1; N <= 8; ++N) {
        auto mu = spectral_measure(random_spec(g, 2 * N));
        auto r = moments_to_response(moments_of_measure(mu, 2 * N - 2));
        auto C = connecting_from_response(r, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double want = 0.0;
                for (const auto& at : mu.atoms)
                    want += at.weight * chebyshev_u(N - i, at.lambda) * chebyshev_u(N - j, at.lambda);
                EXPECT_LE(rel(C(i, j), want), 1e-10);
            }
    }
}

TEST(Hankel, Orderings)
{
    MomentSequence<double> s{1, 2, 3, 4, 5};
    auto P = hankel_pair(s, 2);
    Mat<double> S0(2, 2), S1(2, 2);
    S0 << 1, 2, 2, 3;
    S1 << 2, 3, 3, 4;
    EXPECT_EQ(P.S0, S0);
    EXPECT_EQ(P.S1, S1);
    auto Q = P.as(HankelOrdering::reversed);
    EXPECT_EQ(Q.S0, hankel(s, 2, 0, HankelOrdering::reversed));
    EXPECT_EQ(Q.S1, hankel(s, 2, 1, HankelOrdering::reversed));
    EXPECT_THROW(hankel(s, 3, 1, HankelOrdering::classical), DomainError);
}

TEST(BuildB, Examples)
{
    Mat<double> want(2, 2);
    want << 0, 1, 1, 0;
    EXPECT_EQ(build_B(std::vector<double>{1, 0, 0, 0}, 2), want);
    auto B1 = build_B(moments_to_response(MomentSequence<double>{1, 0.37}), 1);
    EXPECT_NEAR(B1(0, 0), 0.37, 1e-15);
}

TEST(BuildB, IsTheLambdaWeightedGram)
{
    std::mt19937_64 g(34);
    for (int N = 1; N <= 8; ++N) {
        auto mu = spectral_measure(random_spec(g, N + 2));
        auto r = moments_to_response(moments_of_measure(mu, 2 * N - 1));
        auto B = build_B(r, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double want = 0.0;
                for (const auto& at : mu.atoms)
                    want += at.weight * at.lambda * chebyshev_u(N - i, at.lambda) * chebyshev_u(N - j, at.lambda);
                EXPECT_LE(rel(B(i, j), want), 1e-10);
                EXPECT_LE(rel(B(i, j), B(j, i)), 1e-12);
            }
    }
}

TEST(Truncated, Examples)
{
    auto res = truncated_moment_spectral(MomentSequence<double>{1, 0, 1, 0}, 2);
    ASSERT_EQ(res.measure.size(), 2u);
    EXPECT_NEAR(res.measure.atoms[0].lambda, -1.0, 1e-12);
    EXPECT_NEAR(res.measure.atoms[1].lambda, 1.0, 1e-12);
    EXPECT_NEAR(res.measure.atoms[0].weight, 0.5, 1e-12);
    EXPECT_NEAR(res.measure.atoms[1].weight, 0.5, 1e-12);

    auto one = truncated_moment_spectral(MomentSequence<double>{1, -0.4}, 1);
    EXPECT_NEAR(one.measure.atoms[0].lambda, -0.4, 1e-15);
    EXPECT_NEAR(one.measure.atoms[0].weight, 1.0, 1e-15);

    auto naive = truncated_moment_naive(MomentSequence<double>{1, 2}, 1);
    EXPECT_NEAR(naive.spec.b()[0], 2.0, 1e-15);
    auto free2 = truncated_moment_naive(MomentSequence<double>{1, 0, 1, 0}, 2);
    EXPECT_NEAR(free2.spec.a()[0], 1.0, 1e-14);
    EXPECT_NEAR(free2.spec.b()[0], 0.0, 1e-14);

    EXPECT_THROW(truncated_moment_spectral(MomentSequence<double>{1, 0, 1}, 2), DomainError);
    EXPECT_THROW(truncated_moment_spectral(MomentSequence<double>{1, 0, -1, 0}, 2), NumericalError);
    EXPECT_THROW(truncated_moment_spectral(MomentSequence<double>{0, 0}, 1), NumericalError);
}

TEST(Truncated, GaussRuleReproducesGivenMoments)
{
    std::mt19937_64 g(35);
    for (int N = 1; N <= 7; ++N) {
        auto s = moments_of_measure(spectral_measure(random_spec(g, N + 3)), 2 * N - 1);
        auto sp = truncated_moment_spectral(s, N);
        auto nv = truncated_moment_naive(s, N);
        auto back = moments_of_measure(sp.measure, 2 * N - 1);
        for (int k = 0; k < 2 * N; ++k)
            EXPECT_LE(rel(back[k], s[k]), 1e-8) << "N=" << N << " k=" << k;
        for (int k = 0; k < N; ++k) {
            EXPECT_NEAR(sp.measure.atoms[k].lambda, nv.measure.atoms[k].lambda, 1e-8);
            EXPECT_NEAR(sp.measure.atoms[k].weight, nv.measure.atoms[k].weight, 1e-8);
        }
    }
}

TEST(Truncated, QuadAgreesUpToTwenty)
{
    std::mt19937_64 g(36);
    auto mu = spectral_measure(random_spec(g, 22).cast<quad>());
    auto s = moments_of_measure(mu, 39);
    auto sp = truncated_moment_spectral(s, 20);
    auto nv = truncated_moment_naive(s, 20);
    for (int k = 0; k < 20; ++k) {
        EXPECT_LT(static_cast<double>(abs(sp.measure.atoms[k].lambda - nv.measure.atoms[k].lambda)), 1e-8);
        EXPECT_LT(static_cast<double>(abs(sp.measure.atoms[k].weight - nv.measure.atoms[k].weight)), 1e-8);
    }
}

TEST(Solvability, Examples)
{
    // uniform measure on [0, 1]
    MomentSequence<double> hs;
    for (int k = 0; k <= 8; ++k)
        hs.push_back(1.0 / (k + 1));
    for (auto kind : {MomentKind::hamburger, MomentKind::stieltjes, MomentKind::hausdorff})
        for (const auto& row : solvability(hs, kind, 4)) {
            EXPECT_TRUE(row.pass);
            EXPECT_TRUE(row.strict);
        }

    // atoms at -1 and 1: Hamburger yes, Stieltjes no
    MomentSequence<double> two{1, 0, 1, 0, 1, 0};
    auto ham = solvability(two, MomentKind::hamburger, 3);
    EXPECT_TRUE(ham[0].pass && ham[1].pass && ham[2].pass);
    EXPECT_TRUE(ham[1].strict);
    EXPECT_FALSE(ham[2].strict);
    EXPECT_FALSE(solvability(two, MomentKind::stieltjes, 2)[1].pass);

    // a point at 2 lies outside [0, 1]
    MomentSequence<double> at2{1, 2, 4, 8};
    EXPECT_TRUE(solvability(at2, MomentKind::stieltjes, 2)[1].pass);
    EXPECT_FALSE(solvability(at2, MomentKind::hausdorff, 1)[0].pass);

    // s_2 < s_1^2 is impossible
    EXPECT_FALSE(solvability(MomentSequence<double>{1, 0, -1}, MomentKind::hamburger, 2)[1].pass);
}

TEST(Indeterminacy, SemicircleForms)
{
    // Moments of the semicircle on [-2, 2]: the free response, C^N = I.
    std::vector<double> r(39, 0.0);
    r[0] = 1.0;
    auto s = response_to_moments(r);
    auto tab = indeterminacy_sequences(s, 20);
    for (int N = 1; N <= 20; ++N) {
        // T_t(0) = 1, 0, -1, 0, ... for t = 1, 2, 3, ...; count the nonzero ones.
        EXPECT_NEAR(tab.gamma_form[N - 1], (N + 1) / 2, 1e-9);
    }
    EXPECT_NEAR(tab.delta_form[0], 0.0, 1e-15);
    EXPECT_NEAR(tab.delta_form[1], 1.0, 1e-15);
    EXPECT_EQ(tab.gamma_trend, "growing");
}

TEST(Indeterminacy, SingleStepForm)
{
    auto tab = indeterminacy_sequences(MomentSequence<double>{2.0}, 1);
    EXPECT_NEAR(tab.gamma_form[0], 0.5, 1e-15);
    EXPECT_NEAR(tab.M[0], 0.5, 1e-15);
}
