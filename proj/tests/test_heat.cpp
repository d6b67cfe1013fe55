#include <random>

#include <gtest/gtest.h>

#include <bcj/heat.hpp>
#include <bcj/quad.hpp>

using namespace bcj;

namespace {

JacobiSpec<double> random_spec(std::mt19937_64& g, int N, double a0 = 1.0)
{
    std::uniform_real_distribution<double> ua(0.5, 2.0), ub(-1.0, 1.0);
    std::vector<double> a(N - 1), b(N);
    for (auto& x : a)
        x = ua(g);
    for (auto& x : b)
        x = ub(g);
    return JacobiSpec<double>(a0, a, b);
}

}  // namespace

TEST(Heat, HandSteps)
{
    auto h = solve_heat(JacobiSpec<double>::free(2), {1.0, 0.0}, 2);
    EXPECT_EQ(h.v(1, 1), 1.0);
    EXPECT_EQ(h.v(2, 1), 0.0);
    EXPECT_EQ(h.v(1, 2), 0.0);
    EXPECT_EQ(h.v(2, 2), 1.0);

    JacobiSpec<double> s(2.0, {0.5}, {1.0, -1.0});
    auto k = solve_heat(s, {1.0, 0.0}, 2);
    EXPECT_EQ(k.v(1, 1), 2.0);
    EXPECT_EQ(k.v(1, 2), 2.0);  // b_1 v_{1,1}
    EXPECT_EQ(k.v(2, 2), 1.0);  // a_1 v_{1,1}
    EXPECT_THROW(solve_heat(s, {1.0}, 2), DomainError);
}

TEST(Heat, FrontIsProductOfA)
{
    std::mt19937_64 g(71);
    auto s = random_spec(g, 8, 1.4);
    std::vector<double> f(8, 0.0);
    f[0] = 1.0;
    auto h = solve_heat(s, f, 8);
    double prod = 1.0;
    for (int n = 1; n <= 8; ++n) {
        prod *= s.a_at(n - 1);
        EXPECT_NEAR(h.v(n, n), prod, 1e-12 * prod);
        for (int m = n + 1; m <= 8; ++m)
            EXPECT_EQ(h.v(m, n), 0.0);
    }
}

TEST(HeatResponse, Examples)
{
    EXPECT_EQ(heat_response(JacobiSpec<double>::free(4), 7), (std::vector<double>{1, 0, 1, 0, 2, 0, 5}));
    EXPECT_EQ(heat_response(JacobiSpec<double>(1.0, {}, {3.0}), 1), (std::vector<double>{1}));
    EXPECT_THROW(heat_response(JacobiSpec<double>::free(2), 7), DomainError);
}

TEST(HeatResponse, ScaledMomentsOfTheMeasure)
{
    std::mt19937_64 g(72);
    for (int N = 1; N <= 10; ++N) {
        auto s = random_spec(g, N, 0.5 + 0.1 * N);
        auto h = heat_response(s, 2 * N);
        auto m = moments_of_measure(spectral_measure(s), 2 * N - 1);
        for (int k = 0; k < 2 * N; ++k)
            EXPECT_NEAR(h[k], s.a0() * m[k], 1e-9 * std::max(1.0, std::abs(h[k])));
    }
}

TEST(HeatConnecting, Examples)
{
    EXPECT_EQ(heat_connecting(std::vector<double>{1, 0, 1}, 2), Mat<double>(Mat<double>::Identity(2, 2)));
    Mat<double> want(2, 2);
    want << 8, 4, 4, 4;  // s_0 * [[s_2, s_1], [s_1, s_0]]
    EXPECT_EQ(heat_connecting(std::vector<double>{2, 2, 4}, 2), want);
    EXPECT_THROW(heat_connecting(std::vector<double>{1, 0}, 2), DomainError);
}

TEST(HeatConnecting, IsGramOfControlMatrix)
{
    std::mt19937_64 g(73);
    for (int T = 1; T <= 8; ++T) {
        auto s = random_spec(g, 2 * T, 0.6 + 0.15 * T);
        auto S = heat_connecting(heat_response(s, 2 * T - 1), T);
        auto V = heat_control_matrix(s, T);
        Mat<double> G = V.transpose() * V;
        for (int i = 0; i < T; ++i)
            for (int j = 0; j < T; ++j)
                EXPECT_NEAR(S(i, j), G(i, j), 1e-10 * std::max(1.0, std::abs(G(i, j))));
    }
}

TEST(HeatInvert, Examples)
{
    auto free = invert_heat(std::vector<double>{1, 0, 1, 0}, 2);
    EXPECT_NEAR(free.a()[0], 1.0, 1e-14);
    EXPECT_NEAR(free.b()[0], 0.0, 1e-14);
    EXPECT_NEAR(free.b()[1], 0.0, 1e-14);
    auto one = invert_heat(std::vector<double>{2.0, 1.0}, 1);
    EXPECT_NEAR(one.a0(), 2.0, 1e-15);
    EXPECT_NEAR(one.b()[0], 0.5, 1e-15);
    EXPECT_THROW(invert_heat(std::vector<double>{1, 0, -1, 0}, 2), NumericalError);
}

TEST(HeatInvert, RoundTrip)
{
    std::mt19937_64 g(74);
    for (int N = 1; N <= 10; ++N) {
        auto s = random_spec(g, N, 0.8);
        auto q = s.cast<quad>();
        auto back = invert_heat(heat_response(q, 2 * N), N);
        EXPECT_LT(static_cast<double>(abs(back.a0() - q.a0())), 1e-10);
        for (int k = 0; k < N - 1; ++k)
            EXPECT_LT(static_cast<double>(abs(back.a()[k] - q.a()[k])), 1e-10) << "N=" << N;
        for (int k = 0; k < N; ++k)
            EXPECT_LT(static_cast<double>(abs(back.b()[k] - q.b()[k])), 1e-10) << "N=" << N;
        if (N <= 5) {
            auto d = invert_heat(heat_response(s, 2 * N), N);
            for (int k = 0; k < N; ++k)
                EXPECT_NEAR(d.b()[k], s.b()[k], 1e-8);
        }
    }
}
