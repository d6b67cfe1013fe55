#include <random>

#include <gtest/gtest.h>

#include <bcj/core.hpp>
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

}  // namespace

TEST(Chebyshev, Examples)
{
    EXPECT_EQ(chebyshev_u(0, 7.0), 0.0);
    EXPECT_EQ(chebyshev_u(2, 5.0), 5.0);
    EXPECT_EQ(chebyshev_u(3, 2.0), 3.0);
    EXPECT_THROW(chebyshev_u(-1, 1.0), DomainError);
}

TEST(Chebyshev, MatchesExplicitPolynomials)
{
    for (double x : {-2.5, -1.0, 0.0, 0.3, 1.7, 4.0}) {
        auto t = chebyshev_table(5, x);
        EXPECT_DOUBLE_EQ(t[3], x * x - 1);
        EXPECT_DOUBLE_EQ(t[4], x * x * x - 2 * x);
        EXPECT_NEAR(t[5], x * x * x * x - 3 * x * x + 1, 1e-12);
        for (int k = 0; k <= 5; ++k)
            EXPECT_EQ(t[k], chebyshev_u(k, x));
    }
}

TEST(Phi, Examples)
{
    auto free = JacobiSpec<double>::free(6);
    auto p = phi_eval(free, 2.0, 6);
    for (int n = 1; n <= 6; ++n)
        EXPECT_DOUBLE_EQ(p[n - 1], n);
    JacobiSpec<double> s(1.0, {1.0}, {0.0, 0.0});
    EXPECT_DOUBLE_EQ(phi_eval(s, 1.0, 2)[1], 1.0);
    EXPECT_DOUBLE_EQ(phi_eval(s, 0.4, 1)[0], 1.0);
}

TEST(Phi, NextPolynomialVanishesAtEigenvalues)
{
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_spec(g, 1 + trial % 8);
        auto sd = eig_spectral_data(s);
        for (double lam : sd.eigenvalues)
            EXPECT_NEAR(phi_eval(s, lam, s.size() + 1).back(), 0.0, 1e-9);
    }
}

TEST(Spec, Validation)
{
    EXPECT_THROW(JacobiSpec<double>(1.0, {1.0}, {0.0}), DomainError);
    EXPECT_THROW(JacobiSpec<double>(1.0, {-1.0}, {0.0, 0.0}), DomainError);
    EXPECT_THROW(JacobiSpec<double>(0.0, {}, {0.0}), DomainError);
    EXPECT_THROW(JacobiSpec<double>(1.0, {}, {}), DomainError);
    using C = std::complex<double>;
    EXPECT_NO_THROW(JacobiSpec<C>(C(1), {C(-1.0)}, {C(0), C(0)}));
    EXPECT_THROW(JacobiSpec<C>(C(1), {C(0.0)}, {C(0), C(0)}), DomainError);
}

TEST(Eig, Examples)
{
    JacobiSpec<double> s(1.0, {1.0}, {0.0, 0.0});
    auto sd = eig_spectral_data(s);
    EXPECT_NEAR(sd.eigenvalues[0], -1.0, 1e-14);
    EXPECT_NEAR(sd.eigenvalues[1], 1.0, 1e-14);
    EXPECT_NEAR(sd.phi(1, 0), -1.0, 1e-14);
    EXPECT_NEAR(sd.phi(1, 1), 1.0, 1e-14);
    EXPECT_NEAR(sd.omegas[0], 2.0, 1e-14);
    EXPECT_NEAR(sd.omegas[1], 2.0, 1e-14);

    auto one = eig_spectral_data(JacobiSpec<double>(1.0, {}, {0.7}));
    EXPECT_DOUBLE_EQ(one.eigenvalues[0], 0.7);
    EXPECT_DOUBLE_EQ(one.omegas[0], 1.0);

    auto f3 = eig_spectral_data(JacobiSpec<double>::free(3));
    EXPECT_NEAR(f3.eigenvalues[0], -std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(f3.eigenvalues[1], 0.0, 1e-14);
    EXPECT_NEAR(f3.eigenvalues[2], std::sqrt(2.0), 1e-14);
}

TEST(Eig, AgreesWithDenseSolver)
{
    std::mt19937_64 g(12);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_spec(g, 1 + trial % 25);
        auto sd = eig_spectral_data(s);
        Eigen::SelfAdjointEigenSolver<Mat<double>> es(s.matrix());
        for (int k = 0; k < s.size(); ++k) {
            EXPECT_NEAR(sd.eigenvalues[k], es.eigenvalues()(k), 1e-12);
            if (k > 0)
                EXPECT_LT(sd.eigenvalues[k - 1], sd.eigenvalues[k]);
            // weight = squared first component of the unit eigenvector
            double v0 = es.eigenvectors()(0, k);
            EXPECT_NEAR(1.0 / sd.omegas[k], v0 * v0, 1e-10);
            Vec<double> phi = sd.phi.col(k);
            EXPECT_LT((s.matrix() * phi - sd.eigenvalues[k] * phi).cwiseAbs().maxCoeff(), 1e-9 * phi.norm());
        }
    }
}

TEST(Measure, Examples)
{
    auto mu = spectral_measure(JacobiSpec<double>(1.0, {1.0}, {0.0, 0.0}));
    ASSERT_EQ(mu.size(), 2u);
    EXPECT_NEAR(mu.atoms[0].lambda, -1.0, 1e-14);
    EXPECT_NEAR(mu.atoms[0].weight, 0.5, 1e-14);
    EXPECT_NEAR(mu.atoms[1].weight, 0.5, 1e-14);

    auto m1 = spectral_measure(JacobiSpec<double>(1.0, {}, {0.0}));
    EXPECT_EQ(m1.atoms[0].lambda, 0.0);
    EXPECT_EQ(m1.atoms[0].weight, 1.0);

    auto f3 = spectral_measure(JacobiSpec<double>::free(3));
    EXPECT_NEAR(f3.atoms[0].weight, 0.25, 1e-14);
    EXPECT_NEAR(f3.atoms[1].weight, 0.5, 1e-14);
    EXPECT_NEAR(f3.atoms[2].weight, 0.25, 1e-14);
}

TEST(Measure, WeightsPositiveAndSumToOne)
{
    std::mt19937_64 g(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto mu = spectral_measure(random_spec(g, 1 + trial % 30));
        for (const auto& a : mu.atoms)
            EXPECT_GT(a.weight, 0.0);
        EXPECT_NEAR(mu.total_weight(), 1.0, 1e-12);
    }
}

TEST(Measure, QuadMatchesDouble)
{
    std::mt19937_64 g(14);
    auto s = random_spec(g, 9);
    auto md = spectral_measure(s);
    auto mq = spectral_measure(s.cast<quad>());
    for (std::size_t k = 0; k < md.size(); ++k) {
        EXPECT_NEAR(static_cast<double>(mq.atoms[k].lambda), md.atoms[k].lambda, 1e-12);
        EXPECT_NEAR(static_cast<double>(mq.atoms[k].weight), md.atoms[k].weight, 1e-12);
    }
    EXPECT_LT(static_cast<double>(abs(mq.total_weight() - quad(1))), 1e-30);
}

TEST(Moments, Examples)
{
    SpectralMeasure<double> mu{{{-1.0, 0.5}, {1.0, 0.5}}};
    EXPECT_EQ(moments_of_measure(mu, 3), (std::vector<double>{1, 0, 1, 0}));
    EXPECT_EQ(moments_of_measure(SpectralMeasure<double>{{{0.0, 1.0}}}, 2), (std::vector<double>{1, 0, 0}));
    EXPECT_EQ(moments_of_measure(SpectralMeasure<double>{{{2.0, 1.0}}}, 3), (std::vector<double>{1, 2, 4, 8}));
}

TEST(Moments, EqualPowersOfTheMatrix)
{
    // s_k = (A^k)_{11}
    std::mt19937_64 g(15);
    auto s = random_spec(g, 7);
    auto m = moments_of_measure(spectral_measure(s), 10);
    Mat<double> P = Mat<double>::Identity(7, 7);
    for (int k = 0; k <= 10; ++k) {
        EXPECT_NEAR(m[k], P(0, 0), 1e-10 * std::max(1.0, std::abs(P(0, 0))));
        P = P * s.matrix();
    }
}

TEST(ReverseOrder, Examples)
{
    Mat<double> I = Mat<double>::Identity(3, 3);
    EXPECT_EQ(reverse_order(I), I);
    Mat<double> M(2, 2);
    M << 1, 2, 2, 3;
    Mat<double> R(2, 2);
    R << 3, 2, 2, 1;
    EXPECT_EQ(reverse_order(M), R);
    Mat<double> C(3, 3);
    C << 0, 1, 0, 1, 1, 1, 0, 1, 1;
    Mat<double> Cr(3, 3);
    Cr << 1, 1, 0, 1, 1, 1, 0, 1, 0;
    EXPECT_EQ(reverse_order(C), Cr);
    EXPECT_EQ(reverse_order(reverse_order(C)), C);
}
