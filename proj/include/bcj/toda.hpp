#pragma once

#include "moments.hpp"

namespace bcj {

template <class R = double>
struct TodaState {
    JacobiSpec<R> spec;
    SpectralMeasure<R> measure;
    R t;
};

// w_k(t) proportional to w_k(0) exp(2 lambda_k t), evaluated in log space.
template <class R>
SpectralMeasure<R> moser_evolve(const SpectralMeasure<R>& mu0, const R& t)
{
    using std::exp;
    using std::log;
    if (mu0.atoms.empty())
        throw DomainError("moser_evolve: empty measure");
    std::vector<R> lw;
    R mx = -std::numeric_limits<R>::infinity();
    for (const auto& a : mu0.atoms) {
        if (!(a.weight > R(0)))
            throw DomainError("moser_evolve: weights must be positive");
        lw.push_back(log(a.weight) + R(2) * a.lambda * t);
        mx = std::max(mx, lw.back());
    }
    R sum(0);
    for (auto& x : lw) {
        x = exp(x - mx);
        sum += x;
    }
    SpectralMeasure<R> out;
    for (std::size_t k = 0; k < lw.size(); ++k) {
        R w = lw[k] / sum;
        if (w < R(1e-300))
            throw NumericalError("moser_evolve: weight underflow (t too large for this spectrum)");
        out.atoms.push_back({mu0.atoms[k].lambda, w});
    }
    return out;
}

template <class R>
MomentSequence<R> toda_moments(const SpectralMeasure<R>& mu0, const R& t, int K)
{
    return moments_of_measure(moser_evolve(mu0, t), K);
}

// max_k |s_k' + (ln|Theta|^2)' s_k - 2 s_{k+1}| with central differences of step h.
template <class R>
R recursion_residual(const SpectralMeasure<R>& mu0, const R& t, int K, const R& h)
{
    using std::abs;
    using std::exp;
    using std::log;
    if (!(h > R(0)))
        throw DomainError("recursion_residual: h must be positive");
    auto lntheta = [&](const R& tt) {
        R mx = -std::numeric_limits<R>::infinity();
        for (const auto& a : mu0.atoms)
            mx = std::max<R>(mx, R(2) * a.lambda * tt);
        R s(0);
        for (const auto& a : mu0.atoms)
            s += a.weight * exp(R(2) * a.lambda * tt - mx);
        return log(s) + mx;
    };
    auto sp = toda_moments(mu0, t + h, K + 1);
    auto sm = toda_moments(mu0, t - h, K + 1);
    auto s0 = toda_moments(mu0, t, K + 1);
    R dth = (lntheta(t + h) - lntheta(t - h)) / (R(2) * h);
    R worst(0);
    for (int k = 0; k <= K; ++k) {
        R ds = (sp[k] - sm[k]) / (R(2) * h);
        worst = std::max<R>(worst, abs(ds + dth * s0[k] - R(2) * s0[k + 1]));
    }
    return worst;
}

// Moser weights -> moments s_0..s_{2N-1} -> response -> factorization.
template <class R>
TodaState<R> toda_solve(const JacobiSpec<R>& spec0, const R& t)
{
    const int N = spec0.size();
    auto mu0 = spectral_measure(spec0);
    auto mu = moser_evolve(mu0, t);
    auto s = moments_of_measure(mu, 2 * N - 1);
    auto r = moments_to_response(s);
    for (auto& x : r)
        x *= spec0.a0();
    auto rep = invert_factorization(r, N);
    return {rep.spec(), mu, t};
}

// Classical RK4 on a_n' = a_n (b_{n+1} - b_n), b_n' = 2 (a_n^2 - a_{n-1}^2), a_0 = a_N = 0.
template <class R>
JacobiSpec<R> toda_ode_oracle(const JacobiSpec<R>& spec0, const R& t, const R& dt)
{
    using std::abs;
    using std::ceil;
    if (!(dt > R(0)))
        throw DomainError("toda_ode_oracle: dt must be positive");
    const int N = spec0.size();
    const int n = N - 1;
    Vec<R> y(2 * N - 1);
    for (int k = 0; k < n; ++k)
        y(k) = spec0.a()[k];
    for (int k = 0; k < N; ++k)
        y(n + k) = spec0.b()[k];
    auto rhs = [&](const Vec<R>& v) {
        Vec<R> d(v.size());
        for (int k = 0; k < n; ++k)
            d(k) = v(k) * (v(n + k + 1) - v(n + k));
        for (int k = 0; k < N; ++k) {
            R hi = k < n ? v(k) : R(0);
            R lo = k > 0 ? v(k - 1) : R(0);
            d(n + k) = R(2) * (hi * hi - lo * lo);
        }
        return d;
    };
    int steps = static_cast<int>(ceil(abs(t) / dt));
    if (steps > 0) {
        R h = t / R(steps);
        for (int i = 0; i < steps; ++i) {
            Vec<R> k1 = rhs(y);
            Vec<R> k2 = rhs(y + h / R(2) * k1);
            Vec<R> k3 = rhs(y + h / R(2) * k2);
            Vec<R> k4 = rhs(y + h * k3);
            y += h / R(6) * (k1 + R(2) * k2 + R(2) * k3 + k4);
        }
    }
    std::vector<R> a(n), b(N);
    for (int k = 0; k < n; ++k)
        a[k] = y(k);
    for (int k = 0; k < N; ++k)
        b[k] = y(n + k);
    return JacobiSpec<R>(spec0.a0(), a, b);
}

}  // namespace bcj
