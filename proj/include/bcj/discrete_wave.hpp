#pragma once

#include "core.hpp"

namespace bcj {

enum class Boundary { semi_infinite, dirichlet };

template <class S>
using ResponseVector = std::vector<S>;

// u(n, t) for lattice sites n = 0..rows-1 and times t = 0..T. Row 0 holds the control.
template <class S = double>
struct WaveField {
    Mat<S> u;
    std::vector<S> control;

    int sites() const { return static_cast<int>(u.rows()) - 1; }
    int horizon() const { return static_cast<int>(u.cols()) - 1; }
    S operator()(int n, int t) const { return u(n, t); }
};

namespace detail {

// Leapfrog on sites 1..K with u_{K+1} = 0, times 0..T, control f_t at site 0.
// Coefficients outside the block read as zero; callers size K so that those
// entries only ever multiply zeros (finite speed).
template <class S>
WaveField<S> run_wave(const JacobiSpec<S>& spec, const std::vector<S>& f, int T, int K)
{
    WaveField<S> w;
    w.control = f;
    w.u = Mat<S>::Zero(K + 2, T + 1);
    for (int t = 0; t <= T; ++t)
        w.u(0, t) = t < static_cast<int>(f.size()) ? f[t] : S(0);
    for (int t = 0; t < T; ++t) {
        for (int n = 1; n <= K; ++n) {
            S v = spec.a_at(n - 1) * w.u(n - 1, t) + spec.b_at(n) * w.u(n, t);
            if (n < K)
                v += spec.a_at(n) * w.u(n + 1, t);
            if (t > 0)
                v -= w.u(n, t - 1);
            w.u(n, t + 1) = v;
        }
    }
    return w;
}

template <class S>
std::vector<S> delta(int T)
{
    std::vector<S> f(std::max(T, 1), S(0));
    f[0] = S(1);
    return f;
}

}  // namespace detail

// Exact semi-infinite field up to time T. The field through time T only sees
// a_0..a_{T-1} and b_1..b_{T-1}, so a block of size T suffices.
template <class S>
WaveField<S> solve_semi_infinite(const JacobiSpec<S>& spec, const std::vector<S>& f, int T)
{
    if (T < 1 || static_cast<int>(f.size()) != T)
        throw DomainError("solve_semi_infinite: control length must equal T >= 1");
    if (spec.size() < T)
        throw DomainError("solve_semi_infinite: spec too short for requested T (need block size >= T)");
    return detail::run_wave(spec, f, T, T);
}

template <class S>
WaveField<S> solve_finite_dirichlet(const JacobiSpec<S>& spec, const std::vector<S>& f, int T)
{
    if (T < 1 || static_cast<int>(f.size()) != T)
        throw DomainError("solve_finite_dirichlet: control length must equal T >= 1");
    return detail::run_wave(spec, f, T, spec.size());
}

// r_{t-1} = u^delta_{1,t}, t = 1..L. For the semi-infinite system r_0..r_{L-1}
// depends on the block only through its first ceil(L/2) rows.
template <class S>
ResponseVector<S> response_vector(const JacobiSpec<S>& spec, int L, Boundary bc = Boundary::semi_infinite)
{
    if (L < 1)
        throw DomainError("response_vector: length must be >= 1");
    int K = spec.size();
    if (bc == Boundary::semi_infinite) {
        K = (L + 1) / 2;
        if (spec.size() < K)
            throw DomainError("response_vector: spec too short (need block size >= ceil(L/2))");
    }
    auto w = detail::run_wave(spec, detail::delta<S>(L), L, K);
    ResponseVector<S> r(L);
    for (int t = 1; t <= L; ++t)
        r[t - 1] = w.u(1, t);
    return r;
}

// Upper-triangular T x T matrix acting on (f_{T-1}, ..., f_0): entry (n-1, k) = u^delta_{n,k+1}.
template <class S>
Mat<S> control_matrix(const JacobiSpec<S>& spec, int T)
{
    if (T < 1)
        throw DomainError("control_matrix: T must be >= 1");
    if (spec.size() < T)
        throw DomainError("control_matrix: spec too short for requested T");
    auto w = detail::run_wave(spec, detail::delta<S>(T), T, T);
    Mat<S> U = Mat<S>::Zero(T, T);
    for (int n = 1; n <= T; ++n)
        for (int k = n - 1; k < T; ++k)
            U(n - 1, k) = w.u(n, k + 1);
    return U;
}

namespace detail {

// sum_{k=0}^{T-1-max(i,j)} r_{|i-j|+2k}, natural control ordering, 0-based.
template <class S>
S connecting_sum(const std::vector<S>& r, int T, int i, int j)
{
    const int d = i > j ? i - j : j - i;
    const int m = std::max(i, j);
    S s(0);
    for (int k = 0; k <= T - 1 - m; ++k)
        s += r[d + 2 * k];
    return s;
}

template <class S>
Mat<S> connecting_sums(const std::vector<S>& r, int T)
{
    if (T < 1 || static_cast<int>(r.size()) < 2 * T - 1)
        throw DomainError("connecting operator: response too short (need 2T-1 entries)");
    Mat<S> C(T, T);
    for (int i = 0; i < T; ++i)
        for (int j = 0; j <= i; ++j)
            C(i, j) = C(j, i) = connecting_sum(r, T, i, j);
    return C;
}

}  // namespace detail

// C^T in the natural ordering (f_0, ..., f_{T-1}), with prefactor a0 = r_0.
template <class S>
Mat<S> connecting_from_response(const std::vector<S>& r, int T)
{
    Mat<S> C = detail::connecting_sums(r, T);
    return r[0] * C;
}

}  // namespace bcj
