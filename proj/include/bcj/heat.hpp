#pragma once

#include "moments.hpp"

namespace bcj {

template <class S = double>
struct HeatField {
    Mat<S> v;  // v(n, t), n = 0..K+1, t = 0..T; row 0 is the control
    std::vector<S> control;
};

namespace detail {

template <class S>
HeatField<S> run_heat(const JacobiSpec<S>& spec, const std::vector<S>& f, int T, int K)
{
    HeatField<S> h;
    h.control = f;
    h.v = Mat<S>::Zero(K + 2, T + 1);
    for (int t = 0; t <= T; ++t)
        h.v(0, t) = t < static_cast<int>(f.size()) ? f[t] : S(0);
    for (int t = 0; t < T; ++t)
        for (int n = 1; n <= K; ++n) {
            S x = spec.a_at(n - 1) * h.v(n - 1, t) + spec.b_at(n) * h.v(n, t);
            if (n < K)
                x += spec.a_at(n) * h.v(n + 1, t);
            h.v(n, t + 1) = x;
        }
    return h;
}

}  // namespace detail

// v_{n,t+1} = a_n v_{n+1,t} + a_{n-1} v_{n-1,t} + b_n v_{n,t}; sites n <= T matter.
template <class S>
HeatField<S> solve_heat(const JacobiSpec<S>& spec, const std::vector<S>& f, int T)
{
    if (T < 1 || static_cast<int>(f.size()) != T)
        throw DomainError("solve_heat: control length must equal T >= 1");
    if (spec.size() < T)
        throw DomainError("solve_heat: spec too short for requested T");
    return detail::run_heat(spec, f, T, T);
}

// s_{t-1} = v^delta_{1,t} = a0 (A^{t-1})_{11}, t = 1..L.
template <class S>
std::vector<S> heat_response(const JacobiSpec<S>& spec, int L)
{
    if (L < 1)
        throw DomainError("heat_response: length must be >= 1");
    const int K = (L + 1) / 2;
    if (spec.size() < K)
        throw DomainError("heat_response: spec too short (need block size >= ceil(L/2))");
    std::vector<S> f(L, S(0));
    f[0] = S(1);
    auto h = detail::run_heat(spec, f, L, K);
    std::vector<S> s(L);
    for (int t = 1; t <= L; ++t)
        s[t - 1] = h.v(1, t);
    return s;
}

// S^T_{ij} = s_0 s_{2T-i-j}, 1-based, natural control ordering (s_0 = a0).
template <class S>
Mat<S> heat_connecting(const std::vector<S>& s, int T)
{
    if (T < 1 || static_cast<int>(s.size()) < 2 * T - 1)
        throw DomainError("heat_connecting: need 2T-1 entries");
    Mat<S> H(T, T);
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j)
            H(i, j) = s[2 * T - 2 - i - j];
    return s[0] * H;
}

// Column i = state v_{., T} produced by a delta at time i (natural ordering).
template <class S>
Mat<S> heat_control_matrix(const JacobiSpec<S>& spec, int T)
{
    if (T < 1 || spec.size() < T)
        throw DomainError("heat_control_matrix: spec too short for requested T");
    std::vector<S> f(T, S(0));
    f[0] = S(1);
    auto h = detail::run_heat(spec, f, T, T);
    Mat<S> V = Mat<S>::Zero(T, T);
    for (int i = 0; i < T; ++i)
        for (int n = 1; n <= T; ++n)
            V(n - 1, i) = h.v(n, T - i);
    return V;
}

template <class R>
JacobiSpec<R> invert_heat(const std::vector<R>& s, int N)
{
    return truncated_moment_naive(MomentSequence<R>(s.begin(), s.end()), N).spec;
}

}  // namespace bcj
