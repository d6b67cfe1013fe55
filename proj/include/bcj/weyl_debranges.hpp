#pragma once

#include "moments.hpp"

namespace bcj {

template <class R = double>
using cplx = std::complex<R>;

// Root of z + 1/z = lambda with |z| <= 1 (z in the lower half disk for Im lambda > 0).
template <class R>
cplx<R> joukowsky_z(const cplx<R>& lambda)
{
    using std::abs;
    cplx<R> s = std::sqrt(lambda * lambda - cplx<R>(4));
    cplx<R> z1 = (lambda - s) / R(2), z2 = (lambda + s) / R(2);
    return abs(z1) <= abs(z2) ? z1 : z2;
}

// Region where the series converges: Im lambda > 0 and lambda outside the
// Joukowsky image of |z| = 1/R, R = 3B + 1.
template <class R>
bool in_domain_D(const cplx<R>& lambda, const R& B)
{
    const R Rr = R(3) * B + R(1);
    const R x = lambda.real(), y = lambda.imag();
    if (!(y > R(0)))
        return false;
    const R ax = Rr + R(1) / Rr, ay = Rr - R(1) / Rr;
    return (x / ax) * (x / ax) + (y / ay) * (y / ay) > R(1);
}

enum class WeylKind { finite, free };

template <class R>
cplx<R> weyl_resolvent(const JacobiSpec<R>& spec, const cplx<R>& lambda, WeylKind kind = WeylKind::finite)
{
    using std::abs;
    if (kind == WeylKind::free)
        return -joukowsky_z(lambda);
    auto mu = spectral_measure(spec);
    cplx<R> m(0);
    for (const auto& at : mu.atoms) {
        cplx<R> d = cplx<R>(at.lambda) - lambda;
        if (abs(d) <= R(1e-14) * (R(1) + abs(at.lambda)))
            throw NumericalError("weyl_resolvent: lambda is an eigenvalue (pole)");
        m += at.weight / d;
    }
    return m;
}

template <class R = double>
struct WeylEvaluation {
    cplx<R> lambda;
    cplx<R> z;
    cplx<R> m_series;
    cplx<R> m_resolvent{std::numeric_limits<R>::quiet_NaN(), std::numeric_limits<R>::quiet_NaN()};
    int truncation = 0;
    bool in_domain_D = false;
};

// m(lambda) = -sum_{t>=0} z^{t+1} r_t, stopped once |z|^{t+1} times the trailing
// maximum of |r| falls below tol. B is the coefficient bound used for the domain flag.
template <class R>
WeylEvaluation<R> weyl_series(const std::vector<R>& r, const cplx<R>& lambda, const R& tol, const R& B)
{
    using std::abs;
    WeylEvaluation<R> ev;
    ev.lambda = lambda;
    ev.z = joukowsky_z(lambda);
    ev.in_domain_D = in_domain_D(lambda, B);
    const R az = abs(ev.z);
    if (!(az < R(1) - R(1e-14)))
        throw NumericalError("weyl_series: |z| >= 1, series does not converge");
    const int window = 8;
    cplx<R> zp = ev.z, sum(0);
    R zabs = az;
    for (std::size_t t = 0; t < r.size(); ++t) {
        sum -= zp * r[t];
        zp *= ev.z;
        zabs *= az;
        R recent(0);
        for (std::size_t k = t + 1 > window ? t + 1 - window : 0; k <= t; ++k)
            recent = std::max<R>(recent, abs(r[k]));
        if (t + 1 >= window && zabs * recent < tol) {
            ev.m_series = sum;
            ev.truncation = static_cast<int>(t + 1);
            return ev;
        }
    }
    throw NumericalError("weyl_series: response too short to reach the tolerance");
}

// F(lambda) = sum_k f_k T_k(lambda), k = 1..T.
template <class S = double>
struct DeBrangesElement {
    std::vector<S> coeffs;

    int size() const { return static_cast<int>(coeffs.size()); }

    template <class X>
    auto operator()(const X& lambda) const
    {
        using Out = decltype(S{} * X{});
        Out v(0);
        X prev(0), cur(1);
        for (int k = 1; k <= size(); ++k) {
            v += coeffs[k - 1] * cur;
            X next = lambda * cur - prev;
            prev = cur;
            cur = next;
        }
        return v;
    }
};

// Solves C_T j = conj(T_1(z), ..., T_T(z)); C_T in the reversed ordering.
template <class R>
DeBrangesElement<cplx<R>> debranges_kernel(const Mat<R>& C_T, const cplx<R>& z, int T)
{
    if (C_T.rows() != T || C_T.cols() != T)
        throw DomainError("debranges_kernel: C_T must be T x T");
    Eigen::FullPivLU<Mat<R>> lu(C_T);
    if (!lu.isInvertible())
        throw NumericalError("debranges_kernel: C_T is singular");
    // C_T is real: solve for the real and imaginary parts separately.
    auto tz = chebyshev_table(T, std::conj(z));
    Mat<R> rhs(T, 2);
    for (int k = 1; k <= T; ++k) {
        rhs(k - 1, 0) = tz[k].real();
        rhs(k - 1, 1) = tz[k].imag();
    }
    Mat<R> x = lu.solve(rhs);
    std::vector<cplx<R>> j(T);
    for (int k = 0; k < T; ++k)
        j[k] = cplx<R>(x(k, 0), x(k, 1));
    return {j};
}

// [F, G] = (C_T f, g), conjugate-linear in the first slot.
template <class R, class S1, class S2>
auto debranges_inner(const Mat<R>& C_T, const DeBrangesElement<S1>& F, const DeBrangesElement<S2>& G)
{
    using Out = decltype(conj(S1{}) * S2{});
    const int T = static_cast<int>(C_T.rows());
    if (F.size() != T || G.size() != T)
        throw DomainError("debranges_inner: dimension mismatch");
    Out s(0);
    for (int i = 0; i < T; ++i) {
        S1 cf(0);
        for (int j = 0; j < T; ++j)
            cf += C_T(i, j) * F.coeffs[j];
        s += conj(cf) * G.coeffs[i];
    }
    return s;
}

// Hankel form: S_T g = (1, conj z, ..., conj z^{T-1}); g are monomial
// coefficients of the same kernel, g = Lambda^T j.
template <class R>
std::vector<cplx<R>> debranges_kernel_hankel(const MomentSequence<R>& s, const cplx<R>& z, int T)
{
    Mat<R> S = hankel(s, T, 0, HankelOrdering::classical);
    Eigen::FullPivLU<Mat<R>> lu(S);
    if (!lu.isInvertible())
        throw NumericalError("debranges_kernel_hankel: Hankel matrix is singular");
    Mat<R> rhs(T, 2);
    cplx<R> p(1);
    for (int k = 0; k < T; ++k) {
        rhs(k, 0) = p.real();
        rhs(k, 1) = p.imag();
        p *= std::conj(z);
    }
    Mat<R> x = lu.solve(rhs);
    std::vector<cplx<R>> g(T);
    for (int k = 0; k < T; ++k)
        g[k] = cplx<R>(x(k, 0), x(k, 1));
    return g;
}

template <class R = double>
struct BetaSequences {
    std::vector<R> beta_min;  // smallest eigenvalue of C_N
    std::vector<R> beta_max;  // largest eigenvalue of C_N
};

template <class R>
BetaSequences<R> beta_sequences(const std::vector<R>& r, int N_max)
{
    if (N_max < 1 || static_cast<int>(r.size()) < 2 * N_max - 1)
        throw DomainError("beta_sequences: need 2N_max-1 response entries");
    BetaSequences<R> out;
    for (int N = 1; N <= N_max; ++N) {
        Eigen::SelfAdjointEigenSolver<Mat<R>> es(connecting_from_response(r, N), Eigen::EigenvaluesOnly);
        out.beta_min.push_back(es.eigenvalues()(0));
        out.beta_max.push_back(es.eigenvalues()(N - 1));
    }
    return out;
}

}  // namespace bcj
