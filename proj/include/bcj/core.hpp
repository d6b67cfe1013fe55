#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace bcj {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input or violated precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

// Data that is well formed but numerically unusable (singular blocks,
// indefinite Gram matrices, poles, rank deficiency).
class NumericalError : public Error {
public:
    using Error::Error;
};

template <class S>
struct scalar_traits {
    using real = S;
    static constexpr bool is_complex = false;
};

template <class R>
struct scalar_traits<std::complex<R>> {
    using real = R;
    static constexpr bool is_complex = true;
};

template <class S>
using real_t = typename scalar_traits<S>::real;

template <class S>
inline constexpr bool is_complex_v = scalar_traits<S>::is_complex;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
S conj(const S& x)
{
    if constexpr (is_complex_v<S>)
        return std::conj(x);
    else
        return x;
}

template <class S>
real_t<S> magnitude(const S& x)
{
    using std::abs;
    return abs(x);
}

template <class R>
R epsilon()
{
    return std::numeric_limits<R>::epsilon();
}

enum class Mode { real, complex };

// Coefficients a0, a_1..a_{N-1}, b_1..b_N of an N x N Jacobi block.
// Real scalars give the self-adjoint case, std::complex gives complex mode.
template <class S = double>
class JacobiSpec {
public:
    using scalar = S;
    using real = real_t<S>;
    static constexpr Mode mode = is_complex_v<S> ? Mode::complex : Mode::real;

    JacobiSpec(S a0, std::vector<S> a, std::vector<S> b)
        : a0_(a0), a_(std::move(a)), b_(std::move(b))
    {
        using std::isfinite;
        if (b_.empty())
            throw DomainError("JacobiSpec: block size must be at least 1");
        if (a_.size() + 1 != b_.size())
            throw DomainError("JacobiSpec: need len(a) + 1 == len(b)");
        auto bad_offdiag = [](const S& x) {
            if constexpr (is_complex_v<S>)
                return x == S(0) || !isfinite(x.real()) || !isfinite(x.imag());
            else
                return !(x > S(0)) || !isfinite(x);
        };
        if (bad_offdiag(a0_))
            throw DomainError("JacobiSpec: a0 must be positive (nonzero in complex mode)");
        for (const auto& x : a_)
            if (bad_offdiag(x))
                throw DomainError("JacobiSpec: off-diagonal entries must be positive (nonzero in complex mode)");
        for (const auto& x : b_) {
            if constexpr (is_complex_v<S>) {
                if (!isfinite(x.real()) || !isfinite(x.imag()))
                    throw DomainError("JacobiSpec: non-finite diagonal entry");
            } else if (!isfinite(x)) {
                throw DomainError("JacobiSpec: non-finite diagonal entry");
            }
        }
    }

    static JacobiSpec free(std::size_t n)
    {
        return JacobiSpec(S(1), std::vector<S>(n - 1, S(1)), std::vector<S>(n, S(0)));
    }

    int size() const { return static_cast<int>(b_.size()); }
    const S& a0() const { return a0_; }
    const std::vector<S>& a() const { return a_; }
    const std::vector<S>& b() const { return b_; }

    // a_k for k = 0..N-1, zero beyond the block.
    S a_at(int k) const
    {
        if (k == 0)
            return a0_;
        if (k < 0 || k >= size())
            return S(0);
        return a_[k - 1];
    }

    // b_n for n = 1..N, zero beyond the block.
    S b_at(int n) const
    {
        if (n < 1 || n > size())
            return S(0);
        return b_[n - 1];
    }

    real coefficient_bound() const
    {
        using std::abs;
        real B(0);
        for (const auto& x : a_)
            B = std::max<real>(B, abs(x));
        for (const auto& x : b_)
            B = std::max<real>(B, abs(x));
        return B;
    }

    Mat<S> matrix() const
    {
        const int n = size();
        Mat<S> A = Mat<S>::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            A(i, i) = b_[i];
            if (i + 1 < n)
                A(i, i + 1) = A(i + 1, i) = a_[i];
        }
        return A;
    }

    template <class U>
    JacobiSpec<U> cast() const
    {
        std::vector<U> a(a_.begin(), a_.end()), b(b_.begin(), b_.end());
        return JacobiSpec<U>(U(a0_), std::move(a), std::move(b));
    }

private:
    S a0_;
    std::vector<S> a_;
    std::vector<S> b_;
};

template <class R = double>
struct Atom {
    R lambda;
    R weight;
};

template <class R = double>
struct SpectralMeasure {
    std::vector<Atom<R>> atoms;

    std::size_t size() const { return atoms.size(); }
    R total_weight() const
    {
        R s(0);
        for (const auto& a : atoms)
            s += a.weight;
        return s;
    }
};

template <class R = double>
using MomentSequence = std::vector<R>;

template <class R = double>
struct SpectralData {
    std::vector<R> eigenvalues;
    Mat<R> phi;  // column k is phi^k, first entry 1
    std::vector<R> omegas;
};

// T_t(lambda): T_0 = 0, T_1 = 1, T_{t+1} = lambda T_t - T_{t-1}.
template <class S>
S chebyshev_u(int t, const S& lambda)
{
    if (t < 0)
        throw DomainError("chebyshev_u: t must be nonnegative");
    S prev(0), cur(1);
    if (t == 0)
        return prev;
    for (int k = 1; k < t; ++k) {
        S next = lambda * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// T_0 .. T_n at lambda.
template <class S>
std::vector<S> chebyshev_table(int n, const S& lambda)
{
    std::vector<S> out(n + 1);
    out[0] = S(0);
    if (n >= 1)
        out[1] = S(1);
    for (int k = 2; k <= n; ++k)
        out[k] = lambda * out[k - 1] - out[k - 2];
    return out;
}

// phi_1 .. phi_{n_max}. phi_{N+1} uses a_N = 1, so its zeros are the eigenvalues.
template <class S>
std::vector<S> phi_eval(const JacobiSpec<S>& spec, const S& lambda, int n_max)
{
    const int N = spec.size();
    if (n_max < 1 || n_max > N + 1)
        throw DomainError("phi_eval: n_max out of range");
    std::vector<S> phi(n_max + 1);
    phi[0] = S(0);
    phi[1] = S(1);
    for (int n = 1; n < n_max; ++n) {
        S an = n < N ? spec.a_at(n) : S(1);
        phi[n + 1] = ((lambda - spec.b_at(n)) * phi[n] - (n > 1 ? spec.a_at(n - 1) : S(0)) * phi[n - 1]) / an;
    }
    phi.erase(phi.begin());
    return phi;
}

namespace detail {

template <class R>
R pythag(const R& a, const R& b)
{
    using std::abs;
    using std::sqrt;
    R x = abs(a), y = abs(b);
    if (x < y)
        std::swap(x, y);
    if (x == R(0))
        return R(0);
    R q = y / x;
    return x * sqrt(R(1) + q * q);
}

template <class R>
R copysign_of(const R& mag, const R& s)
{
    using std::abs;
    return s >= R(0) ? abs(mag) : -abs(mag);
}

// Implicit-shift QL on a symmetric tridiagonal matrix, eigenvalues only.
// d: diagonal, e[i] couples d[i] and d[i+1].
template <class R>
std::vector<R> tridiagonal_eigenvalues(std::vector<R> d, std::vector<R> e)
{
    using std::abs;
    const int n = static_cast<int>(d.size());
    e.resize(n, R(0));
    e[n - 1] = R(0);
    const R eps = epsilon<R>();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                R dd = abs(d[m]) + abs(d[m + 1]);
                if (abs(e[m]) <= eps * dd)
                    break;
            }
            if (m != l) {
                if (++iter > 60)
                    throw NumericalError("tridiagonal QL did not converge");
                R g = (d[l + 1] - d[l]) / (R(2) * e[l]);
                R r = pythag(g, R(1));
                g = d[m] - d[l] + e[l] / (g + copysign_of(r, g));
                R s(1), c(1), p(0);
                int i;
                for (i = m - 1; i >= l; --i) {
                    R f = s * e[i];
                    R b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == R(0)) {
                        d[i + 1] -= p;
                        e[m] = R(0);
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + R(2) * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == R(0) && i >= l)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = R(0);
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

// LU with partial pivoting of (T - mu I) for tridiagonal T, for inverse iteration.
template <class R>
class ShiftedTridiagonalLU {
public:
    ShiftedTridiagonalLU(const std::vector<R>& d, const std::vector<R>& e, const R& mu, const R& floor)
        : n_(static_cast<int>(d.size())), u0_(n_), u1_(n_, R(0)), u2_(n_, R(0)), mult_(n_, R(0)), swap_(n_, false)
    {
        using std::abs;
        R cur_d = d[0] - mu;
        R cur_s = n_ > 1 ? e[0] : R(0);
        for (int i = 0; i + 1 < n_; ++i) {
            R sub = e[i];
            R nd = d[i + 1] - mu;
            R ns = i + 2 < n_ ? e[i + 1] : R(0);
            if (abs(cur_d) >= abs(sub)) {
                if (cur_d == R(0))
                    cur_d = floor;
                R m = sub / cur_d;
                u0_[i] = cur_d;
                u1_[i] = cur_s;
                mult_[i] = m;
                cur_d = nd - m * cur_s;
                cur_s = ns;
            } else {
                R m = cur_d / sub;
                swap_[i] = true;
                u0_[i] = sub;
                u1_[i] = nd;
                u2_[i] = ns;
                mult_[i] = m;
                cur_d = cur_s - m * nd;
                cur_s = -m * ns;
            }
        }
        if (cur_d == R(0))
            cur_d = floor;
        u0_[n_ - 1] = cur_d;
        for (auto& p : u0_)
            if (abs(p) < floor)
                p = p < R(0) ? -floor : floor;
    }

    void solve(std::vector<R>& y) const
    {
        for (int i = 0; i + 1 < n_; ++i) {
            if (swap_[i])
                std::swap(y[i], y[i + 1]);
            y[i + 1] -= mult_[i] * y[i];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            R v = y[i];
            if (i + 1 < n_)
                v -= u1_[i] * y[i + 1];
            if (i + 2 < n_)
                v -= u2_[i] * y[i + 2];
            y[i] = v / u0_[i];
        }
    }

private:
    int n_;
    std::vector<R> u0_, u1_, u2_, mult_;
    std::vector<bool> swap_;
};

}  // namespace detail

template <class R>
SpectralData<R> eig_spectral_data(const JacobiSpec<R>& spec)
{
    static_assert(!is_complex_v<R>, "eig_spectral_data is for real (self-adjoint) specs");
    using std::abs;
    using std::sqrt;
    const int n = spec.size();
    std::vector<R> d = spec.b();
    std::vector<R> e = spec.a();
    e.push_back(R(0));

    SpectralData<R> out;
    out.eigenvalues = detail::tridiagonal_eigenvalues(d, e);

    R norm(0);
    for (int i = 0; i < n; ++i)
        norm = std::max<R>(norm, abs(d[i]) + (i > 0 ? abs(e[i - 1]) : R(0)) + abs(e[i]));
    if (norm == R(0))
        norm = R(1);
    const R floor = epsilon<R>() * norm;
    const R close = R(1e-3) * norm;

    out.phi = Mat<R>::Zero(n, n);
    out.omegas.resize(n);
    std::vector<std::vector<R>> vecs;
    for (int k = 0; k < n; ++k) {
        const R mu = out.eigenvalues[k];
        detail::ShiftedTridiagonalLU<R> lu(d, e, mu, floor);
        std::vector<R> x(n);
        for (int i = 0; i < n; ++i)
            x[i] = R(1) + R(0.5) * R(std::sin(0.7 * i + 0.3 * k + 0.1));
        for (int it = 0; it < 4; ++it) {
            lu.solve(x);
            for (int j = k - 1; j >= 0 && out.eigenvalues[k] - out.eigenvalues[j] < close; --j) {
                R dot(0);
                for (int i = 0; i < n; ++i)
                    dot += x[i] * vecs[j][i];
                for (int i = 0; i < n; ++i)
                    x[i] -= dot * vecs[j][i];
            }
            R s(0);
            for (const auto& v : x)
                s += v * v;
            s = sqrt(s);
            for (auto& v : x)
                v /= s;
        }
        vecs.push_back(x);
        if (abs(x[0]) < R(1e-13))
            throw NumericalError("eig_spectral_data: eigenvector has vanishing first component");
        R om(0);
        for (int i = 0; i < n; ++i) {
            out.phi(i, k) = x[i] / x[0];
            om += out.phi(i, k) * out.phi(i, k);
        }
        out.phi(0, k) = R(1);
        out.omegas[k] = om;
    }
    return out;
}

template <class R>
SpectralMeasure<R> spectral_measure(const JacobiSpec<R>& spec)
{
    auto sd = eig_spectral_data(spec);
    SpectralMeasure<R> mu;
    for (std::size_t k = 0; k < sd.eigenvalues.size(); ++k)
        mu.atoms.push_back({sd.eigenvalues[k], R(1) / sd.omegas[k]});
    return mu;
}

template <class R>
MomentSequence<R> moments_of_measure(const SpectralMeasure<R>& mu, int K)
{
    if (K < 0)
        throw DomainError("moments_of_measure: K must be nonnegative");
    MomentSequence<R> s(K + 1, R(0));
    for (const auto& at : mu.atoms) {
        R p = at.weight;
        for (int k = 0; k <= K; ++k) {
            s[k] += p;
            p *= at.lambda;
        }
    }
    return s;
}

// Reverse both indices: C_T = J C^T J.
template <class S>
Mat<S> reverse_order(const Mat<S>& C)
{
    if (C.rows() != C.cols())
        throw DomainError("reverse_order: matrix must be square");
    return C.colwise().reverse().rowwise().reverse();
}

}  // namespace bcj
