#pragma once

#include <optional>

#include "discrete_wave.hpp"

namespace bcj {

namespace detail {

// Unpivoted LDL^T (transpose, not adjoint, so complex symmetric input works).
// Stops at the first pivot that is zero relative to the size of the terms that
// cancelled to produce it.
template <class S>
struct LDLT {
    Mat<S> L;
    std::vector<S> D;
    int failed_at = -1;  // 0-based index of the first negligible pivot, or -1
    real_t<S> tolerance{};

    LDLT(const Mat<S>& C, real_t<S> rel_tol)
        : L(Mat<S>::Identity(C.rows(), C.rows())), tolerance(rel_tol)
    {
        using std::abs;
        const int n = static_cast<int>(C.rows());
        for (int k = 0; k < n; ++k) {
            S dk = C(k, k);
            real_t<S> scale = abs(C(k, k));
            for (int j = 0; j < k; ++j) {
                S t = L(k, j) * L(k, j) * D[j];
                dk -= t;
                scale += abs(t);
            }
            if (abs(dk) <= rel_tol * scale) {
                failed_at = k;
                return;
            }
            D.push_back(dk);
            for (int i = k + 1; i < n; ++i) {
                S v = C(i, k);
                for (int j = 0; j < k; ++j)
                    v -= L(i, j) * L(k, j) * D[j];
                L(i, k) = v / dk;
            }
        }
    }

    bool ok() const { return failed_at < 0; }
};

template <class R>
R pivot_tolerance(int n)
{
    return R(16) * R(std::max(n, 1)) * epsilon<R>();
}

template <class S>
S principal_sqrt(const S& x)
{
    using std::sqrt;
    return sqrt(x);
}

template <class S>
real_t<S> max_abs(const std::vector<S>& v)
{
    using std::abs;
    real_t<S> m(0);
    for (const auto& x : v)
        m = std::max<real_t<S>>(m, abs(x));
    return m;
}

}  // namespace detail

template <class S = double>
struct InversionReport {
    using real = real_t<S>;
    int T = 0;
    S a0{};
    std::vector<S> a;          // a_1..a_{T-1}; complex mode holds principal roots of a_squared
    std::vector<S> a_squared;  // a_k^2
    std::vector<S> b;          // b_1..b_{T-1}, and b_T when 2T response entries were given
    std::vector<S> pivots;     // LDL^T pivots of the normalized C_T
    std::vector<S> determinants;  // det C_k, k = 1..T
    real tolerance{};
    real residual{};

    bool complete() const { return static_cast<int>(b.size()) == T; }

    // Block-T spec; b_T is set to zero when it was not determined by the data.
    JacobiSpec<S> spec() const
    {
        std::vector<S> bb = b;
        bb.resize(T, S(0));
        return JacobiSpec<S>(a0, a, bb);
    }
};

// Recover a0, a_k (or a_k^2) and b_k from r_0..r_{2T-2}; b_T as well when r_{2T-1} is present.
template <class S>
InversionReport<S> invert_factorization(const std::vector<S>& r, int T)
{
    using real = real_t<S>;
    using std::abs;
    using std::sqrt;
    if (T < 1 || static_cast<int>(r.size()) < 2 * T - 1)
        throw DomainError("invert_factorization: need at least 2T-1 response entries");
    if (r[0] == S(0))
        throw DomainError("invert_factorization: r_0 must be nonzero");
    if constexpr (!is_complex_v<S>)
        if (r[0] < S(0))
            throw NumericalError("invert_factorization: r_0 must be positive in real mode");

    const bool with_last = static_cast<int>(r.size()) >= 2 * T;
    std::vector<S> rn(r.begin(), r.begin() + (with_last ? 2 * T : 2 * T - 1));
    for (auto& x : rn)
        x /= r[0];

    Mat<S> C = reverse_order(detail::connecting_sums(rn, T));
    InversionReport<S> rep;
    rep.T = T;
    rep.a0 = r[0];
    rep.tolerance = detail::pivot_tolerance<real>(T);
    detail::LDLT<S> f(C, rep.tolerance);
    rep.pivots = f.D;
    if (!f.ok())
        throw NumericalError("invert_factorization: block not invertible (leading minor C_" +
                             std::to_string(f.failed_at + 1) + " is singular)");
    S det(1);
    for (const auto& d : f.D) {
        det *= d;
        rep.determinants.push_back(det);
    }

    for (int k = 1; k < T; ++k) {
        S q = f.D[k] / f.D[k - 1];
        if constexpr (!is_complex_v<S>) {
            if (!(q > S(0)))
                throw NumericalError("invert_factorization: C_T is not positive definite (a_" + std::to_string(k) +
                                     "^2 <= 0)");
            rep.a.push_back(sqrt(q));
        } else {
            rep.a.push_back(detail::principal_sqrt(q));
        }
        rep.a_squared.push_back(q);
    }

    // ell[k] = L(k, k-1) of C_T, 1-based rows k = 2..T; ell[T+1] from the extra row.
    std::vector<S> ell(T + 2, S(0));
    for (int k = 2; k <= T; ++k)
        ell[k] = f.L(k - 1, k - 2);
    if (with_last) {
        // Row T+1 of the reversed C_{T+1}: entries sum_{k<j} r_{T+1-j+2k}, j = 1..T.
        std::vector<S> row(T);
        for (int j = 1; j <= T; ++j) {
            S s(0);
            for (int k = 0; k < j; ++k)
                s += rn[T + 1 - j + 2 * k];
            row[j - 1] = s;
        }
        std::vector<S> l(T);
        for (int j = 0; j < T; ++j) {
            S v = row[j];
            for (int m = 0; m < j; ++m)
                v -= l[m] * f.L(j, m) * f.D[m];
            l[j] = v / f.D[j];
        }
        ell[T + 1] = l[T - 1];
    }
    const int nb = with_last ? T : T - 1;
    for (int k = 1; k <= nb; ++k)
        rep.b.push_back(ell[k + 1] - ell[k]);

    // Re-simulate with the recovered block; entries used never depend on an unknown b_T.
    auto sp = rep.spec();
    auto rr = response_vector(sp, static_cast<int>(rn.size()), Boundary::semi_infinite);
    real num(0);
    for (std::size_t t = 0; t < rn.size(); ++t)
        num = std::max<real>(num, abs(rr[t] - r[t]));
    real den = detail::max_abs(std::vector<S>(r.begin(), r.begin() + rn.size()));
    rep.residual = den > real(0) ? num / den : num;
    return rep;
}

// Forward C^T (natural ordering) and the response r; returns f with
// C^T f = beta conj(kappa) - alpha (R^T)^* conj(kappa).
template <class S>
std::vector<S> solve_krein(const Mat<S>& C, const std::vector<S>& r, const S& lambda, const S& alpha, const S& beta)
{
    using real = real_t<S>;
    const int T = static_cast<int>(C.rows());
    if (C.cols() != T || T < 1)
        throw DomainError("solve_krein: C must be square");
    if (static_cast<int>(r.size()) < T)
        throw DomainError("solve_krein: response too short");
    // kappa_T = 0, kappa_{T-1} = 1, kappa_{t-1} = lambda kappa_t - kappa_{t+1}
    std::vector<S> kappa(T + 1);
    kappa[T] = S(0);
    kappa[T - 1] = S(1);
    for (int t = T - 1; t >= 1; --t)
        kappa[t - 1] = lambda * kappa[t] - kappa[t + 1];

    Vec<S> rhs(T);
    for (int j = 0; j < T; ++j) {
        // (R^* kbar)_j = sum_{t > j} conj(r_{t-1-j}) kbar_t
        S adj(0);
        for (int t = j + 1; t < T; ++t)
            adj += conj(r[t - 1 - j]) * conj(kappa[t]);
        rhs[j] = beta * conj(kappa[j]) - alpha * adj;
    }
    Eigen::FullPivLU<Mat<S>> lu(C);
    real smin = lu.maxPivot() == real(0) ? real(0) : magnitude(lu.matrixLU()(T - 1, T - 1)) / lu.maxPivot();
    if (!lu.isInvertible() || smin <= detail::pivot_tolerance<real>(T))
        throw NumericalError("solve_krein: C^T is singular");
    Vec<S> f = lu.solve(rhs);
    return std::vector<S>(f.data(), f.data() + T);
}

template <class R = double>
struct Verdict {
    bool admissible = false;
    std::string reason;
    std::vector<R> diagnostics;  // pivots (real mode) or smallest singular values of C^T..C^1 (complex mode)
};

template <class S>
Verdict<real_t<S>> characterize(const std::vector<S>& r, int T, Mode mode)
{
    using real = real_t<S>;
    using std::abs;
    Verdict<real> v;
    if (T < 1 || static_cast<int>(r.size()) < 2 * T - 1) {
        v.reason = "response too short";
        return v;
    }
    if (mode == Mode::real) {
        if constexpr (is_complex_v<S>) {
            v.reason = "complex data cannot be characterized in real mode";
            return v;
        } else {
            if (!(r[0] > S(0))) {
                v.reason = "r_0 must be positive";
                return v;
            }
            Mat<S> C = reverse_order(connecting_from_response(r, T));
            detail::LDLT<S> f(C, detail::pivot_tolerance<real>(T));
            for (const auto& d : f.D)
                v.diagnostics.push_back(d);
            if (!f.ok()) {
                v.reason = "C^T is singular (leading minor " + std::to_string(f.failed_at + 1) + ")";
                return v;
            }
            for (std::size_t k = 0; k < f.D.size(); ++k)
                if (!(f.D[k] > S(0))) {
                    v.reason = "C^T is not positive definite (pivot " + std::to_string(k + 1) + " negative)";
                    return v;
                }
            v.admissible = true;
            v.reason = "C^T positive definite";
            return v;
        }
    }
    v.admissible = true;
    v.reason = "all blocks C^T..C^1 invertible";
    for (int k = 0; k < T; ++k) {
        const int n = T - k;
        Mat<S> C = connecting_from_response(r, n);
        Eigen::JacobiSVD<Mat<S>> svd(C);
        auto sv = svd.singularValues();
        real smax = sv(0), smin = sv(n - 1);
        v.diagnostics.push_back(smin);
        if (v.admissible && (smax == real(0) || smin <= detail::pivot_tolerance<real>(n) * smax)) {
            v.admissible = false;
            v.reason = "C^" + std::to_string(n) + " is singular";
        }
    }
    return v;
}

template <class R = double>
struct SchrodingerVerdict {
    bool pass = false;
    bool positive_definite = false;
    std::vector<R> minors;         // det C^l, l = 1..T
    std::vector<R> implied_even;   // r_{2m}, m = 1..T-1, implied by the odd entries and det C^l = 1
};

template <class R>
SchrodingerVerdict<R> schrodinger_check(const std::vector<R>& r, int T)
{
    using std::abs;
    if (T < 1 || static_cast<int>(r.size()) < 2 * T - 1)
        throw DomainError("schrodinger_check: need 2T-1 response entries");
    if (abs(r[0] - R(1)) > R(1e-12))
        throw DomainError("schrodinger_check: requires r_0 = 1");
    SchrodingerVerdict<R> out;
    Mat<R> C = reverse_order(detail::connecting_sums(r, T));
    detail::LDLT<R> f(C, detail::pivot_tolerance<R>(T));
    R det(1);
    out.positive_definite = f.ok();
    for (const auto& d : f.D) {
        det *= d;
        out.minors.push_back(det);
        if (!(d > R(0)))
            out.positive_definite = false;
    }
    out.pass = out.positive_definite && static_cast<int>(out.minors.size()) == T;
    for (const auto& m : out.minors)
        if (abs(m - R(1)) > R(1e-8))
            out.pass = false;

    // det C^{m+1} is affine in r_{2m} with slope det C^m.
    std::vector<R> rr(r.begin(), r.begin() + 2 * T - 1);
    for (int m = 1; m < T; ++m) {
        rr[2 * m] = R(0);
        R d0 = detail::connecting_sums(rr, m + 1).determinant();
        R dm = detail::connecting_sums(rr, m).determinant();
        rr[2 * m] = (R(1) - d0) / dm;
        out.implied_even.push_back(rr[2 * m]);
    }
    return out;
}

template <class S = double>
struct RoundtripReport {
    InversionReport<S> inversion;
    real_t<S> coefficient_error{};  // max |x - x_hat| / max(1, |x|) over a0, a_k (or a_k^2), b_k
    real_t<S> residual{};
};

template <class S>
RoundtripReport<S> roundtrip_report(const JacobiSpec<S>& spec, int T)
{
    using real = real_t<S>;
    using std::abs;
    if (T < 1 || spec.size() < T)
        throw DomainError("roundtrip_report: spec must have block size >= T");
    RoundtripReport<S> out;
    auto r = response_vector(spec, 2 * T, Boundary::semi_infinite);
    out.inversion = invert_factorization(r, T);
    const auto& inv = out.inversion;
    auto rel = [](const S& x, const S& y) {
        real d = abs(x - y);
        return d / std::max<real>(real(1), abs(x));
    };
    real e = rel(spec.a0(), inv.a0);
    for (int k = 1; k < T; ++k) {
        if constexpr (is_complex_v<S>)
            e = std::max(e, rel(spec.a_at(k) * spec.a_at(k), inv.a_squared[k - 1]));
        else
            e = std::max(e, rel(spec.a_at(k), inv.a[k - 1]));
    }
    for (int k = 1; k <= T; ++k)
        e = std::max(e, rel(spec.b_at(k), inv.b[k - 1]));
    out.coefficient_error = e;
    out.residual = inv.residual;
    return out;
}

}  // namespace bcj
