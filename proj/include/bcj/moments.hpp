#pragma once

#include <cstdint>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "inverse_bc.hpp"

namespace bcj {

using LambdaMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Row t (0-based) holds the monomial coefficients of T_{t+1}, so r = Lambda s.
inline LambdaMatrix lambda_matrix(int n)
{
    if (n < 1)
        throw DomainError("lambda_matrix: n must be >= 1");
    LambdaMatrix L = LambdaMatrix::Zero(n, n);
    L(0, 0) = 1;
    if (n > 1)
        L(1, 1) = 1;
    for (int i = 2; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            L(i, j) = (j > 0 ? L(i - 1, j - 1) : 0) - L(i - 2, j);
    return L;
}

template <class R>
std::vector<R> moments_to_response(const MomentSequence<R>& s)
{
    if (s.empty())
        throw DomainError("moments_to_response: empty moment sequence");
    const int n = static_cast<int>(s.size());
    auto L = lambda_matrix(n);
    std::vector<R> r(n, R(0));
    for (int i = 0; i < n; ++i)
        for (int j = i % 2; j <= i; j += 2)
            r[i] += R(L(i, j)) * s[j];
    return r;
}

template <class R>
MomentSequence<R> response_to_moments(const std::vector<R>& r)
{
    if (r.empty())
        throw DomainError("response_to_moments: empty response");
    const int n = static_cast<int>(r.size());
    auto L = lambda_matrix(n);
    MomentSequence<R> s(n);
    for (int i = 0; i < n; ++i) {
        R v = r[i];
        for (int j = i % 2; j < i; j += 2)
            v -= R(L(i, j)) * s[j];
        s[i] = v;
    }
    return s;
}

enum class HankelOrdering { reversed, classical };

// S0 and S1 = shifted Hankel. Reversed: S^N_m(i,j) = s_{2N-i-j+m} (1-based);
// classical: S_N = J S^N J, entries s_{i+j-2+m}.
template <class R = double>
struct HankelPair {
    Mat<R> S0, S1;
    HankelOrdering ordering = HankelOrdering::classical;

    HankelPair as(HankelOrdering o) const
    {
        if (o == ordering)
            return *this;
        return {reverse_order(S0), reverse_order(S1), o};
    }
};

template <class R>
Mat<R> hankel(const MomentSequence<R>& s, int N, int shift, HankelOrdering ord)
{
    if (N < 1 || static_cast<int>(s.size()) < 2 * N - 1 + shift)
        throw DomainError("hankel: not enough moments");
    Mat<R> H(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            H(i, j) = ord == HankelOrdering::classical ? s[i + j + shift] : s[2 * N - 2 - i - j + shift];
    return H;
}

template <class R>
HankelPair<R> hankel_pair(const MomentSequence<R>& s, int N, HankelOrdering ord = HankelOrdering::classical)
{
    return {hankel(s, N, 0, ord), hankel(s, N, 1, ord), ord};
}

// B^N = E^*(V^{N+1})^* C^{N+1} E + C^N V^N from a response r with at least 2N entries.
// Uses the moment-normalized connecting sums (no a0 prefactor).
template <class R>
Mat<R> build_B(const std::vector<R>& r, int N)
{
    if (N < 1 || static_cast<int>(r.size()) < 2 * N)
        throw DomainError("build_B: need at least 2N response entries");
    Mat<R> B(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            R v = detail::connecting_sum(r, N + 1, i + 1, j);
            if (j + 1 < N)
                v += detail::connecting_sum(r, N, i, j + 1);
            B(i, j) = v;
        }
    return B;
}

template <class R = double>
struct TruncatedMomentResult {
    SpectralMeasure<R> measure;
    Mat<R> controls;        // column k: normalized f_k with (C^N f_k, f_k) = 1
    std::vector<R> alphas;  // (R f_k)_N
    bool clustered = false;
};

namespace detail {

template <class R>
void check_moments(const MomentSequence<R>& s, int N, const char* who)
{
    if (N < 1 || static_cast<int>(s.size()) < 2 * N)
        throw DomainError(std::string(who) + ": need 2N moments s_0..s_{2N-1}");
    if (!(s[0] > R(0)))
        throw NumericalError(std::string(who) + ": moments not realizable (s_0 <= 0)");
}

}  // namespace detail

// Generalized eigenproblem B^N f = lambda C^N f; weights alpha_k^2.
template <class R>
TruncatedMomentResult<R> truncated_moment_spectral(const MomentSequence<R>& s, int N)
{
    using std::abs;
    detail::check_moments(s, N, "truncated_moment_spectral");
    std::vector<R> r = moments_to_response(MomentSequence<R>(s.begin(), s.begin() + 2 * N));
    Mat<R> C = detail::connecting_sums(r, N);
    Mat<R> B = build_B(r, N);
    B = (B + B.transpose()).eval() / R(2);

    Eigen::LLT<Mat<R>> llt(C);
    if (llt.info() != Eigen::Success)
        throw NumericalError("truncated_moment_spectral: moments not realizable (C^N not positive definite)");
    Mat<R> Lm = llt.matrixL();
    for (int i = 0; i < N; ++i)
        if (!(Lm(i, i) > detail::pivot_tolerance<R>(N) * abs(C(i, i))))
            throw NumericalError("truncated_moment_spectral: moments not realizable (C^N singular)");
    Mat<R> Linv = Lm.template triangularView<Eigen::Lower>().solve(Mat<R>::Identity(N, N));
    Mat<R> M = Linv * B * Linv.transpose();
    M = (M + M.transpose()).eval() / R(2);
    Eigen::SelfAdjointEigenSolver<Mat<R>> es(M);
    if (es.info() != Eigen::Success)
        throw NumericalError("truncated_moment_spectral: eigensolver failed");

    TruncatedMomentResult<R> out;
    out.controls = Linv.transpose() * es.eigenvectors();
    const auto& ev = es.eigenvalues();
    for (int k = 0; k < N; ++k) {
        R alpha(0);
        for (int j = 0; j < N; ++j)
            alpha += r[N - 1 - j] * out.controls(j, k);
        out.alphas.push_back(alpha);
        out.measure.atoms.push_back({ev(k), alpha * alpha});
    }
    R diam = ev(N - 1) - ev(0);
    for (int k = 1; k < N; ++k)
        if (ev(k) - ev(k - 1) < R(1e-8) * diam)
            out.clustered = true;
    return out;
}

template <class R = double>
struct NaiveMomentResult {
    JacobiSpec<R> spec;
    SpectralMeasure<R> measure;
};

// s -> r -> factorization -> block -> eigensolve. `padding` appends (a_k, b_{k+1})
// pairs after the recovered N x N block.
template <class R>
NaiveMomentResult<R> truncated_moment_naive(const MomentSequence<R>& s, int N,
                                             const std::vector<std::pair<R, R>>& padding = {})
{
    detail::check_moments(s, N, "truncated_moment_naive");
    std::vector<R> r = moments_to_response(MomentSequence<R>(s.begin(), s.begin() + 2 * N));
    auto rep = invert_factorization(r, N);
    std::vector<R> a = rep.a, b = rep.b;
    for (const auto& [ak, bk] : padding) {
        a.push_back(ak);
        b.push_back(bk);
    }
    JacobiSpec<R> spec(rep.a0, a, b);
    auto mu = spectral_measure(spec);
    for (auto& at : mu.atoms)
        at.weight *= rep.a0;
    return {spec, mu};
}

enum class MomentKind { hamburger, stieltjes, hausdorff };

template <class R = double>
struct SolvabilityRow {
    int N = 0;
    bool pass = false;
    bool strict = false;  // the required inequalities hold strictly
    R min_eig_S0{}, min_eig_S1{}, min_eig_diff{};
};

namespace detail {

template <class R>
R min_eig(const Mat<R>& M)
{
    Eigen::SelfAdjointEigenSolver<Mat<R>> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

template <class R>
R max_abs_entry(const Mat<R>& M)
{
    return M.cwiseAbs().maxCoeff();
}

}  // namespace detail

// Per-N verdicts. A finite atomic measure has singular Hankel matrices beyond its
// atom count, so `pass` accepts eigenvalues down to -1e-10 * |S|; `strict` records
// strict positivity.
template <class R>
std::vector<SolvabilityRow<R>> solvability(const MomentSequence<R>& s, MomentKind kind, int N_max)
{
    const bool need_s1 = kind != MomentKind::hamburger;
    if (N_max < 1 || static_cast<int>(s.size()) < 2 * N_max - 1 + (need_s1 ? 1 : 0))
        throw DomainError("solvability: not enough moments for N_max");
    std::vector<SolvabilityRow<R>> rows;
    for (int N = 1; N <= N_max; ++N) {
        SolvabilityRow<R> row;
        row.N = N;
        Mat<R> S0 = hankel(s, N, 0, HankelOrdering::classical);
        R tol = R(1e-10) * detail::max_abs_entry(S0);
        row.min_eig_S0 = detail::min_eig(S0);
        bool ok = row.min_eig_S0 >= -tol && S0(0, 0) > R(0);
        bool strict = row.min_eig_S0 > tol;
        if (need_s1) {
            Mat<R> S1 = hankel(s, N, 1, HankelOrdering::classical);
            R tol1 = R(1e-10) * std::max(detail::max_abs_entry(S0), detail::max_abs_entry(S1));
            row.min_eig_S1 = detail::min_eig(S1);
            ok = ok && row.min_eig_S1 >= -tol1;
            strict = strict && row.min_eig_S1 > tol1;
            if (kind == MomentKind::hausdorff) {
                row.min_eig_diff = detail::min_eig(Mat<R>(S0 - S1));
                ok = ok && row.min_eig_diff >= -tol1;
                strict = strict && row.min_eig_diff >= -tol1;
            }
        }
        row.pass = ok;
        row.strict = ok && strict;
        rows.push_back(row);
    }
    return rows;
}

template <class R = double>
struct IndeterminacyTable {
    std::vector<int> N;
    std::vector<R> gamma_form, delta_form, M, L;
    std::string gamma_trend, delta_trend, M_trend, L_trend;  // heuristic: "bounded-looking" or "growing"
};

namespace detail {

template <class R>
std::string trend(const std::vector<R>& v)
{
    using std::abs;
    const int n = static_cast<int>(v.size());
    if (n < 6)
        return "growing";
    R hi = v[n - 1], lo = v[n - 6];
    R scale = std::max<R>(abs(hi), std::numeric_limits<R>::min());
    return abs(hi - lo) / scale < R(1e-3) ? "bounded-looking" : "growing";
}

}  // namespace detail

template <class R>
IndeterminacyTable<R> indeterminacy_sequences(const MomentSequence<R>& s, int N_max)
{
    if (N_max < 1 || static_cast<int>(s.size()) < 2 * N_max - 1)
        throw DomainError("indeterminacy_sequences: need 2N_max-1 moments");
    std::vector<R> r = moments_to_response(MomentSequence<R>(s.begin(), s.begin() + 2 * N_max - 1));
    // T_t(0) and T'_t(0)
    std::vector<R> T0(N_max + 1), T1(N_max + 1);
    T0[0] = R(0);
    T1[0] = R(0);
    if (N_max >= 1) {
        T0[1] = R(1);
        T1[1] = R(0);
    }
    for (int t = 1; t < N_max; ++t) {
        T0[t + 1] = -T0[t - 1];
        T1[t + 1] = T0[t] - T1[t - 1];
    }
    IndeterminacyTable<R> tab;
    for (int N = 1; N <= N_max; ++N) {
        Mat<R> C = detail::connecting_sums(r, N);
        Eigen::LDLT<Mat<R>> ldlt(C);
        R dmin = ldlt.vectorD().cwiseAbs().minCoeff();
        if (ldlt.info() != Eigen::Success || !(dmin > detail::pivot_tolerance<R>(N) * detail::max_abs_entry(C)))
            throw NumericalError("indeterminacy_sequences: C^" + std::to_string(N) + " is singular");
        Vec<R> g(N), d(N);
        for (int i = 0; i < N; ++i) {
            g(i) = T0[N - i];
            d(i) = T1[N - i];
        }
        Vec<R> Cg = ldlt.solve(g), Cd = ldlt.solve(d);
        // (R^N)^* Gamma with the Dirichlet response operator at horizon N
        Vec<R> Rg = Vec<R>::Zero(N);
        for (int j = 0; j < N; ++j)
            for (int t = j + 1; t <= N; ++t)
                Rg(j) += r[t - 1 - j] * g(t - 1);
        Vec<R> CRg = ldlt.solve(Rg);
        tab.N.push_back(N);
        tab.gamma_form.push_back(Cg.dot(g));
        tab.delta_form.push_back(Cd.dot(d));
        tab.M.push_back(Cg.dot(g));
        tab.L.push_back(Cg(0) == R(0) ? std::numeric_limits<R>::infinity() : CRg(0) / Cg(0));
    }
    tab.gamma_trend = detail::trend(tab.gamma_form);
    tab.delta_trend = detail::trend(tab.delta_form);
    tab.M_trend = detail::trend(tab.M);
    tab.L_trend = detail::trend(tab.L);
    return tab;
}

}  // namespace bcj
