#pragma once

#include <functional>

#include <boost/math/quadrature/gauss.hpp>

#include "core.hpp"

namespace bcj {

struct TimeGrid {
    double T = 1.0;
    int M = 100;

    TimeGrid(double T_, int M_) : T(T_), M(M_)
    {
        if (!(T > 0.0) || M < 2)
            throw DomainError("TimeGrid: need T > 0 and M >= 2");
    }
    double step() const { return T / M; }
    double node(int j) const { return j * T / M; }
};

// S(t, lambda) = sin(sqrt(lambda) t)/sqrt(lambda), t, or sinh(sqrt(-lambda) t)/sqrt(-lambda).
inline double s_kernel(double t, double lambda)
{
    if (lambda > 0.0) {
        double w = std::sqrt(lambda);
        return std::sin(w * t) / w;
    }
    if (lambda < 0.0) {
        double w = std::sqrt(-lambda);
        return std::sinh(w * t) / w;
    }
    return t;
}

inline double s_kernel_dt(double t, double lambda)
{
    if (lambda > 0.0)
        return std::cos(std::sqrt(lambda) * t);
    if (lambda < 0.0)
        return std::cosh(std::sqrt(-lambda) * t);
    return 1.0;
}

namespace detail {

// Composite Simpson weights on j intervals of width h (3/8 rule on the last
// three when j is odd, trapezoid for j = 1).
inline std::vector<double> simpson_weights(int j, double h)
{
    std::vector<double> w(j + 1, 0.0);
    if (j == 0)
        return w;
    if (j == 1) {
        w[0] = w[1] = h / 2;
        return w;
    }
    int even = j % 2 == 0 ? j : j - 3;
    for (int i = 0; i + 2 <= even; i += 2) {
        w[i] += h / 3;
        w[i + 1] += 4 * h / 3;
        w[i + 2] += h / 3;
    }
    if (even != j) {
        w[even] += 3 * h / 8;
        w[even + 1] += 9 * h / 8;
        w[even + 2] += 9 * h / 8;
        w[even + 3] += 3 * h / 8;
    }
    return w;
}

}  // namespace detail

inline Vec<double> trapezoid_weights(const TimeGrid& g)
{
    Vec<double> w = Vec<double>::Constant(g.M + 1, g.step());
    w(0) = w(g.M) = g.step() / 2;
    return w;
}

// u(t_j) = sum_k h_k(t_j) phi^k with h_k = w_k (f * S_k). Returns N x (M+1).
inline Mat<double> solve_second_order(const JacobiSpec<double>& spec, const std::vector<double>& f, const TimeGrid& g)
{
    if (static_cast<int>(f.size()) != g.M + 1)
        throw DomainError("solve_second_order: control must have M+1 samples");
    auto sd = eig_spectral_data(spec);
    const int N = spec.size();
    const double h = g.step();
    Mat<double> u = Mat<double>::Zero(N, g.M + 1);
    for (int k = 0; k < N; ++k) {
        std::vector<double> S(g.M + 1);
        for (int j = 0; j <= g.M; ++j)
            S[j] = s_kernel(g.node(j), sd.eigenvalues[k]);
        const double wk = 1.0 / sd.omegas[k];
        for (int j = 1; j <= g.M; ++j) {
            auto q = detail::simpson_weights(j, h);
            double c = 0.0;
            for (int i = 0; i <= j; ++i)
                c += q[i] * f[i] * S[j - i];
            for (int n = 0; n < N; ++n)
                u(n, j) += wk * c * sd.phi(n, k);
        }
    }
    return u;
}

// r(tau) on tau_m = m T/M, m = 0..2M (the connecting kernel reaches 2T).
struct ResponseFunctionSamples {
    TimeGrid grid;
    std::vector<double> values;
    std::vector<double> lambdas, weights;

    double derivative(double tau) const
    {
        double v = 0.0;
        for (std::size_t k = 0; k < lambdas.size(); ++k)
            v += weights[k] * s_kernel_dt(tau, lambdas[k]);
        return v;
    }
};

inline ResponseFunctionSamples response_function(const JacobiSpec<double>& spec, const TimeGrid& g)
{
    auto mu = spectral_measure(spec);
    ResponseFunctionSamples rs{g, {}, {}, {}};
    for (const auto& at : mu.atoms) {
        rs.lambdas.push_back(at.lambda);
        rs.weights.push_back(at.weight);
    }
    rs.values.resize(2 * g.M + 1);
    for (int m = 0; m <= 2 * g.M; ++m) {
        double v = 0.0;
        for (std::size_t k = 0; k < rs.lambdas.size(); ++k)
            v += rs.weights[k] * s_kernel(g.node(m), rs.lambdas[k]);
        rs.values[m] = v;
    }
    return rs;
}

// K(t_i, t_j) = 1/2 int_{|t_i - t_j|}^{2T - t_i - t_j} r, with r integrated by the cumulative trapezoid rule.
inline Mat<double> connecting_dynamic(const ResponseFunctionSamples& rs)
{
    const auto& g = rs.grid;
    if (static_cast<int>(rs.values.size()) < 2 * g.M + 1)
        throw DomainError("connecting_dynamic: r must be sampled on [0, 2T]");
    const double h = g.step();
    std::vector<double> Rc(2 * g.M + 1, 0.0);
    for (int m = 1; m <= 2 * g.M; ++m)
        Rc[m] = Rc[m - 1] + 0.5 * h * (rs.values[m - 1] + rs.values[m]);
    Mat<double> K(g.M + 1, g.M + 1);
    for (int i = 0; i <= g.M; ++i)
        for (int j = 0; j <= g.M; ++j)
            K(i, j) = 0.5 * (Rc[2 * g.M - i - j] - Rc[std::abs(i - j)]);
    return K;
}

inline Mat<double> connecting_spectral(const JacobiSpec<double>& spec, const TimeGrid& g)
{
    auto mu = spectral_measure(spec);
    Mat<double> F(g.M + 1, mu.size());
    for (int i = 0; i <= g.M; ++i)
        for (std::size_t k = 0; k < mu.size(); ++k)
            F(i, k) = s_kernel(g.T - g.node(i), mu.atoms[k].lambda);
    Vec<double> w(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k)
        w(k) = mu.atoms[k].weight;
    return F * w.asDiagonal() * F.transpose();
}

struct ContinuousRecovery {
    JacobiSpec<double> spec;
    Mat<double> controls;  // column n-1 holds f_n on the grid
    std::vector<double> singular_values;
    double orthonormality_error = 0.0;  // max |(C f_i, f_j) - delta_ij|
};

// Rank-N restriction of the dynamic connecting operator, then
//   C f_1 = r(T - .),  b_n = -((C f_n)'', f_n),
//   C (a_n f_{n+1}) = -(C f_n)'' - b_n C f_n - a_{n-1} C f_{n-1},  a_n^2 = (C a_n f_{n+1}, a_n f_{n+1}).
// Second derivatives use the kernel 1/2 [r'(2T - t - s) - r'(|t - s|)] with r' from the spectral data.
inline ContinuousRecovery recover_matrix_continuous(const ResponseFunctionSamples& rs, int N)
{
    const auto& g = rs.grid;
    if (N < 1)
        throw DomainError("recover_matrix_continuous: N must be >= 1");
    if (g.M < 2 * N)
        throw DomainError("recover_matrix_continuous: grid too coarse (need M >= 2N)");
    const int P = g.M + 1;
    const double h = g.step();
    Mat<double> K = connecting_dynamic(rs);
    Vec<double> w = trapezoid_weights(g);
    Vec<double> sw = w.cwiseSqrt();
    Mat<double> Ks = sw.asDiagonal() * K * sw.asDiagonal();
    Ks = (0.5 * (Ks + Ks.transpose())).eval();
    Eigen::SelfAdjointEigenSolver<Mat<double>> es(Ks);
    Vec<double> ev = es.eigenvalues().reverse();
    Mat<double> V = es.eigenvectors().rowwise().reverse();
    std::vector<double> sv(ev.data(), ev.data() + std::min(P, 2 * N + 2));
    // Rank N means a clear gap between the N-th eigenvalue and the discretization floor.
    const double floor = std::max(std::abs(ev(N)), 1e-15 * ev(0));
    if (!(ev(N - 1) > 1e3 * floor))
        throw NumericalError("recover_matrix_continuous: numerical rank of C^T is below N");
    Mat<double> Vn = V.leftCols(N);
    Vec<double> inv = ev.head(N).cwiseInverse();
    // C^+ g restricted to the rank-N range, in weighted coordinates.
    auto pinv = [&](const Vec<double>& rhs) -> Vec<double> {
        Vec<double> y = sw.asDiagonal() * rhs;
        Vec<double> z = Vn * (inv.asDiagonal() * (Vn.transpose() * y));
        return z.cwiseQuotient(sw);
    };
    Mat<double> K2(P, P);
    std::vector<double> rp(2 * g.M + 1);
    for (int m = 0; m <= 2 * g.M; ++m)
        rp[m] = rs.derivative(m * h);
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j)
            K2(i, j) = 0.5 * (rp[2 * g.M - i - j] - rp[std::abs(i - j)]);
    auto apply = [&](const Mat<double>& Kx, const Vec<double>& f) -> Vec<double> { return Kx * w.cwiseProduct(f); };
    auto pair = [&](const Vec<double>& x, const Vec<double>& y) { return w.dot(x.cwiseProduct(y)); };

    Vec<double> g1(P);
    for (int i = 0; i < P; ++i)
        g1(i) = rs.values[g.M - i];
    Mat<double> F(P, N);
    F.col(0) = pinv(g1);
    std::vector<double> a, b;
    Vec<double> g_prev = Vec<double>::Zero(P);
    double a_prev = 0.0;
    for (int n = 0; n < N; ++n) {
        Vec<double> f = F.col(n);
        Vec<double> gn = apply(K, f);
        Vec<double> g2 = apply(K2, f);
        double bn = -pair(g2, f);
        b.push_back(bn);
        if (n + 1 == N)
            break;
        Vec<double> rhs = -g2 - bn * gn - a_prev * g_prev;
        Vec<double> af = pinv(rhs);
        double a2 = pair(rhs, af);
        if (!(a2 > 0.0))
            throw NumericalError("recover_matrix_continuous: negative a_n^2 (conditioning failure)");
        double an = std::sqrt(a2);
        a.push_back(an);
        F.col(n + 1) = af / an;
        g_prev = gn;
        a_prev = an;
    }
    ContinuousRecovery out{JacobiSpec<double>(1.0, a, b), F, sv, 0.0};
    Mat<double> G = F.transpose() * w.asDiagonal() * K * w.asDiagonal() * F;
    out.orthonormality_error = (G - Mat<double>::Identity(N, N)).cwiseAbs().maxCoeff();
    return out;
}

struct StringSpec {
    std::vector<double> masses;   // m_1..m_{N-1}
    std::vector<double> lengths;  // l_1..l_N

    StringSpec(std::vector<double> m, std::vector<double> l) : masses(std::move(m)), lengths(std::move(l))
    {
        if (lengths.size() < 2 || masses.size() + 1 != lengths.size())
            throw DomainError("StringSpec: need N >= 2 lengths and N-1 masses");
        for (double x : masses)
            if (!(x > 0.0))
                throw DomainError("StringSpec: masses must be positive");
        for (double x : lengths)
            if (!(x > 0.0))
                throw DomainError("StringSpec: lengths must be positive");
    }

    static StringSpec uniform(int N)
    {
        return StringSpec(std::vector<double>(N - 1, 1.0 / N), std::vector<double>(N, 1.0 / N));
    }
};

struct StringSystem {
    Mat<double> M, A;
    // M^{-1/2}(-A)M^{-1/2} conjugated by diag(+1, -1, +1, ...) so the
    // off-diagonal is positive; a0 carries the input gain 1/(l_1 sqrt(m_1)).
    JacobiSpec<double> L;
    double input_gain;
};

inline StringSystem string_system(const StringSpec& s)
{
    const int n = static_cast<int>(s.masses.size());
    const auto& l = s.lengths;
    const auto& m = s.masses;
    Mat<double> M = Mat<double>::Zero(n, n), A = Mat<double>::Zero(n, n);
    std::vector<double> la, lb;
    for (int i = 0; i < n; ++i) {
        M(i, i) = m[i];
        A(i, i) = -(l[i] + l[i + 1]) / (l[i] * l[i + 1]);
        lb.push_back(-A(i, i) / m[i]);
        if (i + 1 < n) {
            A(i, i + 1) = A(i + 1, i) = 1.0 / l[i + 1];
            la.push_back(1.0 / (l[i + 1] * std::sqrt(m[i] * m[i + 1])));
        }
    }
    double gain = 1.0 / (l[0] * std::sqrt(m[0]));
    return {M, A, JacobiSpec<double>(gain, la, lb), gain};
}

struct TestFunction {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

namespace detail {

// Smooth step from 1 (x <= a) to 0 (x >= b).
inline double smooth_cutoff(double x, double a, double b)
{
    if (x <= a)
        return 1.0;
    if (x >= b)
        return 0.0;
    double y = (x - a) / (b - a);
    auto e = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
    return e(1.0 - y) / (e(1.0 - y) + e(y));
}

}  // namespace detail

// exp(-(x-c)^2 / (2 sigma^2)), optionally multiplied by a smooth cutoff on [cut_a, cut_b].
inline TestFunction gauss_test(double sigma, double center = 0.0, double cut_a = 0.0, double cut_b = 0.0)
{
    bool cut = cut_b > cut_a;
    auto v = [=](double x) {
        double g = std::exp(-(x - center) * (x - center) / (2 * sigma * sigma));
        return cut ? g * detail::smooth_cutoff(x, cut_a, cut_b) : g;
    };
    auto d = [=](double x) {
        if (cut && x > cut_a)
            return (v(x + 1e-6) - v(x - 1e-6)) / 2e-6;
        double g = std::exp(-(x - center) * (x - center) / (2 * sigma * sigma));
        return -(x - center) / (sigma * sigma) * g;
    };
    return {"gauss", v, d};
}

// (x - a)^2 (b - x)^2 / ((b - a)/2)^4 on [a, b], zero outside. Needs a < 0 < b for a nonzero value at 0.
inline TestFunction poly_bump(double a, double b)
{
    double s = std::pow((b - a) / 2, 4);
    auto v = [=](double x) { return x <= a || x >= b ? 0.0 : (x - a) * (x - a) * (b - x) * (b - x) / s; };
    auto d = [=](double x) {
        if (x <= a || x >= b)
            return 0.0;
        return (2 * (x - a) * (b - x) * (b - x) - 2 * (x - a) * (x - a) * (b - x)) / s;
    };
    return {"poly-bump", v, d};
}

namespace detail {

// (hat * S)(t) for the hat of half-width h and unit integral, S = sin(w t)/w.
inline double hat_convolved_sine(double t, double w, double h)
{
    auto Q = [w](double x) {
        if (x <= 0.0)
            return 0.0;
        double y = w * x;
        if (std::abs(y) < 1e-3)
            return x * x * x / 6 - w * w * std::pow(x, 5) / 120;
        return (y - std::sin(y)) / (w * w * w);
    };
    return (Q(t) - 2 * Q(t - h) + Q(t - 2 * h)) / (h * h);
}

inline double hat(double t, double h)
{
    if (t < 0.0 || t > 2 * h)
        return 0.0;
    return (1.0 - std::abs(t - h) / h) / h;
}

template <class F>
double composite_gauss(F&& f, double a, double b, int panels)
{
    double s = 0.0, d = (b - a) / panels;
    for (int i = 0; i < panels; ++i)
        s += boost::math::quadrature::gauss<double, 20>::integrate(f, a + i * d, a + (i + 1) * d);
    return s;
}

}  // namespace detail

struct StringPairing {
    int N = 0;
    double pair_r = 0, pair_rtilde = 0, pair_field = 0;
    double err_r = 0, err_rtilde = 0, err_field = 0;  // vs psi(0), psi'(0), psi_x(t0)
};

struct CorrectedResponse {
    std::vector<double> r;        // u_1 on the grid for the hat control
    std::vector<double> r_tilde;  // (u_1 - u_0) / l_1
    StringPairing pairing;
};

// Uniform string with N - 1 masses driven by a hat of half-width h = T/M.
// Pairings use the window [0, T]; the field pairing is taken at time t0.
inline CorrectedResponse corrected_response(int N, const TimeGrid& g, const TestFunction& psi_t,
                                            const TestFunction& psi_x, double t0, int panels = 4000)
{
    auto sys = string_system(StringSpec::uniform(N));
    auto sd = eig_spectral_data(sys.L);
    const int n = N - 1;
    const double h = g.step();
    const double l1 = 1.0 / N, m1 = 1.0 / N;
    std::vector<double> om(n), w(n);
    for (int k = 0; k < n; ++k) {
        om[k] = std::sqrt(sd.eigenvalues[k]);
        w[k] = 1.0 / sd.omegas[k];
    }
    const double c1 = sys.input_gain / std::sqrt(m1);
    auto u1 = [&](double t) {
        double v = 0.0;
        for (int k = 0; k < n; ++k)
            v += w[k] * detail::hat_convolved_sine(t, om[k], h);
        return c1 * v;
    };

    CorrectedResponse out;
    for (int j = 0; j <= g.M; ++j) {
        double t = g.node(j);
        double v = u1(t);
        out.r.push_back(v);
        out.r_tilde.push_back((v - detail::hat(t, h)) / l1);
    }
    auto& p = out.pairing;
    p.N = N;
    p.pair_r = detail::composite_gauss([&](double t) { return u1(t) * psi_t.value(t); }, 0.0, g.T, panels);
    double f0 = detail::composite_gauss([&](double t) { return detail::hat(t, h) * psi_t.value(t); }, 0.0, 2 * h, 2);
    p.pair_rtilde = (p.pair_r - f0) / l1;
    p.err_r = std::abs(p.pair_r - psi_t.value(0.0));
    p.err_rtilde = std::abs(p.pair_rtilde - psi_t.derivative(0.0));

    // Field at t0: u_i = (-1)^{i-1} gain / sqrt(m_i) sum_k phi^k_i w_k (hat * S_k)(t0).
    std::vector<double> bump(n);
    for (int k = 0; k < n; ++k)
        bump[k] = detail::hat_convolved_sine(t0, om[k], h);
    std::vector<double> xs(N + 1), us(N + 1, 0.0);
    for (int i = 0; i <= N; ++i)
        xs[i] = static_cast<double>(i) / N;
    us[0] = detail::hat(t0, h);
    for (int i = 1; i < N; ++i) {
        double v = 0.0;
        for (int k = 0; k < n; ++k)
            v += sd.phi(i - 1, k) * w[k] * bump[k];
        us[i] = ((i - 1) % 2 == 0 ? 1.0 : -1.0) * sys.input_gain / std::sqrt(1.0 / N) * v;
    }
    p.pair_field = 0.0;
    for (int i = 0; i < N; ++i) {
        auto seg = [&](double x) {
            double y = (x - xs[i]) / (xs[i + 1] - xs[i]);
            return ((1 - y) * us[i] + y * us[i + 1]) * psi_x.value(x);
        };
        p.pair_field += detail::composite_gauss(seg, xs[i], xs[i + 1], 1);
    }
    p.err_field = std::abs(p.pair_field - psi_x.value(t0));
    return out;
}

}  // namespace bcj
