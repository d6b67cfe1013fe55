#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance_suite.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace bcj;

namespace {

class SchemaError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// FNV-1a over the canonical dump.
std::string config_hash(const json& cfg)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : cfg.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
    std::string str() const
    {
        std::string out;
        auto line = [&](const std::vector<std::string>& v) {
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? "," : "") + v[i];
            out += "\n";
        };
        line(header);
        for (const auto& r : rows)
            line(r);
        return out;
    }
};

struct Context {
    json config;
    std::string command;
    fs::path out;
    std::uint64_t seed;
    std::string filter;
    json manifest = json::object();
    bool ok = true;

    void write_csv(const std::string& stem, const Csv& csv)
    {
        fs::create_directories(out);
        fs::path p = out / (stem + ".csv");
        std::ofstream(p) << csv.str();
        json side{{"command", command}, {"config", config}, {"config_hash", config_hash(config)}, {"seed", seed},
                  {"columns", csv.header}};
        std::ofstream(out / (stem + ".json")) << side.dump(2) << "\n";
        manifest["files"].push_back(p.string());
    }

    void write_json(const std::string& stem, json j)
    {
        fs::create_directories(out);
        j["config_hash"] = config_hash(config);
        fs::path p = out / (stem + ".json");
        std::ofstream(p) << j.dump(2) << "\n";
        manifest["files"].push_back(p.string());
    }

    void check(const std::string& name, bool pass, double value)
    {
        manifest["summary"][name] = value;
        manifest["checks"][name] = pass;
        ok = ok && pass;
    }
};

const json& need(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int need_int(const json& j, const char* key, int lo)
{
    const auto& v = need(j, key);
    if (!v.is_number_integer() || v.get<int>() < lo)
        throw SchemaError(std::string("field \"") + key + "\" must be an integer >= " + std::to_string(lo));
    return v.get<int>();
}

std::vector<double> need_vec(const json& j, const char* key)
{
    const auto& v = need(j, key);
    if (!v.is_array())
        throw SchemaError(std::string("field \"") + key + "\" must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number())
            throw SchemaError(std::string("field \"") + key + "\" must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

// "free", {"a0":..,"a":[..],"b":[..]} or {"random": N}; `n_default` sizes "free".
JacobiSpec<double> parse_spec(const json& v, int n_default, std::uint64_t seed)
{
    if (v.is_string()) {
        if (v.get<std::string>() != "free")
            throw SchemaError("spec string must be \"free\"");
        return JacobiSpec<double>::free(std::max(n_default, 1));
    }
    if (!v.is_object())
        throw SchemaError("spec must be \"free\" or an object");
    if (v.contains("random")) {
        std::mt19937_64 g(seed);
        return acceptance::random_spec(g, need_int(v, "random", 1));
    }
    double a0 = v.value("a0", 1.0);
    return JacobiSpec<double>(a0, need_vec(v, "a"), need_vec(v, "b"));
}

json spec_json(const JacobiSpec<double>& s)
{
    return {{"a0", s.a0()}, {"a", s.a()}, {"b", s.b()}};
}

bool quad_requested(const json& cfg)
{
    return cfg.value("precision", std::string("double")) == "quad";
}

// ---------------------------------------------------------------------------

void cmd_response(Context& c)
{
    const auto& cfg = c.config;
    int T = need_int(cfg, "T", 1);
    std::string bc = cfg.value("bc", std::string("semi_infinite"));
    if (bc != "semi_infinite" && bc != "dirichlet")
        throw SchemaError("bc must be \"semi_infinite\" or \"dirichlet\"");
    auto spec = parse_spec(need(cfg, "spec"), T, c.seed);
    auto boundary = bc == "dirichlet" ? Boundary::dirichlet : Boundary::semi_infinite;
    auto r = response_vector(spec, T, boundary);
    Csv csv{{"t", "r"}, {}};
    for (int t = 0; t < T; ++t)
        csv.row({std::to_string(t), num(r[t])});
    c.write_csv("response", csv);
    if (cfg.contains("control")) {
        auto f = need_vec(cfg, "control");
        if (static_cast<int>(f.size()) != T)
            throw SchemaError("control must have T entries");
        auto w = boundary == Boundary::dirichlet ? solve_finite_dirichlet(spec, f, T) : solve_semi_infinite(spec, f, T);
        Csv field{{"n", "t", "value"}, {}};
        for (int n = 0; n < w.u.rows(); ++n)
            for (int t = 0; t <= T; ++t)
                field.row({std::to_string(n), std::to_string(t), num(w(n, t))});
        c.write_csv("field", field);
    }
    c.manifest["summary"]["r0"] = r[0];
}

template <class S>
json report_json(const InversionReport<S>& rep)
{
    auto to_d = [](const std::vector<S>& v) {
        json out = json::array();
        for (const auto& x : v) {
            if constexpr (is_complex_v<S>)
                out.push_back({static_cast<double>(x.real()), static_cast<double>(x.imag())});
            else
                out.push_back(static_cast<double>(x));
        }
        return out;
    };
    return {{"T", rep.T},
            {"a0", to_d({rep.a0})[0]},
            {"a", to_d(rep.a)},
            {"a_squared", to_d(rep.a_squared)},
            {"b", to_d(rep.b)},
            {"pivots", to_d(rep.pivots)},
            {"determinants", to_d(rep.determinants)},
            {"tolerance", static_cast<double>(rep.tolerance)},
            {"residual", static_cast<double>(rep.residual)},
            {"complete", rep.complete()}};
}

template <class S>
void invert_and_report(Context& c, const std::vector<S>& r, int T, Mode mode)
{
    auto verdict = characterize(r, T, mode);
    json out{{"verdict", {{"admissible", verdict.admissible}, {"reason", verdict.reason}}}};
    try {
        auto rep = invert_factorization(r, T);
        out["report"] = report_json(rep);
        c.check("residual", static_cast<double>(rep.residual) <= 1e-8, static_cast<double>(rep.residual));
    } catch (const NumericalError& e) {
        out["error"] = e.what();
        c.check("invertible", false, 0.0);
    }
    c.write_json("invert", out);
}

void cmd_invert(Context& c)
{
    const auto& cfg = c.config;
    int T = need_int(cfg, "T", 1);
    std::string mode = cfg.value("mode", std::string("real"));
    if (mode != "real" && mode != "complex")
        throw SchemaError("mode must be \"real\" or \"complex\"");
    const auto& rj = need(cfg, "r");
    if (!rj.is_array())
        throw SchemaError("r must be an array");
    if (mode == "complex") {
        std::vector<std::complex<double>> r;
        for (const auto& x : rj) {
            if (x.is_number())
                r.emplace_back(x.get<double>(), 0.0);
            else if (x.is_array() && x.size() == 2)
                r.emplace_back(x[0].get<double>(), x[1].get<double>());
            else
                throw SchemaError("complex r entries must be numbers or [re, im]");
        }
        invert_and_report(c, r, T, Mode::complex);
        return;
    }
    auto r = need_vec(cfg, "r");
    if (quad_requested(cfg))
        invert_and_report(c, std::vector<quad>(r.begin(), r.end()), T, Mode::real);
    else
        invert_and_report(c, r, T, Mode::real);
}

void cmd_moments(Context& c)
{
    const auto& cfg = c.config;
    auto s = need_vec(cfg, "s");
    int N = need_int(cfg, "N", 1);
    std::string task = cfg.value("task", std::string("truncated"));
    if (task == "truncated") {
        auto res = truncated_moment_spectral(s, N);
        auto naive = truncated_moment_naive(s, N);
        auto a = acceptance::sorted_atoms(res.measure), b = acceptance::sorted_atoms(naive.measure);
        Csv csv{{"k", "lambda", "weight", "lambda_naive", "weight_naive"}, {}};
        double diff = 0.0;
        for (int k = 0; k < N; ++k) {
            csv.row({std::to_string(k), num(a[k].lambda), num(a[k].weight), num(b[k].lambda), num(b[k].weight)});
            diff = std::max({diff, std::abs(a[k].lambda - b[k].lambda), std::abs(a[k].weight - b[k].weight)});
        }
        c.write_csv("moments_truncated", csv);
        c.check("route_agreement", diff <= 1e-6, diff);
        c.manifest["summary"]["clustered"] = res.clustered;
    } else if (task == "solvability") {
        std::string kind = cfg.value("kind", std::string("hamburger"));
        MomentKind k = kind == "stieltjes"   ? MomentKind::stieltjes
                       : kind == "hausdorff" ? MomentKind::hausdorff
                       : kind == "hamburger" ? MomentKind::hamburger
                                             : throw SchemaError("kind must be hamburger, stieltjes or hausdorff");
        auto rows = solvability(s, k, N);
        Csv csv{{"N", "pass", "strict", "min_eig_S0", "min_eig_S1", "min_eig_diff"}, {}};
        bool all = true;
        for (const auto& r : rows) {
            csv.row({std::to_string(r.N), r.pass ? "1" : "0", r.strict ? "1" : "0", num(r.min_eig_S0),
                     num(r.min_eig_S1), num(r.min_eig_diff)});
            all = all && r.pass;
        }
        c.write_csv("moments_solvability", csv);
        c.check("solvable", all, all ? 1.0 : 0.0);
    } else if (task == "indeterminacy") {
        auto tab = indeterminacy_sequences(s, N);
        Csv csv{{"N", "gamma", "delta", "M", "L"}, {}};
        for (std::size_t i = 0; i < tab.N.size(); ++i)
            csv.row({std::to_string(tab.N[i]), num(tab.gamma_form[i]), num(tab.delta_form[i]), num(tab.M[i]),
                     num(tab.L[i])});
        c.write_csv("moments_indeterminacy", csv);
        c.manifest["summary"]["trends"] = {
            {"gamma", tab.gamma_trend}, {"delta", tab.delta_trend}, {"M", tab.M_trend}, {"L", tab.L_trend}};
    } else {
        throw SchemaError("task must be truncated, solvability or indeterminacy");
    }
}

void cmd_toda(Context& c)
{
    const auto& cfg = c.config;
    auto spec = parse_spec(need(cfg, "spec"), 2, c.seed);
    auto times = need_vec(cfg, "times");
    double dt = cfg.value("dt", 1e-3);
    const bool q = quad_requested(cfg);
    Csv csv{{"t", "k", "a_k", "b_k", "da_oracle", "db_oracle"}, {}};
    double worst = 0.0;
    const int N = spec.size();
    for (double t : times) {
        std::vector<double> a, b;
        if (q) {
            auto st = toda_solve(spec.cast<quad>(), quad(t));
            for (const auto& x : st.spec.a())
                a.push_back(static_cast<double>(x));
            for (const auto& x : st.spec.b())
                b.push_back(static_cast<double>(x));
        } else {
            auto st = toda_solve(spec, t);
            a = st.spec.a();
            b = st.spec.b();
        }
        auto ode = toda_ode_oracle(spec, t, dt);
        for (int k = 1; k <= N; ++k) {
            double ak = k < N ? a[k - 1] : 0.0, da = k < N ? ak - ode.a()[k - 1] : 0.0;
            double db = b[k - 1] - ode.b()[k - 1];
            worst = std::max({worst, std::abs(da), std::abs(db)});
            csv.row({num(t), std::to_string(k), num(ak), num(b[k - 1]), num(da), num(db)});
        }
    }
    c.write_csv("toda", csv);
    c.check("oracle_delta", worst <= 1e-6, worst);
}

void cmd_weyl(Context& c)
{
    const auto& cfg = c.config;
    auto lj = need_vec(cfg, "lambda");
    if (lj.size() != 2)
        throw SchemaError("lambda must be [re, im]");
    std::complex<double> lam(lj[0], lj[1]);
    double tol = cfg.value("tol", 1e-10);
    std::vector<double> r;
    double B;
    json out;
    std::optional<JacobiSpec<double>> spec;
    if (cfg.contains("spec")) {
        spec = parse_spec(cfg.at("spec"), 1, c.seed);
        B = spec->coefficient_bound();
        r = response_vector(*spec, cfg.value("L", 200), Boundary::dirichlet);
    } else {
        r = need_vec(cfg, "r");
        B = cfg.value("B", 1.0);
    }
    auto ev = weyl_series(r, lam, tol, B);
    out = {{"lambda", {lam.real(), lam.imag()}},
           {"z", {ev.z.real(), ev.z.imag()}},
           {"m_series", {ev.m_series.real(), ev.m_series.imag()}},
           {"truncation", ev.truncation},
           {"in_domain_D", ev.in_domain_D}};
    if (spec) {
        auto m = weyl_resolvent(*spec, lam);
        out["m_resolvent"] = {m.real(), m.imag()};
        double d = std::abs(m - ev.m_series);
        c.check("series_vs_resolvent", d <= 1e-7, d);
    }
    c.write_json("weyl", out);
}

TestFunction parse_psi(const json& j)
{
    std::string name = j.value("name", std::string("gauss"));
    if (name == "gauss")
        return gauss_test(j.value("sigma", 1.0), j.value("center", 0.0), j.value("cut_a", 0.0), j.value("cut_b", 0.0));
    if (name == "poly-bump")
        return poly_bump(j.value("a", -1.0), j.value("b", 1.0));
    throw SchemaError("psi name must be gauss or poly-bump");
}

void cmd_string(Context& c)
{
    const auto& cfg = c.config;
    std::vector<int> Ns;
    for (double x : need_vec(cfg, "N"))
        Ns.push_back(static_cast<int>(x));
    TimeGrid g(cfg.value("T", 1.9), cfg.value("M", 19000));
    json def_t = {{"name", "gauss"}, {"sigma", 1.0}, {"center", 0.5}, {"cut_a", 1.2}, {"cut_b", 1.8}};
    json def_x = {{"name", "gauss"}, {"sigma", 1.0}, {"center", 0.5}};
    auto psi_t = parse_psi(cfg.value("psi", def_t));
    auto psi_x = parse_psi(cfg.value("psi_x", def_x));
    double t0 = cfg.value("t0", 0.5);
    Csv csv{{"N", "pair_r", "err_r", "pair_rtilde", "err_rtilde", "pair_field", "err_field"}, {}};
    bool mono = true;
    StringPairing prev;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        auto p = corrected_response(Ns[i], g, psi_t, psi_x, t0).pairing;
        csv.row({std::to_string(p.N), num(p.pair_r), num(p.err_r), num(p.pair_rtilde), num(p.err_rtilde),
                 num(p.pair_field), num(p.err_field)});
        if (i > 0 && !(p.err_r < prev.err_r && p.err_rtilde < prev.err_rtilde && p.err_field < prev.err_field))
            mono = false;
        prev = p;
    }
    c.write_csv("string", csv);
    c.check("monotone", mono, mono ? 1.0 : 0.0);
}

void cmd_contjacobi(Context& c)
{
    const auto& cfg = c.config;
    auto spec = parse_spec(need(cfg, "spec"), 3, c.seed);
    if (spec.a0() != 1.0)
        throw SchemaError("contjacobi: spec must have a0 = 1");
    TimeGrid g(cfg.value("T", 4.0), cfg.value("M", 800));
    auto rec = recover_matrix_continuous(response_function(spec, g), spec.size());
    Csv csv{{"k", "a_true", "a_recovered", "b_true", "b_recovered"}, {}};
    double worst = 0.0;
    const int N = spec.size();
    for (int k = 1; k <= N; ++k) {
        std::string at = k < N ? num(spec.a()[k - 1]) : "", ar = k < N ? num(rec.spec.a()[k - 1]) : "";
        if (k < N)
            worst = std::max(worst, std::abs(spec.a()[k - 1] - rec.spec.a()[k - 1]));
        worst = std::max(worst, std::abs(spec.b()[k - 1] - rec.spec.b()[k - 1]));
        csv.row({std::to_string(k), at, ar, num(spec.b()[k - 1]), num(rec.spec.b()[k - 1])});
    }
    c.write_csv("contjacobi", csv);
    c.check("coefficient_error", worst <= 1e-3, worst);
    c.manifest["summary"]["orthonormality_error"] = rec.orthonormality_error;
}

void cmd_heat(Context& c)
{
    const auto& cfg = c.config;
    std::string task = cfg.value("task", std::string("forward"));
    if (task == "forward") {
        int T = need_int(cfg, "T", 1);
        auto spec = parse_spec(need(cfg, "spec"), T, c.seed);
        auto s = heat_response(spec, T);
        Csv csv{{"t", "s"}, {}};
        for (int t = 0; t < T; ++t)
            csv.row({std::to_string(t), num(s[t])});
        c.write_csv("heat_response", csv);
        if (cfg.contains("control")) {
            auto f = need_vec(cfg, "control");
            auto h = solve_heat(spec, f, T);
            Csv field{{"n", "t", "value"}, {}};
            for (int n = 0; n < h.v.rows(); ++n)
                for (int t = 0; t <= T; ++t)
                    field.row({std::to_string(n), std::to_string(t), num(h.v(n, t))});
            c.write_csv("heat_field", field);
        }
    } else if (task == "invert") {
        auto s = need_vec(cfg, "s");
        int N = need_int(cfg, "N", 1);
        auto spec = invert_heat(s, N);
        c.write_json("heat_invert", {{"spec", spec_json(spec)}});
        auto back = heat_response(spec, 2 * N);
        double e = 0.0;
        for (int t = 0; t < 2 * N; ++t)
            e = std::max(e, acceptance::rel_err(s[t], back[t]));
        c.check("residual", e <= 1e-8, e);
    } else {
        throw SchemaError("heat task must be forward or invert");
    }
}

void cmd_roundtrip(Context& c)
{
    const auto& cfg = c.config;
    int N = need_int(cfg, "N", 1);
    std::mt19937_64 g(c.seed);
    auto spec = cfg.contains("spec") ? parse_spec(cfg.at("spec"), N, c.seed) : acceptance::random_spec(g, N);
    double err, res;
    if (quad_requested(cfg)) {
        auto rep = roundtrip_report(spec.cast<quad>(), N);
        err = static_cast<double>(rep.coefficient_error);
        res = static_cast<double>(rep.residual);
    } else {
        auto rep = roundtrip_report(spec, N);
        err = rep.coefficient_error;
        res = rep.residual;
    }
    c.write_json("roundtrip", {{"spec", spec_json(spec)}, {"coefficient_error", err}, {"residual", res}});
    c.check("residual", res <= 1e-8, res);
    c.check("coefficient_error", err <= 1e-8, err);
}

void cmd_verify(Context& c)
{
    auto results = acceptance::run([&](const acceptance::Criterion& k) { return c.filter.empty() || c.filter == k.tag; });
    if (results.empty())
        throw SchemaError("filter matches no criterion: " + c.filter);
    json rep = json::array();
    Csv csv{{"id", "tag", "pass"}, {}};
    for (const auto& r : results) {
        std::cout << acceptance::line(r) << "\n";
        rep.push_back({{"id", r.id}, {"tag", r.tag}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                       {"info", r.info}, {"seconds", r.seconds}});
        csv.row({std::to_string(r.id), r.tag, r.pass ? "1" : "0"});
        c.manifest["checks"][r.tag] = r.pass;
        c.ok = c.ok && r.pass;
    }
    json out{{"criteria", rep}};
    if (c.config.contains("perturbation")) {
        // Relative noise on r; every inadmissible verdict is reported as a failure.
        double eps = c.config.at("perturbation").get<double>();
        std::mt19937_64 g(c.seed);
        std::uniform_real_distribution<double> un(-1.0, 1.0);
        json rows = json::array();
        int failures = 0;
        for (int trial = 0; trial < 20; ++trial) {
            int N = acceptance::random_size(g, 6, 12);
            auto r = response_vector(acceptance::random_spec(g, N), 2 * N - 1);
            for (auto& x : r)
                x *= 1.0 + eps * un(g);
            auto v = characterize(r, N, Mode::real);
            if (!v.admissible)
                ++failures;
            rows.push_back({{"N", N}, {"admissible", v.admissible}, {"reason", v.reason}});
        }
        std::cout << (failures ? "FAIL" : "PASS") << " perturbation " << num(eps) << ": " << failures
                  << "/20 perturbed responses inadmissible\n";
        out["perturbation"] = {{"eps", eps}, {"failures", failures}, {"trials", rows}};
        csv.row({"0", "perturbation", failures ? "0" : "1"});
        c.check("characterization", failures == 0, failures);
    }
    c.write_csv("verify", csv);
    c.write_json("verify_report", out);
}

void cmd_graph(Context& c)
{
    const auto& cfg = c.config;
    const auto& gj = need(cfg, "graph");
    std::vector<GraphVertex> vs;
    for (const auto& v : need(gj, "vertices"))
        vs.push_back({need(v, "id").get<int>(), v.value("boundary", false)});
    std::vector<GraphEdge> es;
    for (const auto& e : need(gj, "edges"))
        es.push_back({need(e, "from").get<int>(), need(e, "to").get<int>(), need_int(e, "n_interior", 1)});
    GraphSpec g(vs, es);
    int T = need_int(cfg, "T", 1);
    std::map<int, std::vector<double>> controls;
    if (cfg.contains("controls")) {
        const auto& cj = cfg.at("controls");
        if (!cj.is_object())
            throw SchemaError("controls must map boundary vertex ids to arrays");
        for (auto it = cj.begin(); it != cj.end(); ++it) {
            int id = 0;
            auto key = it.key();
            if (std::from_chars(key.data(), key.data() + key.size(), id).ec != std::errc{})
                throw SchemaError("controls keys must be vertex ids");
            controls[id] = need_vec(cj, key.c_str());
        }
    }
    auto f = simulate(g, controls, T);

    Csv field{{"t", "edge", "j", "u"}, {}};
    Csv energy{{"t", "kinetic", "potential", "total", "vertex_weighted"}, {}};
    for (int t = 0; t <= T; ++t) {
        for (std::size_t e = 0; e < es.size(); ++e)
            for (int j = 0; j <= es[e].n; ++j)
                field.row({std::to_string(t), std::to_string(e), std::to_string(j), num(f(static_cast<int>(e), j, t))});
        {
            auto en = energies(g, f, t);
            energy.row({std::to_string(t), num(en.kinetic), num(en.potential), num(en.total()),
                        num(conserved_energy(g, f, t))});
        }
    }
    c.write_csv("graph_field", field);
    c.write_csv("graph_energy", energy);
}

const std::map<std::string, void (*)(Context&)>& commands()
{
    static const std::map<std::string, void (*)(Context&)> m{
        {"response", cmd_response}, {"forward", cmd_response}, {"invert", cmd_invert},
        {"moments", cmd_moments},   {"toda", cmd_toda},         {"weyl", cmd_weyl},
        {"string", cmd_string},     {"contjacobi", cmd_contjacobi}, {"heat", cmd_heat},
        {"graph", cmd_graph},
        {"roundtrip", cmd_roundtrip}, {"verify", cmd_verify}};
    return m;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Boundary control toolkit for Jacobi systems"};
    std::string command, config_path, out_dir = ".", filter;
    std::optional<std::uint64_t> seed;
    app.add_option("command", command, "response|forward|invert|moments|toda|weyl|string|contjacobi|heat|graph|roundtrip|verify");
    app.add_option("--config", config_path, "JSON scenario file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed for random specs");
    app.add_option("--filter", filter, "verify: run only the named criterion");
    CLI11_PARSE(app, argc, argv);

    Context c;
    try {
        c.config = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            c.config = json::parse(in);
            if (!c.config.is_object())
                throw SchemaError("config must be a JSON object");
        }
        if (command.empty())
            command = c.config.value("command", std::string());
        if (!commands().count(command))
            throw SchemaError("unknown or missing command \"" + command + "\"");
        c.command = command;
        c.out = out_dir;
        c.seed = seed ? *seed : c.config.value("seed", std::uint64_t{0});
        c.filter = filter.empty() ? c.config.value("filter", std::string()) : filter;
        c.manifest = {{"command", command}, {"config_hash", config_hash(c.config)}, {"files", json::array()}};
        commands().at(command)(c);
    } catch (const SchemaError& e) {
        std::cerr << "bcj: schema error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "bcj: schema error: " << e.what() << "\n";
        return 2;
    } catch (const bcj::Error& e) {
        std::cerr << "bcj " << command << ": " << e.what() << "\n";
        return 1;
    }
    c.manifest["ok"] = c.ok;
    std::cout << c.manifest.dump(2) << "\n";
    return c.ok ? 0 : 1;
}
