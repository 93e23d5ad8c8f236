#include "voronoi3/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "voronoi3/arith.hpp"
#include "voronoi3/constants.hpp"
#include "voronoi3/errors.hpp"
#include "voronoi3/hecke.hpp"
#include "voronoi3/kloosterman.hpp"
#include "voronoi3/moments.hpp"
#include "voronoi3/parallel.hpp"
#include "voronoi3/report.hpp"
#include "voronoi3/special_functions.hpp"
#include "voronoi3/voronoi.hpp"

namespace voronoi3 {

using nlohmann::json;

#define VORONOI3_FIELDS(F)                                                                                       \
    F(subcommand) F(table) F(limit) F(theta) F(epsilon) F(h) F(k) F(m) F(method) F(x) F(N) F(n_factor) F(X) F(y) \
        F(T) F(n) F(nu) F(k_order) F(delta) F(lambda) F(max_phase_step) F(abs_tol) F(coeffs) F(sigma) F(c_nk)   \
            F(dyadic) F(main_term) F(out) F(constants) F(seed) F(threads)

void to_json(json& j, const RunConfig& c) {
    j = json::object();
#define VORONOI3_TO(f) j[#f] = c.f;
    VORONOI3_FIELDS(VORONOI3_TO)
#undef VORONOI3_TO
}

void from_json(const json& j, RunConfig& c) {
    RunConfig d;
#define VORONOI3_FROM(f) d.f = j.contains(#f) ? j.at(#f).get<decltype(d.f)>() : d.f;
    VORONOI3_FIELDS(VORONOI3_FROM)
#undef VORONOI3_FROM
    for (const auto& [key, value] : j.items()) {
        static const std::vector<std::string> known = {
#define VORONOI3_NAME(f) #f,
            VORONOI3_FIELDS(VORONOI3_NAME)
#undef VORONOI3_NAME
        };
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InvalidArgument("cli", "config", "unknown config field '" + key + "'");
    }
    c = d;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cli", "config", "cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("cli", "config", "malformed config file " + path + ": " + e.what());
    }
    try {
        return (j.contains("config") ? j.at("config") : j).get<RunConfig>();
    } catch (const json::exception& e) {
        throw InvalidArgument("cli", "config", "malformed config file " + path + ": " + e.what());
    }
}

std::vector<double> parse_grid(const std::string& spec, const std::string& flag) {
    auto bad = [&](const std::string& why) {
        return InvalidArgument("cli", "parse_grid", "--" + flag + " '" + spec + "': " + why);
    };
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw bad("'" + s + "' is not a finite number");
            return v;
        } catch (const std::logic_error&) {
            throw bad("'" + s + "' is not a number");
        }
    };
    std::vector<std::string> parts;
    const char sep = (spec.rfind("lin:", 0) == 0 || spec.rfind("log:", 0) == 0) ? ':' : ',';
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
    if (parts.empty()) throw bad("empty grid");

    std::vector<double> out;
    if (sep == ':') {
        if (parts.size() != 4) throw bad("expected lin:a:b:n or log:a:b:n");
        const double a = number(parts[1]), b = number(parts[2]);
        const double count = number(parts[3]);
        if (count < 1 || count != std::floor(count)) throw bad("point count must be a positive integer");
        const auto cnt = static_cast<std::size_t>(count);
        const bool log_scale = parts[0] == "log";
        if (log_scale && !(a > 0 && b > 0)) throw bad("log grid needs positive endpoints");
        for (std::size_t i = 0; i < cnt; ++i) {
            const double t = cnt == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(cnt - 1);
            double v = log_scale ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a);
            if (i == 0) v = a;
            if (i + 1 == cnt && cnt > 1) v = b;
            out.push_back(v);
        }
    } else {
        for (const auto& p : parts) out.push_back(number(p));
    }
    return out;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    const RunConfig& cfg;
    std::ostream& out;
    std::ostream& err;
    ConstantsFile constants;
    std::string constants_path;
    bool constants_found = false;
    unsigned threads = 1;
    bool ok = true;  // every asserted invariant held

    void fail(const std::string& what) {
        ok = false;
        err << "invariant failed: " << what << '\n';
    }
};

ThetaBound theta_of(const RunConfig& c) {
    ThetaBound t{c.theta, c.epsilon};
    t.validate();
    return t;
}

CoefficientTable load_table(const RunConfig& c, std::int64_t needed) {
    std::int64_t limit = c.limit > 0 ? c.limit : std::max<std::int64_t>(needed, 1);
    if (c.limit > 0 && c.limit < needed)
        throw LimitExceeded("cli", "table",
                            "LimitExceeded: --limit " + std::to_string(c.limit) + " is below the " +
                                std::to_string(needed) + " this run needs");
    if (c.table == "d3") return build_d3_table(limit);
    if (c.table == "sym2") return build_sym2_delta_table(limit);
    return build_table_from_file(c.table, limit);
}

std::int64_t ceil_int(double v) { return static_cast<std::int64_t>(std::ceil(v)); }

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

CalibratedConstants constants_for(Context& ctx, SourceTag tag, const ThetaBound& theta) {
    if (auto c = ctx.constants.lookup(tag, theta)) return *c;
    ctx.err << "note: no calibrated constants for (" << to_string(tag) << ", " << format_double(theta.vartheta) << ", "
            << format_double(theta.epsilon) << ") in " << ctx.constants_path << "; using 1\n";
    CalibratedConstants c;
    c.source = to_string(tag);
    c.vartheta = theta.vartheta;
    c.epsilon = theta.epsilon;
    return c;
}

void emit(Context& ctx, const ReportTable& table) {
    if (ctx.cfg.out.empty()) {
        table.write_csv(ctx.out);
        return;
    }
    table.save(ctx.cfg.out);
    json side;
    side["config"] = ctx.cfg;
    side["resolved"] = {{"constants_path", ctx.constants_path}, {"constants_found", ctx.constants_found}};
    std::ofstream s(sidecar_path(ctx.cfg.out), std::ios::binary);
    if (!s) throw InvalidArgument("cli", "emit", "cannot write " + sidecar_path(ctx.cfg.out).string());
    s << side.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

void cmd_table(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto table = load_table(c, c.limit > 0 ? c.limit : 100);
    ReportTable rep({"m1", "m2", "re", "im"});
    table.for_each([&](std::int64_t m1, std::int64_t m2, cplx v) { rep.add_row({m1, m2, v.real(), v.imag()}); });

    const auto mult = audit_multiplicativity(table, 500, c.seed);
    ctx.err << "audit multiplicativity: pairs=" << mult.pairs_checked
            << " max_scaled_deviation=" << format_double(mult.max_scaled_deviation) << '\n';
    if (!mult.ok) ctx.fail("Hecke multiplicativity");
    if (std::abs(table(1, 1) - cplx(1.0)) > 1e-12) ctx.fail("A(1,1) = 1");
    if (c.table == "d3" || c.table == "sym2") {
        const double dual = duality_defect(table);
        ctx.err << "audit duality: defect=" << format_double(dual) << '\n';
        if (dual > 1e-9) ctx.fail("duality on a self-dual source");
    }
    if (table.source() == SourceTag::sym2_gl2) {
        const double C = hecke_bound_constant(table, theta_of(c));
        ctx.err << "audit hecke bound: C=" << format_double(C) << '\n';
        if (C > 10.0) ctx.fail("Hecke bound constant <= 10");
    }
    emit(ctx, rep);
}

void cmd_kloosterman(Context& ctx) {
    const auto& c = ctx.cfg;
    if (c.k < 1) throw InvalidArgument("kloosterman", "weil_check", "k must satisfy k >= 1");
    const auto w = weil_check(c.h, c.m, c.k, parse_kloosterman_method(c.method));
    ReportTable rep({"value", "bound", "ok"});
    rep.add_row({w.value.real(), w.bound, std::string(w.ok ? "ok" : "violated")});
    if (!w.ok) ctx.fail("Weil bound");
    emit(ctx, rep);
}

void cmd_omega(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto ys = parse_grid(c.y, "y");
    const SpectralParams spectral;
    std::vector<LineIntegralSpec> specs;
    for (double y : ys) {
        LineIntegralSpec s;
        s.n = c.n;
        s.nu = c.nu;
        s.k_order = c.k_order;
        s.delta = c.delta;
        s.lambda = c.lambda > 0 ? c.lambda : spectral.default_lambda();
        s.T = c.T > 0 ? c.T : 4.0 * std::cbrt(y);
        s.y = y;
        s.validate(spectral);
        specs.push_back(s);
    }
    QuadratureConfig q{c.max_phase_step, c.abs_tol};
    q.validate();
    std::vector<OmegaResult> res(specs.size());
    parallel_for(specs.size(), ctx.threads, [&](std::size_t i) { res[i] = omega_integral(specs[i], q); });

    ReportTable rep({"y", "T", "omega_re", "omega_im", "bessel_main", "residual", "budget"});
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const double main = bessel_main_term(specs[i]);
        const double residual = std::abs(res[i].value - main);
        const double budget = ctx.constants.omega_c * omega_error_scale(specs[i]);
        rep.add_row({specs[i].y, specs[i].T, res[i].value.real(), res[i].value.imag(), main, residual, budget});
        if (!(residual <= budget)) ctx.fail("omega residual within budget at y=" + format_double(specs[i].y));
    }
    emit(ctx, rep);
}

std::vector<cplx> parse_coeffs(const std::string& spec) {
    std::vector<cplx> out;
    if (spec.rfind("d3:", 0) == 0) {
        const auto len = static_cast<std::int64_t>(parse_grid(spec.substr(3), "coeffs").at(0));
        if (len < 1) throw InvalidArgument("cli", "perron", "--coeffs d3:<len> needs len >= 1");
        const auto t = build_d3_table(len);
        for (std::int64_t m = 1; m <= len; ++m) out.push_back(t(m, 1));
        return out;
    }
    for (double v : parse_grid(spec, "coeffs")) out.emplace_back(v, 0.0);
    return out;
}

void cmd_perron(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto coeffs = parse_coeffs(c.coeffs);
    const auto xs = parse_grid(c.x, "x");
    const double T = c.T > 0 ? c.T : 100.0;
    QuadratureConfig q{c.max_phase_step, c.abs_tol};
    std::vector<PerronResult> res(xs.size());
    parallel_for(xs.size(), ctx.threads, [&](std::size_t i) { res[i] = perron_check(coeffs, c.sigma, xs[i], T, q); });
    ReportTable rep({"x", "sigma", "T", "integral_re", "integral_im", "partial_sum", "error", "budget",
                     "quadrature_error", "ok"});
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& r = res[i];
        rep.add_row({xs[i], c.sigma, T, r.integral.real(), r.integral.imag(), r.partial_sum.real(), r.error, r.budget,
                     r.quadrature_error, r.ok});
        if (!r.ok) ctx.fail("Perron truncation budget at x=" + format_double(xs[i]));
    }
    emit(ctx, rep);
}

void cmd_nk(Context& ctx) {
    const auto& c = ctx.cfg;
    if (c.k < 1) throw InvalidArgument("voronoi", "select_nk", "k must satisfy k >= 1");
    const auto Ns = parse_grid(c.N.empty() ? c.x : c.N, "N");
    ReportTable rep({"N", "k", "c_nk", "N_k", "d", "margin", "threshold"});
    for (double N : Ns) {
        const auto sel = select_nk_with_retry(N, c.k, c.c_nk);
        if (!recheck_nk(sel)) ctx.fail("N_k margin recheck at N=" + format_double(N));
        for (const auto& mg : sel.margins) rep.add_row({N, c.k, sel.c_nk, sel.N_k, mg.d, mg.margin, mg.threshold});
    }
    emit(ctx, rep);
}

void cmd_voronoi(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto theta = theta_of(c);
    const auto fraction = ReducedFraction::make(c.h, c.k);
    const auto xs = parse_grid(c.x, "x");
    std::vector<double> Ns;
    if (c.N.empty()) {
        for (double x : xs) Ns.push_back(c.n_factor * x);
    } else {
        Ns = parse_grid(c.N, "N");
        if (Ns.size() == 1) Ns.assign(xs.size(), Ns[0]);
        if (Ns.size() != xs.size()) throw UsageError("--N must have one point or as many points as --x");
    }
    std::vector<VoronoiParams> grid;
    std::int64_t needed = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        VoronoiParams p;
        p.x = xs[i];
        p.N = Ns[i];
        p.fraction = fraction;
        p.theta = theta;
        p.c_nk = c.c_nk;
        p.max_n_over_x = std::max(1.0, c.n_factor);
        p.validate();
        grid.push_back(p);
        needed = std::max({needed, ceil_int(p.x), static_cast<std::int64_t>(std::floor(2.0 * p.N))});
    }
    const auto table = load_table(c, needed);
    const auto k = constants_for(ctx, table.source(), theta);
    const auto report = residual_report(grid, table, k.voronoi_c1, k.voronoi_c2, ctx.threads);

    ReportTable rep({"x", "N", "N_k", "lhs_re", "lhs_im", "main", "residual_re", "residual_im", "budget"});
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        if (!r.error.empty()) {
            ctx.fail("voronoi/residual_report row " + std::to_string(i) + " (x=" + format_double(r.x) + "): " + r.error);
            rep.add_row({r.x, r.N, Blank{}, Blank{}, Blank{}, Blank{}, Blank{}, Blank{}, Blank{}});
            continue;
        }
        rep.add_row({r.x, r.N, r.N_k, r.lhs.real(), r.lhs.imag(), r.main.real(), r.residual.real(), r.residual.imag(),
                     r.budget});
        if (table.is_cuspidal() && !r.ok)
            ctx.fail("|residual| <= budget at x=" + format_double(r.x) + " (ratio " +
                     format_double(std::abs(r.residual) / r.budget) + ")");
    }
    emit(ctx, rep);
}

void cmd_moment(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto theta = theta_of(c);
    const auto fraction = ReducedFraction::make(c.h, c.k);
    const auto Xs = parse_grid(c.X, "X");
    for (double X : Xs)
        if (!(X >= 1.0)) throw InvalidArgument("moments", "second_moment", "X must satisfy X >= 1");

    if (c.main_term) {
        const auto table = load_table(c, static_cast<std::int64_t>(std::floor(2.0 * max_of(Xs))));
        const auto k = constants_for(ctx, table.source(), theta);
        QuadratureConfig q{c.max_phase_step, c.abs_tol};
        std::vector<MainMomentResult> res(Xs.size());
        parallel_for(Xs.size(), ctx.threads, [&](std::size_t i) {
            res[i] = main_term_second_moment(Xs[i], fraction, table, theta, k.main_moment_c, q, c.c_nk);
        });
        ReportTable rep({"X", "k", "N_k", "integral", "error_estimate", "bound", "ratio"});
        for (const auto& r : res) {
            rep.add_row({r.X, c.k, r.N_k, r.integral, r.error_estimate, r.bound, r.ratio});
            if (table.is_cuspidal() && !(r.ratio <= 1.0)) ctx.fail("main-term moment ratio <= 1 at X=" + format_double(r.X));
        }
        emit(ctx, rep);
        return;
    }

    const auto table = load_table(c, ceil_int(max_of(Xs) * (c.dyadic ? 2.0 : 1.0)));
    const auto k = constants_for(ctx, table.source(), theta);
    const auto rows = second_moment_report(Xs, fraction, table, theta, k.moment_c, c.dyadic, ctx.threads);
    ReportTable rep({"X_lo", "X_hi", "k", "integral", "bound", "ratio", "trivial_regime"});
    for (const auto& r : rows) {
        rep.add_row({r.X_lo, r.X_hi, r.k, r.integral, r.bound, r.ratio, r.trivial_regime});
        if (table.is_cuspidal() && !(r.ratio <= 1.0)) ctx.fail("second-moment ratio <= 1 at X=" + format_double(r.X_hi));
    }
    if (table.is_cuspidal() && !ratios_nonincreasing(rows)) ctx.fail("second-moment ratios non-increasing in X");
    emit(ctx, rep);
}

void cmd_pointwise(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto theta = theta_of(c);
    const auto fraction = ReducedFraction::make(c.h, c.k);
    const auto xs = parse_grid(c.x, "x-grid");
    const auto table = load_table(c, ceil_int(max_of(xs)));
    const auto k = constants_for(ctx, table.source(), theta);
    const auto rows = pointwise_report(xs, fraction, table, theta, k.pointwise_c, ctx.threads);
    ReportTable rep({"x", "k", "abs_sum", "bound_a", "ratio_a", "bound_b", "ratio_b", "N_used", "hypothesis"});
    for (const auto& r : rows) {
        rep.add_row({r.x, r.k, r.abs_sum, r.bound_a, r.ratio_a, r.bound_b ? Cell{*r.bound_b} : Cell{Blank{}},
                     r.ratio_b ? Cell{*r.ratio_b} : Cell{Blank{}}, r.N_used,
                     std::string(r.hypothesis_b ? "a+b" : "a")});
        if (table.is_cuspidal() && !(r.ratio_a <= 1.0)) ctx.fail("pointwise ratio_a <= 1 at x=" + format_double(r.x));
        if (table.is_cuspidal() && r.ratio_b && !(*r.ratio_b <= 1.0))
            ctx.fail("pointwise ratio_b <= 1 at x=" + format_double(r.x));
    }
    emit(ctx, rep);
}

void cmd_rs_report(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto xs = parse_grid(c.x, "x-grid");
    const auto table = load_table(c, ceil_int(max_of(xs)));
    ReportTable rep({"x", "sum", "ratio"});
    for (const auto& r : rankin_selberg_report(table, xs)) {
        rep.add_row({r.x, r.sum, r.ratio});
        if (table.is_cuspidal() && !(r.ratio >= 0.1 && r.ratio <= 10.0))
            ctx.fail("Rankin-Selberg ratio in [0.1, 10] at x=" + format_double(r.x));
    }
    emit(ctx, rep);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Context ctx{config, out, err, {}, {}, false, config.threads == 0 ? default_threads() : config.threads, true};
    try {
        ctx.constants_path = resolve_constants_path(config.constants).string();
        if (std::filesystem::exists(ctx.constants_path)) {
            ctx.constants = ConstantsFile::load(ctx.constants_path);
            ctx.constants_found = true;
        } else if (!config.constants.empty()) {
            throw InvalidArgument("cli", "constants", "--constants: cannot open " + config.constants);
        }

        const std::string& s = config.subcommand;
        if (s == "table") cmd_table(ctx);
        else if (s == "kloosterman") cmd_kloosterman(ctx);
        else if (s == "omega") cmd_omega(ctx);
        else if (s == "perron") cmd_perron(ctx);
        else if (s == "nk") cmd_nk(ctx);
        else if (s == "voronoi") cmd_voronoi(ctx);
        else if (s == "moment") cmd_moment(ctx);
        else if (s == "pointwise") cmd_pointwise(ctx);
        else if (s == "rs-report") cmd_rs_report(ctx);
        else throw UsageError("unknown subcommand '" + s + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const InvalidArgument& e) {
        err << "error [" << e.module() << "/" << e.operation() << "]: " << e.what() << '\n';
        return 1;
    } catch (const LimitExceeded& e) {
        err << "error [" << e.module() << "/" << e.operation() << "]: " << e.what() << '\n';
        return 1;
    } catch (const MalformedSeedFile& e) {
        err << "error [" << e.module() << "/" << e.operation() << "]: " << e.what() << '\n';
        return 1;
    } catch (const MissingPrimeSeed& e) {
        err << "error [" << e.module() << "/" << e.operation() << "]: " << e.what() << '\n';
        return 1;
    } catch (const NotInvertible& e) {
        err << "error [" << e.module() << "/" << e.operation() << "]: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "numeric failure [" << e.module() << "/" << e.operation() << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return ctx.ok ? 0 : 2;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Twisted GL(3) coefficient sums: truncated Voronoi identity and bound audits", "voronoi3"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.fallthrough();
    app.require_subcommand(0, 1);
    RunConfig c;
    std::string config_file;
    app.add_option("--config", config_file, "Replay a run from its config (or sidecar) file");
    app.add_option("--threads", c.threads, "Worker threads (0: hardware concurrency)");
    app.add_option("--constants", c.constants, "Calibrated constants file (overrides $VORONOI3_CONSTANTS)");
    app.add_option("--seed", c.seed, "Seed for randomized audits");

    auto table_opts = [&](CLI::App* s) {
        s->add_option("--table", c.table, "d3 | sym2 | path to a JSON seed file")->capture_default_str();
        s->add_option("--limit", c.limit, "Table limit (0: smallest the run needs)");
    };
    auto theta_opts = [&](CLI::App* s) {
        s->add_option("--theta", c.theta, "Ramanujan-Petersson exponent vartheta")->capture_default_str();
        s->add_option("--epsilon", c.epsilon)->capture_default_str();
    };
    auto twist_opts = [&](CLI::App* s) {
        s->add_option("--h", c.h)->capture_default_str();
        s->add_option("--k", c.k)->capture_default_str();
    };
    auto quad_opts = [&](CLI::App* s) {
        s->add_option("--max-phase-step", c.max_phase_step)->capture_default_str();
        s->add_option("--abs-tol", c.abs_tol)->capture_default_str();
    };
    auto out_opt = [&](CLI::App* s) { s->add_option("--out", c.out, "Report path (CSV; JSON mirror and config sidecar alongside)"); };

    auto* table = app.add_subcommand("table", "Build a coefficient table and audit it");
    table_opts(table);
    theta_opts(table);
    out_opt(table);

    auto* kl = app.add_subcommand("kloosterman", "Kloosterman sum S(h,m;k) with its Weil bound");
    twist_opts(kl);
    kl->add_option("--m", c.m)->capture_default_str();
    kl->add_option("--method", c.method, "direct | crt")->capture_default_str();
    out_opt(kl);

    auto* om = app.add_subcommand("omega", "Vertical-segment integral against its Bessel main term");
    om->add_option("--y", c.y, "y grid")->capture_default_str();
    om->add_option("--T", c.T, "Segment height (0: 4 y^{1/3})");
    om->add_option("--nu", c.nu)->capture_default_str();
    om->add_option("--k-order", c.k_order)->capture_default_str();
    om->add_option("--delta", c.delta)->capture_default_str();
    om->add_option("--n", c.n)->capture_default_str();
    om->add_option("--lambda", c.lambda, "Shift Lambda (0: default)");
    quad_opts(om);
    out_opt(om);

    auto* pe = app.add_subcommand("perron", "Truncated Perron integral of a Dirichlet polynomial");
    pe->add_option("--coeffs", c.coeffs, "c(1),c(2),... or d3:<len>")->capture_default_str();
    pe->add_option("--x", c.x, "x grid")->capture_default_str();
    pe->add_option("--sigma", c.sigma)->capture_default_str();
    pe->add_option("--T", c.T, "Truncation height (0: 100)");
    quad_opts(pe);
    out_opt(pe);

    auto* nk = app.add_subcommand("nk", "Select N_k in [N, 2N]");
    nk->add_option("--N", c.N, "N grid")->required();
    nk->add_option("--k", c.k)->capture_default_str();
    nk->add_option("--c-nk", c.c_nk)->capture_default_str();
    out_opt(nk);

    auto* vo = app.add_subcommand("voronoi", "Truncated Voronoi identity residual report");
    vo->add_option("--x", c.x, "x grid")->capture_default_str();
    vo->add_option("--N", c.N, "N grid (default: n-factor * x)");
    vo->add_option("--n-factor", c.n_factor, "N = n-factor * x when --N is absent")->capture_default_str();
    vo->add_option("--c-nk", c.c_nk)->capture_default_str();
    twist_opts(vo);
    table_opts(vo);
    theta_opts(vo);
    out_opt(vo);

    auto* mo = app.add_subcommand("moment", "Second moment of the twisted sum against its bound");
    mo->add_option("--X", c.X, "X grid")->capture_default_str();
    mo->add_flag("--dyadic", c.dyadic, "Integrate over [X, 2X] instead of [1, X]");
    mo->add_flag("--main-term", c.main_term, "Second moment of the main term over [X, 2X]");
    mo->add_option("--c-nk", c.c_nk)->capture_default_str();
    quad_opts(mo);
    twist_opts(mo);
    table_opts(mo);
    theta_opts(mo);
    out_opt(mo);

    auto* pw = app.add_subcommand("pointwise", "Pointwise bounds for the twisted sum");
    pw->add_option("--x-grid", c.x, "x grid")->capture_default_str();
    twist_opts(pw);
    table_opts(pw);
    theta_opts(pw);
    out_opt(pw);

    auto* rs = app.add_subcommand("rs-report", "Rankin-Selberg partial sums");
    rs->add_option("--x-grid", c.x, "x grid")->capture_default_str();
    table_opts(rs);
    out_opt(rs);

    for (auto* sub : app.get_subcommands({})) sub->set_help_flag("--help", "Print this help message and exit");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (!config_file.empty()) {
        try {
            RunConfig replay = load_run_config(config_file);
            if (app.get_option("--threads")->count() > 0) replay.threads = c.threads;
            c = replay;
        } catch (const Error& e) {
            std::cerr << "error [" << e.module() << "/" << e.operation() << "]: " << e.what() << '\n';
            return 1;
        }
    } else {
        const auto subs = app.get_subcommands();
        if (subs.empty()) {
            std::cerr << app.help();
            return 1;
        }
        c.subcommand = subs.front()->get_name();
    }
    return run(c, std::cout, std::cerr);
}

}  // namespace voronoi3
