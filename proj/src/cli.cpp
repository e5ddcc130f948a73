#include "predictorlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "predictorlab/asymptotics.hpp"
#include "predictorlab/errors.hpp"
#include "predictorlab/explicit.hpp"
#include "predictorlab/levinson.hpp"

namespace predictorlab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(',', start);
        parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                              : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::size_t parse_count(std::string_view s, std::string_view whole) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ArgumentError("malformed integer list '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

std::vector<std::size_t> parse_n_list(std::string_view text) {
    std::vector<std::size_t> out;
    for (std::string_view item : split_commas(text)) {
        const std::size_t dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_count(item, text));
            continue;
        }
        const std::size_t lo = parse_count(trim(item.substr(0, dots)), text);
        const std::size_t hi = parse_count(trim(item.substr(dots + 2)), text);
        if (lo == 0 || hi < lo) throw ArgumentError("range '" + std::string(item) + "' must satisfy 0 < a <= b");
        for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (std::string_view item : split_commas(text)) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw ArgumentError("malformed number list '" + std::string(text) + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::string format_real(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

namespace {

using Cell = std::variant<long long, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c, bool json) {
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const double x = std::get<double>(c);
    if (json && !std::isfinite(x)) return "null";
    return format_real(x);
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i], false);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t, const nlohmann::ordered_json& meta) {
    os << "{\"meta\":" << meta.dump() << ",\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? "," : "") << '{';
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << nlohmann::json(t.columns[i]).dump() << ':'
               << cell_text(t.rows[r][i], true);
        }
        os << '}';
    }
    os << "]}\n";
}

struct Config {
    std::string command;
    std::string model = "farima";
    double r = 0.0;
    double d = 0.0;
    std::string arpoly = "1";
    std::string mapoly = "1";
    std::string c_list;
    std::string a_list;
    std::string n_text;
    std::size_t m = 0;
    std::size_t j = 1;
    std::size_t N = 10;
    std::size_t vmax = 0;
    std::size_t kmax = 0;
    double tol = 1e-13;
    std::string source = "both";
    bool terms = false;
    std::string format = "csv";
    std::string out_path;
    std::string k_text = "1,2,3";
    std::size_t u = 0;
    std::string strategy = "integral";
};

ProcessModel build_model(const Config& cfg) {
    if (cfg.model == "ar1") return ProcessModel::ar1(cfg.r);
    if (cfg.model == "farima") {
        return ProcessModel::farima(cfg.d, RealPolynomial(parse_real_list(cfg.arpoly)),
                                    RealPolynomial(parse_real_list(cfg.mapoly)));
    }
    if (cfg.c_list.empty() || cfg.a_list.empty()) {
        throw ArgumentError("--model explicit needs --c and --a coefficient lists");
    }
    return ProcessModel::explicit_coefficients(parse_real_list(cfg.c_list), parse_real_list(cfg.a_list));
}

TruncationPolicy build_policy(const Config& cfg) {
    TruncationPolicy p;
    p.V = cfg.vmax;
    p.K = cfg.kmax;
    p.tol_term = cfg.tol;
    p.tail_strategy =
        cfg.strategy == "richardson" ? TailStrategy::RichardsonDouble : TailStrategy::IntegralBound;
    if (p.tail_strategy == TailStrategy::RichardsonDouble) p.tol_tail = 1e-6;
    p.validate();
    return p;
}


nlohmann::ordered_json meta_of(const Config& cfg, const ProcessModel& model) {
    nlohmann::ordered_json meta;
    meta["command"] = cfg.command;
    meta["model"] = cfg.model;
    meta["model_description"] = model.describe();
    meta["regime"] = to_string(model.regime());
    if (cfg.model == "ar1") meta["r"] = cfg.r;
    if (cfg.model == "farima") {
        meta["d"] = cfg.d;
        meta["arpoly"] = parse_real_list(cfg.arpoly);
        meta["mapoly"] = parse_real_list(cfg.mapoly);
    }
    if (cfg.model == "explicit") {
        meta["c"] = parse_real_list(cfg.c_list);
        meta["a"] = parse_real_list(cfg.a_list);
    }
    meta["n"] = cfg.n_text;
    meta["m"] = cfg.m;
    meta["j"] = cfg.j;
    meta["N"] = cfg.N;
    meta["vmax"] = cfg.vmax;
    meta["kmax"] = cfg.kmax;
    meta["tol"] = cfg.tol;
    meta["tail_strategy"] = cfg.strategy;
    meta["source"] = cfg.source;
    meta["terms"] = cfg.terms;
    meta["k"] = cfg.k_text;
    meta["u"] = cfg.u;
    meta["format"] = cfg.format;
    return meta;
}

Table cmd_coeffs(const Config& cfg, const ProcessModel& model, nlohmann::ordered_json&) {
    const std::size_t N = cfg.N;
    const CoeffSeq c = expand_ma(model, N);
    const CoeffSeq a = expand_ar(model, N);
    const AutocovSeq g = autocov(model, N);
    Table t{{"n", "c", "a", "gamma", "phi"}, {}};
    for (std::size_t k = 0; k <= N; ++k) {
        t.rows.push_back({static_cast<long long>(k), c[k], a[k], g[k], c[0] * a[k]});
    }
    return t;
}

struct PredictOutcome {
    Table table;
    double max_diff = 0.0;
    bool compared = false;
};

PredictOutcome cmd_predict(const Config& cfg, const ProcessModel& model, nlohmann::ordered_json& meta) {
    const std::vector<std::size_t> ns = parse_n_list(cfg.n_text);
    if (ns.size() != 1 || ns.front() == 0) throw ArgumentError("predict takes a single positive --n");
    const std::size_t n = ns.front();
    const std::size_t m = cfg.m;
    const bool want_lev = cfg.source != "explicit";
    const bool want_ex = cfg.source != "levinson";
    const TruncationPolicy policy = build_policy(cfg);

    std::optional<PredictorTable> lev;
    if (want_lev) {
        const AutocovSeq g = autocov(model, n + m);
        lev = m == 0 ? durbin_levinson(g, n).back() : multistep_normal_solve(g, n, m);
    }
    std::optional<ExplicitResult> ex;
    if (want_ex) ex = finite_predictor_multistep(model, n, m, policy);

    PredictOutcome outcome;
    Table& t = outcome.table;
    t.columns.push_back("j");
    if (want_lev) t.columns.push_back("phi_levinson");
    if (want_ex) t.columns.push_back("phi_explicit");
    if (want_lev && want_ex) t.columns.push_back("abs_diff");
    std::size_t k_cols = 0;
    if (cfg.terms) {
        t.columns.push_back("sigma2");
        if (want_ex) {
            t.columns.push_back("k_used");
            t.columns.push_back("converged");
            for (const auto& s : ex->series) k_cols = std::max(k_cols, s.terms.size());
            for (std::size_t k = 1; k <= k_cols; ++k) t.columns.push_back("g" + std::to_string(k));
        }
    }
    const double sigma2 = lev && m == 0 ? lev->sigma2 : std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = 1; j <= n; ++j) {
        std::vector<Cell> row{static_cast<long long>(j)};
        if (want_lev) row.emplace_back(lev->at(j));
        if (want_ex) row.emplace_back(ex->table.at(j));
        if (want_lev && want_ex) {
            const double diff = std::abs(lev->at(j) - ex->table.at(j));
            outcome.max_diff = std::max(outcome.max_diff, diff);
            row.emplace_back(diff);
        }
        if (cfg.terms) {
            row.emplace_back(sigma2);
            if (want_ex) {
                const SeriesTerms& s = ex->series[j - 1];
                row.emplace_back(static_cast<long long>(s.terms.size()));
                row.emplace_back(static_cast<long long>(s.converged ? 1 : 0));
                for (std::size_t k = 0; k < k_cols; ++k) row.emplace_back(k < s.terms.size() ? s.terms[k] : 0.0);
            }
        }
        t.rows.push_back(std::move(row));
    }
    outcome.compared = want_lev && want_ex;
    if (want_ex) {
        meta["V"] = ex->V;
        meta["k_used"] = ex->k_used;
        meta["inner_tail_estimate"] = ex->inner_tail_estimate;
        meta["warnings"] = ex->warnings;
    }
    if (outcome.compared) meta["max_abs_diff"] = outcome.max_diff;
    return outcome;
}

Table cmd_rate(const Config& cfg, const ProcessModel& model, nlohmann::ordered_json& meta) {
    const std::vector<std::size_t> ns = parse_n_list(cfg.n_text);
    const RateReport r = rate_experiment(model, cfg.j, ns, build_policy(cfg));
    Table t{{"n", "phi_nj", "rate", "limit"}, {}};
    for (const auto& e : r.entries) {
        t.rows.push_back({static_cast<long long>(e.n), e.phi_nj, e.rate, r.theoretical_limit});
    }
    meta["phi_j"] = r.phi_j;
    meta["richardson"] = r.richardson();
    return t;
}

Table cmd_baxter(const Config& cfg, const ProcessModel& model, nlohmann::ordered_json& meta) {
    const std::vector<std::size_t> ns = parse_n_list(cfg.n_text);
    const BaxterReport r = baxter_experiment(model, ns, build_policy(cfg));
    Table t{{"n", "lhs", "rhs", "ratio"}, {}};
    for (const auto& e : r.entries) t.rows.push_back({static_cast<long long>(e.n), e.lhs, e.rhs, e.ratio});
    meta["sup_ratio"] = r.sup_ratio;
    return t;
}

Table cmd_dkscale(const Config& cfg, const ProcessModel& model, nlohmann::ordered_json&) {
    const std::vector<std::size_t> ns = parse_n_list(cfg.n_text);
    const std::vector<std::size_t> ks = parse_n_list(cfg.k_text);
    const auto rows = dk_scaling_experiment(model, ks, cfg.u, ns, build_policy(cfg));
    Table t{{"k", "n", "n_dk", "target"}, {}};
    for (const auto& e : rows) {
        t.rows.push_back({static_cast<long long>(e.k), static_cast<long long>(e.n), e.n_dk, e.target});
    }
    return t;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Argument:
        case ErrorKind::Regime: return kExitConfig;
        case ErrorKind::Model:
        case ErrorKind::Degeneracy: return kExitModel;
        case ErrorKind::Truncation: return kExitTruncation;
        case ErrorKind::Disagreement: return kExitDisagreement;
    }
    return kExitConfig;
}

int fail(std::ostream& err, const char* code, const std::string& msg, int status) {
    std::string line = msg;
    for (char& ch : line) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    err << "error=" << code << ": " << line << '\n';
    return status;
}

void add_options(CLI::App& app, Config& cfg) {
    app.add_option("--model", cfg.model, "Process model")
        ->check(CLI::IsMember({"ar1", "farima", "explicit"}));
    app.add_option("--r", cfg.r, "AR(1) coefficient");
    app.add_option("--d", cfg.d, "Fractional differencing parameter");
    app.add_option("--arpoly", cfg.arpoly, "AR polynomial, constant term first (comma list)")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--mapoly", cfg.mapoly, "MA polynomial, constant term first (comma list)")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--c", cfg.c_list, "Explicit MA coefficients (comma list)")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--a", cfg.a_list, "Explicit AR coefficients (comma list)")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--n", cfg.n_text, "n, comma list or a..b power-of-two range")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--m", cfg.m, "Prediction horizon (0 = one step)");
    app.add_option("--j", cfg.j, "Coefficient index for the rate experiment");
    app.add_option("--N", cfg.N, "Coefficient table length");
    app.add_option("--vmax", cfg.vmax, "Inner-index cutoff V (0 = default)");
    app.add_option("--kmax", cfg.kmax, "Maximum series depth K (0 = default)");
    app.add_option("--tol", cfg.tol, "Series stopping tolerance");
    app.add_option("--tail-strategy", cfg.strategy, "Inner tail handling")
        ->check(CLI::IsMember({"integral", "richardson"}));
    app.add_option("--source", cfg.source, "Predictor source")
        ->check(CLI::IsMember({"levinson", "explicit", "both"}));
    app.add_flag("--terms", cfg.terms, "Add sigma2 and per-term series columns");
    app.add_option("--k", cfg.k_text, "Series orders for dkscale")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--u", cfg.u, "Inner index for dkscale");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "Output file (default standard output)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Finite-past predictor coefficients of stationary processes", "predictorlab"};
    app.set_config("--config", "", "key=value configuration file");
    app.require_subcommand(1, 1);
    add_options(app, cfg);
    const std::vector<std::pair<const char*, const char*>> commands{
        {"coeffs", "MA, AR, autocovariance and infinite predictor coefficients"},
        {"predict", "Finite predictor coefficients from Levinson and the explicit series"},
        {"rate", "Convergence rate n (phi_{n,j} - phi_j)"},
        {"baxter", "Baxter inequality experiment"},
        {"dkscale", "Scaling of n d_k(n, u)"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return fail(err, error_code(ErrorKind::Argument), e.what(), kExitConfig);
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.n_text.empty()) {
        if (cfg.command == "predict") cfg.n_text = "8";
        if (cfg.command == "rate") cfg.n_text = "128,256,512";
        if (cfg.command == "baxter") cfg.n_text = "16..512";
        if (cfg.command == "dkscale") cfg.n_text = "512,1024,2048";
    }

    try {
        const ProcessModel model = build_model(cfg);
        nlohmann::ordered_json meta = meta_of(cfg, model);
        Table table;
        std::optional<double> disagreement;
        if (cfg.command == "coeffs") {
            table = cmd_coeffs(cfg, model, meta);
        } else if (cfg.command == "predict") {
            PredictOutcome p = cmd_predict(cfg, model, meta);
            table = std::move(p.table);
            const double limit = model.regime() == Regime::LongMemory ? kCrossCheckTolerance : 1e-9;
            if (p.compared && !(p.max_diff <= limit)) disagreement = p.max_diff;
        } else if (cfg.command == "rate") {
            table = cmd_rate(cfg, model, meta);
        } else if (cfg.command == "baxter") {
            table = cmd_baxter(cfg, model, meta);
        } else {
            table = cmd_dkscale(cfg, model, meta);
        }

        std::ostringstream buf;
        if (cfg.format == "json") {
            write_json(buf, table, meta);
        } else {
            write_csv(buf, table);
        }
        if (cfg.out_path.empty()) {
            out << buf.str();
        } else {
            std::ofstream file(cfg.out_path, std::ios::binary);
            if (!file) throw ArgumentError("cannot open output file '" + cfg.out_path + "'");
            file << buf.str();
        }
        if (disagreement) {
            throw DisagreementError("explicit and Levinson predictors differ by " +
                                        format_real(*disagreement),
                                    *disagreement);
        }
    } catch (const Error& e) {
        return fail(err, error_code(e.kind()), e.what(), exit_code_for(e.kind()));
    } catch (const std::exception& e) {
        return fail(err, "internal", e.what(), 1);
    }
    return kExitOk;
}

}  // namespace predictorlab
