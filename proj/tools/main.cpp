#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "currents/hodge.hpp"
#include "currents/koszul.hpp"
#include "currents/macdonald.hpp"
#include "currents/report.hpp"

using namespace currents;

namespace {

int resolve_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Flat key=value lines or a flat JSON object; flags parsed later override.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::string text = buf.str();

    std::map<std::string, std::string> kv;
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        auto doc = nlohmann::json::parse(text);
        for (const auto& [k, v] : doc.items()) {
            if (v.is_string())
                kv[k] = v.get<std::string>();
            else if (v.is_boolean())
                kv[k] = v.get<bool>() ? "true" : "false";
            else
                kv[k] = v.dump();
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            size_t eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw std::invalid_argument("config line is not key=value: " + line);
                continue;
            }
            auto trim = [](std::string s) {
                size_t b = s.find_first_not_of(" \t\r");
                size_t e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
    }

    auto as_int = [](const std::string& s) { return std::stoi(s); };
    auto as_bool = [](const std::string& s) {
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
        throw std::invalid_argument("config boolean must be true/false: " + s);
    };
    for (auto& [key, val] : kv) {
        std::string k = key;
        for (auto& ch : k)
            if (ch == '-') ch = '_';
        if (k == "algebra") cfg.algebra = val;
        else if (k == "n") cfg.n = as_int(val);
        else if (k == "m") cfg.m = as_int(val);
        else if (k == "max_d") cfg.max_d = as_int(val);
        else if (k == "max_p") cfg.max_p = as_int(val);
        else if (k == "max_w" || k == "max_weight") cfg.max_w = as_int(val);
        else if (k == "max_k") cfg.max_k = as_int(val);
        else if (k == "tol") cfg.tol = std::stod(val);
        else if (k == "backend") cfg.backend = val;
        else if (k == "format") cfg.format = val;
        else if (k == "out") cfg.out = val;
        else if (k == "threads") cfg.threads = as_int(val);
        else if (k == "corrupt" || k == "corrupt_prediction") cfg.corrupt = as_bool(val);
        else if (k == "germ_only") cfg.germ_only = as_bool(val);
        else if (k == "command") continue; // harmless echo from an old report
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

void validate(const RunConfig& cfg) {
    if (!(cfg.tol > 0)) throw std::invalid_argument("tol must be positive");
    if (cfg.threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (cfg.backend != "exact" && cfg.backend != "numeric")
        throw std::invalid_argument("backend must be exact or numeric");
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        throw std::invalid_argument("format must be json, csv, or text");
}

int emit_table_report(RunConfig cfg, const std::vector<BlockResult>& table, const Bounds& b,
                      const GradedSeries& predicted, double secs) {
    auto diffs = compare_series(table, b, predicted);
    Report r;
    r.config = cfg;
    for (const auto& e : table) {
        ResultRow row;
        row.label = "block";
        row.d = e.d;
        row.p = e.p;
        row.w = e.w;
        row.dim_computed = e.dim;
        row.dim_predicted = predicted.at(e.d, e.p, e.w);
        r.results.push_back(row);
    }
    r.verdict = diffs.empty() ? "pass" : "fail";
    r.seconds = secs;
    write_report(r);
    return diffs.empty() ? 0 : 1;
}

int cmd_truncated(RunConfig cfg) {
    auto t0 = std::chrono::steady_clock::now();
    validate(cfg);
    if (cfg.n < 1) throw std::invalid_argument("truncation order n must be >= 1");
    LieAlgebraData alg = build_algebra(cfg.algebra);
    Bounds b{alg.dim * cfg.n, 0, cfg.max_w >= 0 ? cfg.max_w : alg.dim * cfg.n * (cfg.n - 1) / 2};
    TableBackend be = cfg.backend == "numeric" ? TableBackend::numeric : TableBackend::exact;
    auto table =
        truncated_cohomology_table(alg, cfg.n, b.max_w, resolve_threads(cfg), false, be, cfg.tol);
    GradedSeries pred = predicted_truncated_series(alg, cfg.n, b);
    if (cfg.corrupt) pred = corrupt_prediction(pred);
    return emit_table_report(cfg, table, b, pred, seconds_since(t0));
}

int cmd_super(RunConfig cfg) {
    auto t0 = std::chrono::steady_clock::now();
    validate(cfg);
    LieAlgebraData alg = build_algebra(cfg.algebra);
    Bounds b{cfg.max_d >= 0 ? cfg.max_d : 2, cfg.max_p >= 0 ? cfg.max_p : 3,
             cfg.max_w >= 0 ? cfg.max_w : 4};
    auto table = super_cohomology_table(alg, b, resolve_threads(cfg));
    GradedSeries pred = predicted_super_series(alg, b);
    if (cfg.corrupt) pred = corrupt_prediction(pred);
    return emit_table_report(cfg, table, b, pred, seconds_since(t0));
}

int cmd_iwahori(RunConfig cfg) {
    auto t0 = std::chrono::steady_clock::now();
    validate(cfg);
    LieAlgebraData alg = build_algebra(cfg.algebra);
    Bounds b{cfg.max_d >= 0 ? cfg.max_d : 1, cfg.max_p >= 0 ? cfg.max_p : 2,
             cfg.max_w >= 0 ? cfg.max_w : 2};
    auto table = iwahori_cohomology_table(alg, b, resolve_threads(cfg));
    GradedSeries pred = predicted_iwahori_series(alg, b);
    if (cfg.corrupt) pred = corrupt_prediction(pred);
    return emit_table_report(cfg, table, b, pred, seconds_since(t0));
}

int cmd_hodge(RunConfig cfg) {
    auto t0 = std::chrono::steady_clock::now();
    validate(cfg);
    LieAlgebraData alg = build_algebra(cfg.algebra);
    HodgeContext ctx(alg); // rejects non-semi-simple input
    Bounds b{cfg.max_d >= 0 ? cfg.max_d : 2, cfg.max_p >= 0 ? cfg.max_p : 2,
             cfg.max_w >= 0 ? cfg.max_w : 4};
    Report r;
    r.config = cfg;

    if (cfg.germ_only) {
        for (int n = 1; n <= std::max(b.max_w, 1); ++n) {
            LinearGermCoefficients g = linear_germ_coefficients(ctx, n);
            auto row = [&](const char* label, double got, double want) {
                ResultRow x;
                x.label = label;
                x.d = 1;
                x.w = n;
                x.has_deviation = true;
                x.deviation = std::abs(got - want);
                x.has_values = true;
                x.value_computed = got;
                x.value_expected = want;
                r.results.push_back(x);
            };
            row("germ_laplacian", g.laplacian, g.expected_laplacian);
            row("germ_current", g.current, g.expected_current);
            row("germ_transfer", g.d_term, g.expected_d);
            row("germ_zero_mode", g.k_term, g.expected_k);
            ResultRow ident;
            ident.label = "germ_identity";
            ident.d = 1;
            ident.w = n;
            ident.has_deviation = true;
            ident.deviation = g.max_deviation;
            r.results.push_back(ident);
        }
    } else {
        int threads = resolve_threads(cfg);
        auto exact = super_cohomology_table(alg, b, threads);
        std::map<std::tuple<int, int, int>, long long> exact_dim;
        for (const auto& e : exact) exact_dim[{e.d, e.p, e.w}] = e.dim;

        for (int p = 0; p <= b.max_p; ++p)
            for (int w = 0; w <= b.max_w; ++w)
                for (int d = 0; d <= b.max_d; ++d) {
                    if (ctx.block(d, p, w).dim() == 0) continue;
                    auto dev_row = [&](const char* label, double dev) {
                        ResultRow x;
                        x.label = label;
                        x.d = d;
                        x.p = p;
                        x.w = w;
                        x.has_deviation = true;
                        x.deviation = dev;
                        r.results.push_back(x);
                    };
                    dev_row("adjointness", verify_adjointness(ctx, d, p, w));
                    dev_row("laplacian_split", verify_laplacian_split(ctx, d, p, w));
                    NakanoReport nk = verify_nakano(ctx, d, p, w);
                    dev_row("nakano_invariant", nk.invariant_identity);
                    dev_row("nakano_zero_mode", nk.k_on_invariants);
                    dev_row("transfer_split", verify_t_decomposition(ctx, d, p, w));
                    ResultRow hd;
                    hd.label = "harmonic_dim";
                    hd.d = d;
                    hd.p = p;
                    hd.w = w;
                    hd.dim_computed = harmonic_basis(ctx, d, p, w).vectors.cols();
                    hd.dim_predicted = exact_dim.at({d, p, w});
                    r.results.push_back(hd);
                }

        const std::vector<std::pair<std::tuple<int, int, int>, std::tuple<int, int, int>>> pairs =
            {{{0, 2, 0}, {0, 2, 0}}, {{0, 2, 0}, {1, 1, 1}}, {{1, 1, 1}, {1, 1, 2}}};
        for (const auto& [x, y] : pairs) {
            int pd = std::get<0>(x) + std::get<0>(y);
            int pp = std::get<1>(x) + std::get<1>(y);
            int pw = std::get<2>(x) + std::get<2>(y);
            if (pd > b.max_d || pp > b.max_p || pw > b.max_w) continue;
            ResultRow x2;
            x2.label = "subalgebra_closure";
            x2.d = pd;
            x2.p = pp;
            x2.w = pw;
            x2.has_deviation = true;
            x2.deviation = verify_harmonic_subalgebra(ctx, x, y);
            r.results.push_back(x2);
        }
    }

    r.verdict = verdict_of(r);
    r.seconds = seconds_since(t0);
    write_report(r);
    return r.verdict == "pass" ? 0 : 1;
}

int cmd_spectral(RunConfig cfg) {
    auto t0 = std::chrono::steady_clock::now();
    validate(cfg);
    if (cfg.n < 0 || cfg.m < 0) throw std::invalid_argument("spectral needs m, n >= 0");
    Delta1Report rep = delta1_cokernel(cfg.m, cfg.n, cfg.max_k);
    Report r;
    r.config = cfg;

    ResultRow ker;
    ker.label = "kernel_dim";
    ker.dim_computed = rep.kernel_dim;
    ker.dim_predicted = cfg.n == 0 ? 1 : 0;
    r.results.push_back(ker);

    std::set<int> expected, computed(rep.cokernel_weights.begin(), rep.cokernel_weights.end());
    for (int j = 1; j < cfg.n; ++j) expected.insert(cfg.m * cfg.n + j);
    for (int wgt : expected) {
        ResultRow row;
        row.label = "cokernel_weight";
        row.w = wgt;
        row.dim_computed = computed.count(wgt) ? 1 : 0;
        row.dim_predicted = 1;
        r.results.push_back(row);
    }
    for (int wgt : computed)
        if (!expected.count(wgt)) {
            ResultRow row;
            row.label = "cokernel_unexpected";
            row.w = wgt;
            row.dim_computed = 1;
            row.dim_predicted = 0;
            r.results.push_back(row);
        }

    r.verdict = verdict_of(r);
    r.seconds = seconds_since(t0);
    write_report(r);
    return r.verdict == "pass" ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    try {
        for (int i = 1; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc)
                apply_config_file(argv[i + 1], cfg);
            else if (arg.rfind("--config=", 0) == 0)
                apply_config_file(arg.substr(9), cfg);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    CLI::App app{"exact and numeric cohomology of truncated and super current algebras"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    auto add_common = [&](CLI::App* sub, bool with_backend) {
        sub->add_option("--algebra,-a", cfg.algebra, "algebra name")
            ->check(CLI::IsMember({"sl2", "sl3", "sl4", "gl2", "gl3"}));
        sub->add_option("--max-d", cfg.max_d, "largest cohomological degree");
        sub->add_option("--max-p", cfg.max_p, "largest symmetric degree");
        sub->add_option("--max-weight", cfg.max_w, "largest z-weight");
        sub->add_option("--tol", cfg.tol, "numeric tolerance");
        if (with_backend)
            sub->add_option("--backend", cfg.backend, "linear algebra path")
                ->check(CLI::IsMember({"exact", "numeric"}));
        sub->add_option("--format", cfg.format, "report format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", cfg.out, "write the report to this path");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        sub->add_option("--config", config_path, "key=value or JSON config file");
        sub->add_flag("--corrupt-prediction", cfg.corrupt,
                      "negative control: bump one predicted coefficient");
    };

    auto* truncated = app.add_subcommand(
        "truncated", "cohomology of the truncated current algebra vs the predicted product");
    add_common(truncated, true);
    truncated->add_option("--n,-n", cfg.n, "truncation order");

    auto* super = app.add_subcommand(
        "super", "relative cohomology of the super current algebra vs the predicted series");
    add_common(super, false);

    auto* hodge = app.add_subcommand(
        "hodge", "metric-side verification: Laplacian splits, harmonic dimensions, closure");
    add_common(hodge, false);
    hodge->add_flag("--germ-only", cfg.germ_only, "only the one-generator coefficient table");

    auto* spectral =
        app.add_subcommand("spectral", "edge differential kernel and cokernel at the germ level");
    add_common(spectral, false);
    spectral->add_option("--m,-m", cfg.m, "symmetric degree of the germ");
    spectral->add_option("--n,-n", cfg.n, "truncation order");
    spectral->add_option("--max-k", cfg.max_k, "last polynomial column");

    auto* iwahori = app.add_subcommand(
        "iwahori", "Borel-type pair cohomology vs the tensor-factorized prediction");
    add_common(iwahori, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (truncated->parsed()) {
            cfg.command = "truncated";
            return cmd_truncated(cfg);
        }
        if (super->parsed()) {
            cfg.command = "super";
            return cmd_super(cfg);
        }
        if (hodge->parsed()) {
            cfg.command = "hodge";
            return cmd_hodge(cfg);
        }
        if (spectral->parsed()) {
            cfg.command = "spectral";
            return cmd_spectral(cfg);
        }
        if (iwahori->parsed()) {
            cfg.command = "iwahori";
            return cmd_iwahori(cfg);
        }
        return 2;
    } catch (const ToleranceAmbiguity& e) {
        std::fprintf(stderr, "verification error: %s\n", e.what());
        return 1;
    } catch (const NonFiniteEntry& e) {
        std::fprintf(stderr, "verification error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
