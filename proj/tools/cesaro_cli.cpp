// Command-line front end: sieving, weighted sums, quadrature, and
// catalog verification with machine-readable output.
//
// Exit codes: 0 success / all entries pass, 1 verification failure or
// computation error, 2 usage or input parse errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cesaro/arith.hpp"
#include "cesaro/expr.hpp"
#include "cesaro/quad.hpp"
#include "cesaro/report.hpp"
#include "cesaro/sums.hpp"
#include "cesaro/verify.hpp"

namespace {

using namespace cesaro;

// "2^12..2^20" or "10^4..10^7" expand geometrically by the base;
// otherwise a comma-separated list of integers.
std::vector<std::uint64_t> parse_ladder(const std::string& spec) {
    std::vector<std::uint64_t> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        auto parse_pow = [&](const std::string& s, std::uint64_t& base,
                             std::uint64_t& exp) {
            const auto caret = s.find('^');
            if (caret == std::string::npos)
                throw std::invalid_argument("ladder range bounds must look like B^E");
            base = std::stoull(s.substr(0, caret));
            exp = std::stoull(s.substr(caret + 1));
        };
        std::uint64_t base_a, exp_a, base_b, exp_b;
        parse_pow(spec.substr(0, dots), base_a, exp_a);
        parse_pow(spec.substr(dots + 2), base_b, exp_b);
        if (base_a != base_b || base_a < 2)
            throw std::invalid_argument("ladder range needs matching bases >= 2");
        if (exp_b < exp_a)
            throw std::invalid_argument("ladder range is empty");
        std::uint64_t v = 1;
        for (std::uint64_t i = 0; i < exp_a; ++i)
            v *= base_a;
        for (std::uint64_t e = exp_a; e <= exp_b; ++e) {
            out.push_back(v);
            v *= base_a;
        }
        return out;
    }
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoull(item));
    if (out.empty())
        throw std::invalid_argument("empty ladder");
    return out;
}

struct weight_options {
    std::string kind = "phi";
    std::optional<double> alpha;
    std::string mean_expr; // L
    std::string synthetic_term;
};

void add_weight_flags(CLI::App* cmd, weight_options& w) {
    cmd->add_option("--weight", w.kind, "weight kind: phi, sigma, phi_over_k, synthetic")
        ->default_str("phi");
    cmd->add_option("--alpha", w.alpha, "exponent alpha (defaults per weight kind)");
    cmd->add_option("--L", w.mean_expr, "mean value L as an expression");
    cmd->add_option("--a-k", w.synthetic_term,
                    "synthetic weight term, expression in k (bound to x)");
}

sums::weight_spec resolve_weight(const weight_options& w) {
    sums::weight_spec spec;
    if (w.kind == "phi")
        spec = sums::weight_spec::phi();
    else if (w.kind == "sigma")
        spec = sums::weight_spec::sigma();
    else if (w.kind == "phi_over_k")
        spec = sums::weight_spec::phi_over_k();
    else if (w.kind == "synthetic") {
        if (w.synthetic_term.empty() || !w.alpha || w.mean_expr.empty())
            throw CLI::ValidationError(
                "synthetic weight needs --a-k, --alpha and --L");
        spec = sums::weight_spec::make_synthetic(expr::parse(w.synthetic_term),
                                                 *w.alpha, 0.0);
    } else
        throw CLI::ValidationError("unknown weight kind '" + w.kind + "'");
    if (w.alpha)
        spec.alpha = *w.alpha;
    if (!w.mean_expr.empty())
        spec.mean = expr::evaluate(expr::parse(w.mean_expr), 0.0);
    return spec;
}

expr::params resolve_params(const std::vector<std::string>& items) {
    expr::params out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param needs name=value, got '" + item + "'");
        out[item.substr(0, eq)] =
            expr::evaluate(expr::parse(item.substr(eq + 1)), 0.0);
    }
    return out;
}

// Sieve tables, optionally cached on disk as <dir>/<func>_<n>.sieve.
class table_provider {
public:
    explicit table_provider(std::string cache_dir) : dir_(std::move(cache_dir)) {}

    const arith::sieve_table& get(arith::func_id f, std::uint64_t n) {
        auto& slot = (f == arith::func_id::phi) ? phi_ : sigma_;
        if (slot && slot->n_max() >= n)
            return *slot;
        if (!dir_.empty()) {
            const std::filesystem::path path = cache_path(f, n);
            if (std::filesystem::exists(path)) {
                std::ifstream in(path, std::ios::binary);
                slot = arith::load_table(in);
                return *slot;
            }
            slot = arith::sieve(f, n);
            std::filesystem::create_directories(dir_);
            std::ofstream out(path, std::ios::binary);
            arith::save_table(*slot, out);
            return *slot;
        }
        slot = arith::sieve(f, n);
        return *slot;
    }

    const arith::sieve_table* get_for(const sums::weight_spec& w, std::uint64_t n) {
        if (!w.needs_table())
            return nullptr;
        return &get(w.table_func(), n);
    }

private:
    std::filesystem::path cache_path(arith::func_id f, std::uint64_t n) const {
        return std::filesystem::path(dir_) /
               (std::string(arith::func_name(f)) + "_" + std::to_string(n) + ".sieve");
    }

    std::string dir_;
    std::optional<arith::sieve_table> phi_, sigma_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Riemann sums over arithmetic sequences"};
    app.require_subcommand(1);

    std::string format_name = "text";
    app.add_option("--format", format_name, "output format: json, csv, text")
        ->default_str("text");
    std::string cache_dir;
    if (const char* env = std::getenv("CESARO_CACHE_DIR"))
        cache_dir = env;
    app.add_option("--cache-dir", cache_dir,
                   "directory for sieve table caches (default $CESARO_CACHE_DIR)");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "build an arithmetic-function table");
    std::string sieve_func = "phi";
    std::uint64_t sieve_n = 0;
    std::string sieve_out;
    sieve_cmd->add_option("--func", sieve_func, "phi or sigma")->default_str("phi");
    sieve_cmd->add_option("--n", sieve_n, "table size")->required();
    sieve_cmd->add_option("--out", sieve_out, "write the table to this file");

    // wsum
    auto* wsum_cmd = app.add_subcommand("wsum", "weighted sum I_n(f)");
    weight_options wsum_w;
    add_weight_flags(wsum_cmd, wsum_w);
    std::string wsum_f;
    std::uint64_t wsum_n = 0;
    std::vector<std::string> wsum_params;
    std::string wsum_target;
    bool wsum_no_target = false;
    wsum_cmd->add_option("--f", wsum_f, "test function f(x)")->required();
    wsum_cmd->add_option("--n", wsum_n, "number of terms")->required();
    wsum_cmd->add_option("--param", wsum_params, "bind a parameter, name=value");
    wsum_cmd->add_option("--target", wsum_target,
                         "expected limit as an expression (default: quadrature)");
    wsum_cmd->add_flag("--no-target", wsum_no_target, "skip the target column");

    // moment
    auto* moment_cmd = app.add_subcommand("moment", "moment sum M_p(n)");
    weight_options moment_w;
    add_weight_flags(moment_cmd, moment_w);
    unsigned moment_p = 0;
    std::uint64_t moment_n = 0;
    moment_cmd->add_option("--p", moment_p, "moment order")->required();
    moment_cmd->add_option("--n", moment_n, "number of terms")->required();

    // riemann
    auto* riemann_cmd = app.add_subcommand("riemann", "plain Riemann sum");
    std::string riemann_f;
    std::uint64_t riemann_n = 0;
    std::vector<std::string> riemann_params;
    riemann_cmd->add_option("--f", riemann_f, "integrand f(x)")->required();
    riemann_cmd->add_option("--n", riemann_n, "number of terms")->required();
    riemann_cmd->add_option("--param", riemann_params, "bind a parameter, name=value");

    // integrate
    auto* int_cmd = app.add_subcommand("integrate", "adaptive quadrature");
    std::string int_f;
    double int_lo = 0.0, int_hi = 1.0, int_tol = 1e-12;
    std::vector<std::string> int_params;
    int_cmd->add_option("--f", int_f, "integrand f(x)")->required();
    int_cmd->add_option("--lo", int_lo, "lower bound")->default_val(0.0);
    int_cmd->add_option("--hi", int_hi, "upper bound")->default_val(1.0);
    int_cmd->add_option("--tol", int_tol, "absolute tolerance")->default_val(1e-12);
    int_cmd->add_option("--param", int_params, "bind a parameter, name=value");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run catalog entries over a ladder");
    std::string verify_catalog = "data/catalog.txt";
    if (const char* env = std::getenv("CESARO_CATALOG"))
        verify_catalog = env;
    std::vector<std::string> verify_entries;
    std::string verify_ladder = "2^12..2^20";
    std::optional<double> verify_tol;
    verify_cmd->add_option("--catalog", verify_catalog,
                           "catalog file (default $CESARO_CATALOG or data/catalog.txt)");
    verify_cmd->add_option("--entry", verify_entries,
                           "entry id to run (repeatable; default all)");
    verify_cmd->add_option("--ladder", verify_ladder,
                           "n ladder, e.g. 2^12..2^20 or 1000,10000");
    verify_cmd->add_option("--tol", verify_tol, "override the per-entry tolerance");

    // asymptotic
    auto* asym_cmd = app.add_subcommand("asymptotic", "log-weighted totient asymptotic");
    double asym_alpha = 1.0;
    std::string asym_ladder = "10^3..10^6";
    asym_cmd->add_option("--alpha", asym_alpha, "exponent alpha >= 0")->default_val(1.0);
    asym_cmd->add_option("--ladder", asym_ladder, "n ladder");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    const char* module = "cli";
    try {
        const report::output_format fmt = report::parse_format(format_name);
        table_provider tables(cache_dir);

        if (*sieve_cmd) {
            module = "arith";
            arith::func_id f;
            if (sieve_func == "phi")
                f = arith::func_id::phi;
            else if (sieve_func == "sigma")
                f = arith::func_id::sigma;
            else
                throw std::invalid_argument("--func must be phi or sigma");
            const arith::sieve_table& t = tables.get(f, sieve_n);
            if (!sieve_out.empty()) {
                std::ofstream out(sieve_out, std::ios::binary);
                arith::save_table(t, out);
            }
            sums::neumaier_sum total;
            for (std::uint64_t v : t.values())
                total.add(static_cast<double>(v));
            report::value_report r;
            r.n = t.n_max();
            r.value = total.value(); // summatory function at n_max
            std::cout << report::emit(r, fmt);
            return 0;
        }

        if (*wsum_cmd) {
            module = "sums";
            const sums::weight_spec w = resolve_weight(wsum_w);
            const expr::params fp = resolve_params(wsum_params);
            const expr::ast f = expr::parse(wsum_f);
            const arith::sieve_table* table = tables.get_for(w, wsum_n);
            report::value_report r;
            r.n = wsum_n;
            r.value = sums::weighted_sum(f, w, table, wsum_n, fp);
            if (!wsum_no_target) {
                module = "quad";
                r.target = wsum_target.empty()
                               ? quad::limit_functional(f, w.alpha, w.mean, 1e-12, fp).value
                               : expr::evaluate(expr::parse(wsum_target), 0.0, fp);
                r.abs_error = std::fabs(r.value - r.target);
                r.has_target = true;
            }
            std::cout << report::emit(r, fmt);
            return 0;
        }

        if (*moment_cmd) {
            module = "sums";
            const sums::weight_spec w = resolve_weight(moment_w);
            const arith::sieve_table* table = tables.get_for(w, moment_n);
            report::value_report r;
            r.n = moment_n;
            r.value = sums::moment_sum(moment_p, w, table, moment_n);
            r.target = w.alpha * w.mean / (w.alpha + moment_p);
            r.abs_error = std::fabs(r.value - r.target);
            r.has_target = true;
            std::cout << report::emit(r, fmt);
            return 0;
        }

        if (*riemann_cmd) {
            module = "sums";
            report::value_report r;
            r.n = riemann_n;
            r.value = sums::riemann_sum(expr::parse(riemann_f), riemann_n,
                                        resolve_params(riemann_params));
            std::cout << report::emit(r, fmt);
            return 0;
        }

        if (*int_cmd) {
            module = "quad";
            const quad::quad_result r = quad::integrate(
                expr::parse(int_f), int_lo, int_hi, int_tol, resolve_params(int_params));
            std::cout << report::emit(r, fmt);
            return 0;
        }

        if (*verify_cmd) {
            module = "verify";
            std::ifstream in(verify_catalog);
            if (!in)
                throw format_error("cannot open catalog '" + verify_catalog + "'",
                                   "catalog");
            std::vector<verify::catalog_entry> entries = verify::load_catalog(in);
            if (!verify_entries.empty()) {
                std::vector<verify::catalog_entry> picked;
                for (const std::string& id : verify_entries) {
                    auto it = std::find_if(entries.begin(), entries.end(),
                                           [&](const auto& e) { return e.id == id; });
                    if (it == entries.end())
                        throw std::invalid_argument("no catalog entry '" + id + "'");
                    picked.push_back(*it);
                }
                entries = std::move(picked);
            }
            const std::vector<std::uint64_t> ladder = parse_ladder(verify_ladder);
            bool all_pass = true;
            for (const auto& entry : entries) {
                const double tol = verify_tol.value_or(entry.tolerance);
                const arith::sieve_table* table =
                    tables.get_for(entry.weight, ladder.back());
                const verify::convergence_report rep =
                    verify::run_entry(entry, ladder, tol, table);
                all_pass = all_pass && rep.pass;
                std::cout << report::emit(rep, fmt);
            }
            return all_pass ? 0 : 1;
        }

        if (*asym_cmd) {
            module = "verify";
            const std::vector<std::uint64_t> ladder = parse_ladder(asym_ladder);
            const arith::sieve_table& phi =
                tables.get(arith::func_id::phi, ladder.back());
            std::cout << report::emit(verify::asymptotic_check(asym_alpha, ladder, phi),
                                      fmt);
            return 0;
        }
    } catch (const parse_error& e) {
        std::cerr << "expr: " << e.what() << " (offset " << e.offset() << ")\n";
        return 2;
    } catch (const format_error& e) {
        std::cerr << module << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << module << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << module << ": " << e.what() << "\n";
        return 1;
    }
    return 2;
}
