#ifndef CESARO_VERIFY_HPP
#define CESARO_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cesaro/arith.hpp"
#include "cesaro/expr.hpp"
#include "cesaro/quad.hpp"
#include "cesaro/sums.hpp"

namespace cesaro::verify {

// A named closed-form result: weight sequence, test function, and the
// limit the weighted sums must approach.
struct catalog_entry {
    std::string id;
    sums::weight_spec weight;
    std::string f_source;
    expr::ast f;
    expr::params param_bindings;
    std::string limit_source; // closed-form expression text
    double limit_value;       // its binary64 value
    double tolerance;
    std::string citation;
};

struct convergence_row {
    std::uint64_t n;
    double value;
    double abs_error;
};

struct convergence_report {
    std::string entry_id;
    std::vector<convergence_row> rows;
    double extrapolated_limit = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct moment_row {
    unsigned p;
    double value;
    double target; // alpha L / (alpha + p)
};

struct asymptotic_row {
    std::uint64_t n;
    double lhs;
    double rhs;
    double residual;
};

struct asymptotic_report {
    double alpha = 0.0;
    std::vector<asymptotic_row> rows;
};

// --- extrapolation ------------------------------------------------------

// Least-squares fit of value_n ~ limit + (c1 + c2 log n)/n, returning the
// fitted limit. The summatory error of the built-in weights is
// O(n log n), which makes the I_n error O(log n / n); this model captures
// that. Falls back to the last value when the fit is rank-deficient.
inline double extrapolate(const std::vector<std::pair<std::uint64_t, double>>& rows) {
    if (rows.size() < 3)
        throw std::invalid_argument("extrapolate: need at least 3 rows");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first <= rows[i - 1].first)
            throw std::invalid_argument("extrapolate: n must be strictly increasing");

    const auto [mn, mx] = std::minmax_element(
        rows.begin(), rows.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    if (mn->second == mx->second)
        return rows.back().second; // constant sequence, fit is exact

    // normal equations for the 3-parameter linear model, in long double
    long double ata[3][3] = {};
    long double atb[3] = {};
    for (const auto& [n, v] : rows) {
        const long double inv = 1.0L / static_cast<long double>(n);
        const long double b[3] = {1.0L, inv, std::log(static_cast<long double>(n)) * inv};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j)
                ata[i][j] += b[i] * b[j];
            atb[i] += b[i] * static_cast<long double>(v);
        }
    }

    // Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs((double)ata[perm[r]][col]) > std::fabs((double)ata[perm[piv]][col]))
                piv = r;
        std::swap(perm[col], perm[piv]);
        const long double d = ata[perm[col]][col];
        if (std::fabs(static_cast<double>(d)) < 1e-30)
            return rows.back().second; // rank-deficient
        for (int r = col + 1; r < 3; ++r) {
            const long double m = ata[perm[r]][col] / d;
            for (int c = col; c < 3; ++c)
                ata[perm[r]][c] -= m * ata[perm[col]][c];
            atb[perm[r]] -= m * atb[perm[col]];
        }
    }
    long double sol[3];
    for (int i = 2; i >= 0; --i) {
        long double s = atb[perm[i]];
        for (int j = i + 1; j < 3; ++j)
            s -= ata[perm[i]][j] * sol[j];
        sol[i] = s / ata[perm[i]][i];
    }
    return static_cast<double>(sol[0]);
}

// --- catalog runs -------------------------------------------------------

inline convergence_report run_entry(const catalog_entry& entry,
                                    const std::vector<std::uint64_t>& n_ladder,
                                    double tol, const arith::sieve_table* table) {
    if (n_ladder.empty())
        throw std::invalid_argument("run_entry: empty ladder");
    for (std::size_t i = 1; i < n_ladder.size(); ++i)
        if (n_ladder[i] <= n_ladder[i - 1])
            throw std::invalid_argument("run_entry: ladder must be strictly increasing");

    convergence_report rep;
    rep.entry_id = entry.id;
    rep.target = entry.limit_value;
    rep.tolerance = tol;
    std::vector<std::pair<std::uint64_t, double>> fit_rows;
    for (std::uint64_t n : n_ladder) {
        const double v =
            sums::weighted_sum(entry.f, entry.weight, table, n, entry.param_bindings);
        rep.rows.push_back({n, v, std::fabs(v - rep.target)});
        fit_rows.emplace_back(n, v);
    }
    rep.extrapolated_limit =
        fit_rows.size() >= 3 ? extrapolate(fit_rows) : fit_rows.back().second;
    rep.pass = std::fabs(rep.extrapolated_limit - rep.target) <= tol;
    return rep;
}

inline std::vector<moment_row> moment_ladder_check(const sums::weight_spec& w,
                                                   unsigned p_max, std::uint64_t n,
                                                   const arith::sieve_table* table) {
    std::vector<moment_row> out;
    for (unsigned p = 0; p <= p_max; ++p) {
        const double v = sums::moment_sum(p, w, table, n);
        const double target = w.alpha * w.mean / (w.alpha + p);
        out.push_back({p, v, target});
    }
    return out;
}

// lhs = n^{-(alpha+1)} sum_{k=1}^n k^{alpha-1} log(k) phi(k)
// rhs = 6((1+alpha) log n - 1) / (pi^2 (1+alpha)^2)
// The k = 1 term is identically zero (log 1 = 0), so it is skipped; this
// also sidesteps k^{alpha-1} at alpha = 0.
inline asymptotic_report asymptotic_check(double alpha,
                                          const std::vector<std::uint64_t>& n_ladder,
                                          const arith::sieve_table& phi_table) {
    if (alpha < 0.0)
        throw std::invalid_argument("asymptotic_check: alpha must be nonnegative");
    if (phi_table.func() != arith::func_id::phi)
        throw std::invalid_argument("asymptotic_check: needs a phi table");
    asymptotic_report rep;
    rep.alpha = alpha;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (std::uint64_t n : n_ladder) {
        if (phi_table.n_max() < n)
            throw std::invalid_argument("asymptotic_check: table too short");
        const double s = sums::chunked_sum(n, [&](std::uint64_t k) {
            if (k == 1)
                return 0.0;
            const double kd = static_cast<double>(k);
            return std::pow(kd, alpha - 1.0) * std::log(kd) *
                   static_cast<double>(phi_table[k]);
        });
        const double lhs = s * std::pow(static_cast<double>(n), -(alpha + 1.0));
        const double a1 = 1.0 + alpha;
        const double rhs =
            6.0 * (a1 * std::log(static_cast<double>(n)) - 1.0) / (pi2 * a1 * a1);
        rep.rows.push_back({n, lhs, rhs, lhs - rhs});
    }
    return rep;
}

// --- catalog file -------------------------------------------------------
//
// Records look like:
//
//   [eq1]
//   weight = phi
//   f = arctan(x)/(x*(1+x))
//   limit = 3*log(2)/(4*pi)
//   tol = 2e-4
//   cite = Lupu's question
//
// Optional keys: alpha and L override the weight defaults (L is an
// expression); params binds f's parameters ("a=1, b=2"); a_k gives the
// synthetic weight term as an expression in k (required for
// weight = synthetic). '#' starts a comment.

namespace detail {

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline double eval_const_expr(const std::string& src, const char* field) {
    try {
        return expr::evaluate(expr::parse(src), 0.0);
    } catch (const std::exception& ex) {
        throw format_error("catalog: bad expression for '" + std::string(field) +
                               "': " + ex.what(),
                           field);
    }
}

inline expr::params parse_bindings(const std::string& src) {
    expr::params out;
    std::istringstream ss(src);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw format_error("catalog: params entry '" + item + "' has no '='",
                               "params");
        const std::string name = trim(item.substr(0, eq));
        out[name] = eval_const_expr(trim(item.substr(eq + 1)), "params");
    }
    return out;
}

} // namespace detail

inline std::vector<catalog_entry> load_catalog(std::istream& in) {
    std::vector<catalog_entry> entries;
    std::map<std::string, std::string> fields;
    std::string id;
    std::size_t line_no = 0;

    auto flush = [&]() {
        if (id.empty())
            return;
        auto get = [&](const char* key) -> const std::string* {
            auto it = fields.find(key);
            return it == fields.end() ? nullptr : &it->second;
        };
        auto require = [&](const char* key) -> const std::string& {
            const std::string* v = get(key);
            if (!v)
                throw format_error("catalog entry '" + id + "' is missing '" + key + "'",
                                   key);
            return *v;
        };

        catalog_entry e;
        e.id = id;
        const std::string& wk = require("weight");
        if (wk == "phi")
            e.weight = sums::weight_spec::phi();
        else if (wk == "sigma")
            e.weight = sums::weight_spec::sigma();
        else if (wk == "phi_over_k")
            e.weight = sums::weight_spec::phi_over_k();
        else if (wk == "synthetic") {
            const std::string& term = require("a_k");
            try {
                e.weight = sums::weight_spec::make_synthetic(expr::parse(term), 1.0, 1.0);
            } catch (const parse_error& ex) {
                throw format_error("catalog entry '" + id + "': bad a_k: " + ex.what(),
                                   "a_k");
            }
            if (!get("alpha") || !get("L"))
                throw format_error("catalog entry '" + id +
                                       "': synthetic weight needs alpha and L",
                                   "alpha");
        } else {
            throw format_error("catalog entry '" + id + "': unknown weight '" + wk + "'",
                               "weight");
        }
        if (const std::string* a = get("alpha"))
            e.weight.alpha = detail::eval_const_expr(*a, "alpha");
        if (const std::string* l = get("L"))
            e.weight.mean = detail::eval_const_expr(*l, "L");
        if (!(e.weight.alpha > 0.0))
            throw format_error("catalog entry '" + id + "': alpha must be positive",
                               "alpha");

        e.f_source = require("f");
        try {
            e.f = expr::parse(e.f_source);
        } catch (const parse_error& ex) {
            throw format_error("catalog entry '" + id + "': bad f: " + ex.what(), "f");
        }
        if (const std::string* p = get("params"))
            e.param_bindings = detail::parse_bindings(*p);

        e.limit_source = require("limit");
        {
            expr::ast lim;
            try {
                lim = expr::parse(e.limit_source);
            } catch (const parse_error& ex) {
                throw format_error("catalog entry '" + id + "': bad limit: " + ex.what(),
                                   "limit");
            }
            e.limit_value = expr::evaluate(lim, 0.0, e.param_bindings);
        }
        e.tolerance = detail::eval_const_expr(require("tol"), "tol");
        if (!(e.tolerance > 0.0))
            throw format_error("catalog entry '" + id + "': tol must be positive", "tol");
        if (const std::string* c = get("cite"))
            e.citation = *c;

        entries.push_back(std::move(e));
        fields.clear();
        id.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw format_error("catalog line " + std::to_string(line_no) +
                                       ": unterminated '['",
                                   "id");
            flush();
            id = detail::trim(line.substr(1, line.size() - 2));
            if (id.empty())
                throw format_error("catalog line " + std::to_string(line_no) +
                                       ": empty entry id",
                                   "id");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || id.empty())
            throw format_error("catalog line " + std::to_string(line_no) +
                                   ": expected 'key = value' inside an entry",
                               "record");
        fields[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    flush();
    return entries;
}

// quad-side consistency: the limit functional of the entry's f must
// reproduce the stored closed-form value.
inline double closed_form_residual(const catalog_entry& e, double tol = 1e-12) {
    const quad::quad_result r =
        quad::limit_functional(e.f, e.weight.alpha, e.weight.mean, tol, e.param_bindings);
    return std::fabs(r.value - e.limit_value);
}

} // namespace cesaro::verify

#endif // CESARO_VERIFY_HPP
