#ifndef CESARO_SUMS_HPP
#define CESARO_SUMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cesaro/arith.hpp"
#include "cesaro/expr.hpp"

namespace cesaro::sums {

// --- weight sequences ---------------------------------------------------

enum class weight_kind { phi, sigma, phi_over_k, synthetic };

// A weight sequence a_k together with its exponent alpha and Cesaro mean
// L = lim n^{-alpha} sum_{k<=n} a_k. Built-in kinds carry the known
// number-theoretic constants; synthetic evaluates an expression in k
// (bound to the variable "x").
struct weight_spec {
    weight_kind kind;
    double alpha;
    double mean; // L
    expr::ast synthetic_term; // used when kind == synthetic

    static weight_spec phi() {
        return {weight_kind::phi, 2.0, 3.0 / (std::numbers::pi * std::numbers::pi), {}};
    }
    static weight_spec sigma() {
        return {weight_kind::sigma, 2.0, std::numbers::pi * std::numbers::pi / 12.0, {}};
    }
    static weight_spec phi_over_k() {
        return {weight_kind::phi_over_k, 1.0, 6.0 / (std::numbers::pi * std::numbers::pi), {}};
    }
    static weight_spec make_synthetic(expr::ast term, double alpha, double mean) {
        return {weight_kind::synthetic, alpha, mean, std::move(term)};
    }

    // which sieve table this spec reads, if any
    bool needs_table() const { return kind != weight_kind::synthetic; }
    arith::func_id table_func() const {
        return kind == weight_kind::sigma ? arith::func_id::sigma : arith::func_id::phi;
    }
};

namespace detail {

inline void check_table(const weight_spec& w, const arith::sieve_table* table,
                        std::uint64_t n) {
    if (!w.needs_table())
        return;
    if (!table)
        throw std::invalid_argument("weighted sum: weight kind needs a sieve table");
    if (table->func() != w.table_func())
        throw std::invalid_argument("weighted sum: table holds the wrong function");
    if (table->n_max() < n)
        throw std::invalid_argument("weighted sum: table too short (has " +
                                    std::to_string(table->n_max()) + ", need " +
                                    std::to_string(n) + ")");
}

inline double weight_at(const weight_spec& w, const arith::sieve_table* table,
                        std::uint64_t k) {
    switch (w.kind) {
    case weight_kind::phi:
    case weight_kind::sigma:
        // phi(k), sigma(k) < 2^53 for every supported n_max, so the
        // conversion is exact
        return static_cast<double>((*table)[k]);
    case weight_kind::phi_over_k:
        return static_cast<double>((*table)[k]) / static_cast<double>(k);
    case weight_kind::synthetic:
        return expr::evaluate(w.synthetic_term, static_cast<double>(k));
    }
    return 0.0;
}

} // namespace detail

// --- compensated summation ---------------------------------------------

// Kahan-Neumaier accumulator.
class neumaier_sum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Terms are accumulated in fixed chunks of 4096 in index order, chunk
// totals combined in order. The grouping is part of the contract: results
// are bit-reproducible regardless of how the chunks are scheduled.
inline constexpr std::uint64_t sum_chunk = 4096;

template <class TermFn>
double chunked_sum(std::uint64_t n, TermFn&& term) {
    neumaier_sum total;
    for (std::uint64_t lo = 1; lo <= n; lo += sum_chunk) {
        const std::uint64_t hi = std::min(n, lo + sum_chunk - 1);
        neumaier_sum chunk;
        for (std::uint64_t k = lo; k <= hi; ++k)
            chunk.add(term(k));
        total.add(chunk.value());
    }
    return total.value();
}

// --- the sums of interest ----------------------------------------------

// (1/n) sum_{k=1}^n f(k/n); the classical left-endpoint-free Riemann sum.
inline double riemann_sum(const expr::ast& f, std::uint64_t n,
                          const expr::params& fp = {}) {
    if (n == 0)
        throw std::invalid_argument("riemann_sum: n must be positive");
    const double nn = static_cast<double>(n);
    const double s = chunked_sum(n, [&](std::uint64_t k) {
        return expr::evaluate(f, static_cast<double>(k) / nn, fp);
    });
    return s / nn;
}

// I_n(f) = n^{-alpha} sum_{k=1}^n f(k/n) a_k.
inline double weighted_sum(const expr::ast& f, const weight_spec& w,
                           const arith::sieve_table* table, std::uint64_t n,
                           const expr::params& fp = {}) {
    if (n == 0)
        throw std::invalid_argument("weighted_sum: n must be positive");
    detail::check_table(w, table, n);
    const double nn = static_cast<double>(n);
    const double s = chunked_sum(n, [&](std::uint64_t k) {
        const double fx = expr::evaluate(f, static_cast<double>(k) / nn, fp);
        return fx * detail::weight_at(w, table, k);
    });
    return std::pow(nn, -w.alpha) * s;
}

// M_p(n) = n^{-(alpha+p)} sum_{k=1}^n k^p a_k. For p = 0 this takes the
// exact same summation path as weighted_sum with f = 1.
inline double moment_sum(unsigned p, const weight_spec& w,
                         const arith::sieve_table* table, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("moment_sum: n must be positive");
    detail::check_table(w, table, n);
    const double s = chunked_sum(n, [&](std::uint64_t k) {
        double kp = 1.0;
        for (unsigned i = 0; i < p; ++i)
            kp *= static_cast<double>(k);
        return kp * detail::weight_at(w, table, k);
    });
    return std::pow(static_cast<double>(n), -(w.alpha + p)) * s;
}

// --- damped-moment harness ----------------------------------------------

struct damping_result {
    std::vector<double> values; // n^{-(beta+1)} sum k^beta lambda_k, per n
    // set when the supplied sequence does not appear to vanish (the tail
    // sup does not shrink); the hypothesis of the Cesaro argument fails
    bool non_vanishing_note = false;
};

// Probes n^{-(beta+1)} sum_{k<=n} k^beta lambda_k over the given n values.
// For vanishing lambda the values tend to 0.
inline damping_result
cesaro_damping_check(const std::function<double(std::uint64_t)>& lambda, double beta,
                     const std::vector<std::uint64_t>& n_values) {
    if (beta <= 0.0)
        throw std::invalid_argument("cesaro_damping_check: beta must be positive");
    damping_result out;
    std::uint64_t n_top = 0;
    for (std::uint64_t n : n_values) {
        if (n == 0)
            throw std::invalid_argument("cesaro_damping_check: n must be positive");
        n_top = std::max(n_top, n);
        const double s = chunked_sum(n, [&](std::uint64_t k) {
            return std::pow(static_cast<double>(k), beta) * lambda(k);
        });
        out.values.push_back(s * std::pow(static_cast<double>(n), -(beta + 1.0)));
    }

    // crude vanishing probe: sup |lambda| over the top half vs the bottom
    if (n_top >= 4) {
        double head = 0.0, tail = 0.0;
        for (std::uint64_t k = 1; k <= n_top / 2; ++k)
            head = std::max(head, std::fabs(lambda(k)));
        for (std::uint64_t k = n_top / 2 + 1; k <= n_top; ++k)
            tail = std::max(tail, std::fabs(lambda(k)));
        if (tail >= head && tail > 0.0)
            out.non_vanishing_note = true;
    }
    return out;
}

} // namespace cesaro::sums

#endif // CESARO_SUMS_HPP
