#ifndef CESARO_ERRORS_HPP
#define CESARO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cesaro {

// Lexical or syntactic failure while parsing an expression.
// `offset` is the byte offset into the source text.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, std::size_t offset)
        : std::runtime_error(std::move(msg)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Domain failure while evaluating an expression (log of a non-positive
// value, division by zero, unbound parameter). Carries the point x at
// which evaluation was attempted.
class eval_error : public std::runtime_error {
public:
    eval_error(std::string msg, double x)
        : std::runtime_error(std::move(msg)), x_(x) {}
    double at() const noexcept { return x_; }

private:
    double x_;
};

// Malformed table file or catalog record. `field` names what failed.
class format_error : public std::runtime_error {
public:
    format_error(std::string msg, std::string field)
        : std::runtime_error(std::move(msg)), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Quadrature could not meet the requested tolerance. Carries the best
// estimate obtained and its error estimate.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(std::string msg, double best, double err_est)
        : std::runtime_error(std::move(msg)), best_(best), err_(err_est) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return err_; }

private:
    double best_;
    double err_;
};

} // namespace cesaro

#endif // CESARO_ERRORS_HPP
