#ifndef CESARO_REPORT_HPP
#define CESARO_REPORT_HPP

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cesaro/quad.hpp"
#include "cesaro/verify.hpp"

namespace cesaro::report {

enum class output_format { json, csv, text };

inline output_format parse_format(const std::string& s) {
    if (s == "json")
        return output_format::json;
    if (s == "csv")
        return output_format::csv;
    if (s == "text")
        return output_format::text;
    throw std::invalid_argument("unknown output format '" + s + "'");
}

namespace detail {

inline std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace detail

// Single weighted-sum (or moment / riemann) evaluation.
struct value_report {
    std::uint64_t n = 0;
    double value = 0.0;
    double target = 0.0;
    double abs_error = 0.0;
    bool has_target = false;
};

inline std::string emit(const value_report& r, output_format fmt) {
    switch (fmt) {
    case output_format::json: {
        nlohmann::ordered_json j;
        j["n"] = r.n;
        j["value"] = r.value;
        if (r.has_target) {
            j["target"] = r.target;
            j["abs_error"] = r.abs_error;
        }
        return j.dump() + "\n";
    }
    case output_format::csv: {
        std::string out = r.has_target ? "n,value,target,abs_error\n" : "n,value\n";
        out += std::to_string(r.n) + "," + detail::num(r.value);
        if (r.has_target)
            out += "," + detail::num(r.target) + "," + detail::num(r.abs_error);
        return out + "\n";
    }
    case output_format::text: {
        std::ostringstream os;
        os << "n         = " << r.n << "\n"
           << "value     = " << detail::num(r.value) << "\n";
        if (r.has_target)
            os << "target    = " << detail::num(r.target) << "\n"
               << "abs_error = " << detail::num(r.abs_error) << "\n";
        return os.str();
    }
    }
    return {};
}

inline std::string emit(const quad::quad_result& r, output_format fmt) {
    switch (fmt) {
    case output_format::json: {
        nlohmann::ordered_json j;
        j["value"] = r.value;
        j["error_estimate"] = r.error_estimate;
        j["evaluations"] = r.evaluations;
        return j.dump() + "\n";
    }
    case output_format::csv:
        return "value,error_estimate,evaluations\n" + detail::num(r.value) + "," +
               detail::num(r.error_estimate) + "," + std::to_string(r.evaluations) +
               "\n";
    case output_format::text: {
        std::ostringstream os;
        os << "value          = " << detail::num(r.value) << "\n"
           << "error_estimate = " << detail::num(r.error_estimate) << "\n"
           << "evaluations    = " << r.evaluations << "\n";
        return os.str();
    }
    }
    return {};
}

inline std::string emit(const verify::convergence_report& r, output_format fmt) {
    switch (fmt) {
    case output_format::json: {
        nlohmann::ordered_json j;
        j["entry_id"] = r.entry_id;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : r.rows)
            j["rows"].push_back(
                {{"n", row.n}, {"value", row.value}, {"abs_error", row.abs_error}});
        j["extrapolated_limit"] = r.extrapolated_limit;
        j["target"] = r.target;
        j["tolerance"] = r.tolerance;
        j["verdict"] = r.pass ? "pass" : "fail";
        return j.dump() + "\n";
    }
    case output_format::csv: {
        std::string out = "entry_id,n,value,abs_error\n";
        for (const auto& row : r.rows)
            out += r.entry_id + "," + std::to_string(row.n) + "," +
                   detail::num(row.value) + "," + detail::num(row.abs_error) + "\n";
        return out;
    }
    case output_format::text: {
        std::ostringstream os;
        os << "entry " << r.entry_id << "  target " << detail::num(r.target)
           << "  tol " << r.tolerance << "\n";
        os << std::setw(12) << "n" << std::setw(24) << "value" << std::setw(16)
           << "abs_error" << "\n";
        for (const auto& row : r.rows)
            os << std::setw(12) << row.n << std::setw(24) << detail::num(row.value)
               << std::setw(16) << std::setprecision(3) << std::scientific
               << row.abs_error << std::defaultfloat << "\n";
        os << "extrapolated = " << detail::num(r.extrapolated_limit) << "  ("
           << (r.pass ? "pass" : "FAIL") << ")\n";
        return os.str();
    }
    }
    return {};
}

inline std::string emit(const std::vector<verify::moment_row>& rows,
                        output_format fmt) {
    switch (fmt) {
    case output_format::json: {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& row : rows)
            j.push_back({{"p", row.p},
                         {"value", row.value},
                         {"target", row.target},
                         {"abs_error", std::fabs(row.value - row.target)}});
        return j.dump() + "\n";
    }
    case output_format::csv: {
        std::string out = "p,value,target,abs_error\n";
        for (const auto& row : rows)
            out += std::to_string(row.p) + "," + detail::num(row.value) + "," +
                   detail::num(row.target) + "," +
                   detail::num(std::fabs(row.value - row.target)) + "\n";
        return out;
    }
    case output_format::text: {
        std::ostringstream os;
        os << std::setw(4) << "p" << std::setw(24) << "value" << std::setw(24)
           << "target" << "\n";
        for (const auto& row : rows)
            os << std::setw(4) << row.p << std::setw(24) << detail::num(row.value)
               << std::setw(24) << detail::num(row.target) << "\n";
        return os.str();
    }
    }
    return {};
}

inline std::string emit(const verify::asymptotic_report& r, output_format fmt) {
    switch (fmt) {
    case output_format::json: {
        nlohmann::ordered_json j;
        j["alpha"] = r.alpha;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : r.rows)
            j["rows"].push_back({{"n", row.n},
                                 {"lhs", row.lhs},
                                 {"rhs", row.rhs},
                                 {"residual", row.residual}});
        return j.dump() + "\n";
    }
    case output_format::csv: {
        std::string out = "n,lhs,rhs,residual\n";
        for (const auto& row : r.rows)
            out += std::to_string(row.n) + "," + detail::num(row.lhs) + "," +
                   detail::num(row.rhs) + "," + detail::num(row.residual) + "\n";
        return out;
    }
    case output_format::text: {
        std::ostringstream os;
        os << "alpha = " << r.alpha << "\n";
        os << std::setw(12) << "n" << std::setw(24) << "lhs" << std::setw(24) << "rhs"
           << std::setw(16) << "residual" << "\n";
        for (const auto& row : r.rows)
            os << std::setw(12) << row.n << std::setw(24) << detail::num(row.lhs)
               << std::setw(24) << detail::num(row.rhs) << std::setw(16)
               << std::setprecision(3) << std::scientific << row.residual
               << std::defaultfloat << "\n";
        return os.str();
    }
    }
    return {};
}

} // namespace cesaro::report

#endif // CESARO_REPORT_HPP
