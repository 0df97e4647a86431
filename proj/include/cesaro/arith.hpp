#ifndef CESARO_ARITH_HPP
#define CESARO_ARITH_HPP

#include <cstdint>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "cesaro/errors.hpp"

namespace cesaro::arith {

enum class func_id : std::uint8_t { phi = 0, sigma = 1 };

inline const char* func_name(func_id f) {
    return f == func_id::phi ? "phi" : "sigma";
}

// Hard ceiling for sieve size. A table of this size needs ~800 MB for the
// values alone; callers wanting more should rethink.
inline constexpr std::uint64_t sieve_ceiling = 100'000'000;

// Values of phi or sigma on 1..n_max. Immutable after construction,
// safe to share across threads.
class sieve_table {
public:
    sieve_table(func_id f, std::uint64_t n_max, std::vector<std::uint64_t> values)
        : func_(f), n_max_(n_max), values_(std::move(values)) {}

    func_id func() const noexcept { return func_; }
    std::uint64_t n_max() const noexcept { return n_max_; }

    // 1-based, matching the arithmetic function's domain.
    std::uint64_t operator[](std::uint64_t k) const { return values_[k - 1]; }

    const std::vector<std::uint64_t>& values() const noexcept { return values_; }

    bool operator==(const sieve_table& o) const = default;

private:
    func_id func_;
    std::uint64_t n_max_;
    std::vector<std::uint64_t> values_;
};

// Linear sieve over 1..n_max. Each integer is struck once by its smallest
// prime factor; phi and sigma follow from the usual spf recurrences.
// sigma(i*p) with p | i needs the full power of p dividing i*p, tracked in
// spf_pow.
inline sieve_table sieve(func_id f, std::uint64_t n_max) {
    if (n_max == 0)
        throw std::invalid_argument("sieve: n_max must be positive");
    if (n_max > sieve_ceiling)
        throw std::invalid_argument("sieve: n_max exceeds ceiling " +
                                    std::to_string(sieve_ceiling));

    const std::uint64_t n = n_max;
    std::vector<std::uint64_t> val(n + 1, 0);
    std::vector<std::uint32_t> spf_pow;
    std::vector<std::uint32_t> primes;
    const bool need_pow = (f == func_id::sigma);
    if (need_pow)
        spf_pow.assign(n + 1, 0);
    std::vector<bool> composite(n + 1, false);

    val[1] = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            val[i] = (f == func_id::phi) ? i - 1 : i + 1;
            if (need_pow)
                spf_pow[i] = static_cast<std::uint32_t>(i);
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t m = i * p;
            if (m > n)
                break;
            composite[m] = true;
            if (i % p == 0) {
                if (f == func_id::phi) {
                    val[m] = val[i] * p;
                } else {
                    const std::uint64_t pw = std::uint64_t(spf_pow[i]) * p;
                    spf_pow[m] = static_cast<std::uint32_t>(pw);
                    if (pw == m)
                        val[m] = val[i] * p + 1; // sigma(p^{e+1})
                    else
                        val[m] = val[m / pw] * val[pw];
                }
                break;
            }
            val[m] = (f == func_id::phi) ? val[i] * (p - 1) : val[i] * (p + 1);
            if (need_pow)
                spf_pow[m] = p;
        }
    }

    val.erase(val.begin()); // drop the unused index 0
    return sieve_table(f, n_max, std::move(val));
}

// O(k) reference computation, independent of the sieve. Intended for
// cross-checking; keep k <= 1e6 or so.
inline std::uint64_t brute_force_value(func_id f, std::uint64_t k) {
    if (k == 0)
        throw std::invalid_argument("brute_force_value: k must be positive");
    if (f == func_id::phi) {
        std::uint64_t count = 0;
        for (std::uint64_t j = 1; j <= k; ++j)
            if (std::gcd(j, k) == 1)
                ++count;
        return count;
    }
    std::uint64_t sum = 0;
    for (std::uint64_t d = 1; d <= k; ++d)
        if (k % d == 0)
            sum += d;
    return sum;
}

// --- cache file format -------------------------------------------------
//
//   bytes 0..7   magic "CRSIEVE1"
//   byte  8      func_id (0 = phi, 1 = sigma)
//   bytes 9..15  reserved, must be zero
//   bytes 16..23 n_max, u64 little-endian
//   then n_max u64 little-endian values
//   then the FNV-1a 64-bit checksum of everything before it, u64 LE

namespace detail {

inline constexpr char sieve_magic[8] = {'C', 'R', 'S', 'I', 'E', 'V', 'E', '1'};

class fnv1a64 {
public:
    void update(const void* data, std::size_t len) {
        auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ull;
        }
    }
    std::uint64_t digest() const noexcept { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

inline void put_u64le(unsigned char out[8], std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out[i] = static_cast<unsigned char>(v >> (8 * i));
}

inline std::uint64_t get_u64le(const unsigned char in[8]) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= std::uint64_t(in[i]) << (8 * i);
    return v;
}

} // namespace detail

inline void save_table(const sieve_table& t, std::ostream& out) {
    detail::fnv1a64 sum;
    auto emit = [&](const void* p, std::size_t len) {
        sum.update(p, len);
        out.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
    };
    emit(detail::sieve_magic, 8);
    unsigned char head[8] = {static_cast<unsigned char>(t.func()), 0, 0, 0, 0, 0, 0, 0};
    emit(head, 8);
    unsigned char buf[8];
    detail::put_u64le(buf, t.n_max());
    emit(buf, 8);
    for (std::uint64_t v : t.values()) {
        detail::put_u64le(buf, v);
        emit(buf, 8);
    }
    detail::put_u64le(buf, sum.digest());
    out.write(reinterpret_cast<const char*>(buf), 8);
    if (!out)
        throw format_error("save_table: write failed", "stream");
}

inline sieve_table load_table(std::istream& in) {
    detail::fnv1a64 sum;
    auto take = [&](void* p, std::size_t len, const char* field) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
        if (static_cast<std::size_t>(in.gcount()) != len)
            throw format_error(std::string("load_table: truncated reading ") + field, field);
        sum.update(p, len);
    };

    char magic[8];
    take(magic, 8, "magic");
    if (std::memcmp(magic, detail::sieve_magic, 8) != 0)
        throw format_error("load_table: bad magic (unknown format or version)", "magic");

    unsigned char head[8];
    take(head, 8, "func_id");
    if (head[0] > 1)
        throw format_error("load_table: unknown func_id " + std::to_string(head[0]), "func_id");
    for (int i = 1; i < 8; ++i)
        if (head[i] != 0)
            throw format_error("load_table: reserved bytes not zero", "reserved");
    const func_id f = static_cast<func_id>(head[0]);

    unsigned char buf[8];
    take(buf, 8, "n_max");
    const std::uint64_t n_max = detail::get_u64le(buf);
    if (n_max == 0 || n_max > sieve_ceiling)
        throw format_error("load_table: n_max out of range", "n_max");

    std::vector<std::uint64_t> values;
    values.reserve(n_max);
    for (std::uint64_t k = 0; k < n_max; ++k) {
        take(buf, 8, "values");
        values.push_back(detail::get_u64le(buf));
    }

    const std::uint64_t expect = sum.digest();
    in.read(reinterpret_cast<char*>(buf), 8);
    if (in.gcount() != 8)
        throw format_error("load_table: truncated reading checksum", "checksum");
    if (detail::get_u64le(buf) != expect)
        throw format_error("load_table: checksum mismatch", "checksum");

    return sieve_table(f, n_max, std::move(values));
}

} // namespace cesaro::arith

#endif // CESARO_ARITH_HPP
