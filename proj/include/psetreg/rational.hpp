#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "psetreg/errors.hpp"

namespace pset {

/// Arbitrary-precision signed integer. Counting results such as (2^r)^(2^r)
/// overflow machine words already at r = 4, so everything countable uses this.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline BigInt factorial(unsigned n) {
    BigInt acc = 1;
    for (unsigned k = 2; k <= n; ++k) acc *= k;
    return acc;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) throw DomainError("binomial: k out of range");
    if (k > n - k) k = n - k;
    BigInt acc = 1;
    for (unsigned j = 1; j <= k; ++j) {
        acc *= n - k + j;
        acc /= j;
    }
    return acc;
}

/// Exact rational number. Always in lowest terms with positive denominator;
/// zero is 0/1. Backed by boost::multiprecision::cpp_rational, which maintains
/// exactly that canonical form.
class Rat {
  public:
    Rat() = default;
    Rat(std::int64_t n) : value_(n) {} // NOLINT(google-explicit-constructor)
    Rat(std::int64_t n, std::int64_t d) : value_(n, d) {
        if (d == 0) throw DomainError("Rat: zero denominator");
    }
    Rat(BigInt n, BigInt d) : value_(std::move(n), std::move(d)) {
        if (boost::multiprecision::denominator(value_).is_zero())
            throw DomainError("Rat: zero denominator");
    }

    BigInt num() const { return boost::multiprecision::numerator(value_); }
    BigInt den() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_.is_zero(); }
    bool is_negative() const { return value_ < 0; }
    bool is_integer() const { return den() == 1; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.value_ + b.value_); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.value_ - b.value_); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.value_ * b.value_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw DomainError("Rat: division by zero");
        return Rat(a.value_ / b.value_);
    }
    Rat operator-() const { return Rat(-value_); }

    Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
    Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
    Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ == b.value_) return std::strong_ordering::equal;
        return std::strong_ordering::greater;
    }

    double as_double() const { return value_.convert_to<double>(); }

    /// Renders as "n" for integers, "n/d" otherwise.
    std::string str() const {
        std::string s = num().str();
        if (!is_integer()) s += "/" + den().str();
        return s;
    }

    /// Parses "n" or "n/d" (optionally signed).
    static Rat parse(std::string_view text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) return Rat(BigInt(std::string(text)), BigInt(1));
            BigInt n{std::string(text.substr(0, slash))};
            BigInt d{std::string(text.substr(slash + 1))};
            return Rat(std::move(n), std::move(d));
        } catch (const std::runtime_error&) {
            throw DomainError("Rat: cannot parse '" + std::string(text) + "'");
        }
    }

  private:
    explicit Rat(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
    boost::multiprecision::cpp_rational value_;
};

} // namespace pset
