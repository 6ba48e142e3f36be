#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "gramops/errors.hpp"

namespace gramops {

/// Exact rational with 64-bit numerator/denominator, always normalized with
/// den > 0. Throws ValidationError on overflow rather than wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    /// Parses "p", "p/q", or "-p/q".
    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator+(const Rational& o) const {
        return Rational(checked(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_),
                        checked(static_cast<__int128>(den_) * o.den_));
    }
    Rational operator*(const Rational& o) const {
        return Rational(checked(static_cast<__int128>(num_) * o.num_),
                        checked(static_cast<__int128>(den_) * o.den_));
    }
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
    }
    bool operator>(const Rational& o) const { return o < *this; }

private:
    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw ValidationError("rational overflow");
        return static_cast<std::int64_t>(v);
    }

    void normalize() {
        if (den_ == 0) throw ValidationError("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            std::int64_t v = std::stoll(text, &used);
            if (used != text.size()) throw ParseError("bad rational: '" + text + "'");
            return Rational(v);
        }
        std::int64_t p = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw ParseError("bad rational: '" + text + "'");
        std::int64_t q = std::stoll(text.substr(slash + 1), &used);
        if (used != text.size() - slash - 1) throw ParseError("bad rational: '" + text + "'");
        return Rational(p, q);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ParseError("rational out of range: '" + text + "'");
    }
}

}  // namespace gramops
