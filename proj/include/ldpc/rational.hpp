#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <stdexcept>

#include "ldpc/errors.hpp"

namespace ldpc {

// Exact rational, used for code rates. Rates are kept exact because the
// minimum-repair-bandwidth feasibility test is an integrality condition on
// dv_min/(1-R); floating point would misclassify boundary cases.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0) throw InvalidRate("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    // "p/q" or a bare integer; anything else (including decimals) is rejected
    static Rational parse(const std::string& text) {
        auto is_int = [](const std::string& s) {
            if (s.empty()) return false;
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        };
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                if (!is_int(text)) throw InvalidRate("rate must be an exact fraction p/q: '" + text + "'");
                return Rational(std::stoll(text), 1);
            }
            std::string p = text.substr(0, slash);
            std::string q = text.substr(slash + 1);
            if (!is_int(p) || !is_int(q))
                throw InvalidRate("rate must be an exact fraction p/q: '" + text + "'");
            return Rational(std::stoll(p), std::stoll(q));
        } catch (const std::out_of_range&) {
            throw InvalidRate("rate out of range: '" + text + "'");
        }
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    long long num_;
    long long den_;
};

} // namespace ldpc
