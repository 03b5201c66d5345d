#pragma once

#include <cstdint>
#include <string>

namespace gaincons {

/// Exact fraction num/den in lowest terms with den > 0.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    /// "p/q", or "p" when q == 1.
    std::string to_string() const;
    /// Parses "p/q" or "p"; throws std::invalid_argument.
    static Rational parse(const std::string& text);

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace gaincons
