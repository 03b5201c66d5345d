#include "gaincons/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace gaincons {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const long long v = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return Rational(v);
        }
        const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        std::size_t used_b = 0;
        const long long p = std::stoll(a, &used), q = std::stoll(b, &used_b);
        if (used != a.size() || used_b != b.size()) throw std::invalid_argument(text);
        return Rational(p, q);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a fraction: '" + text + "'");
    }
}

Rational operator+(Rational a, Rational b) {
    const std::int64_t l = std::lcm(a.den_, b.den_);
    return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

Rational operator*(Rational a, Rational b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

}  // namespace gaincons
