#include "gaincons/group.hpp"

#include <numbers>

namespace gaincons {

GainExponent exp_mul(GainExponent a, GainExponent b) {
    if (!(a.order() == b.order())) {
        throw std::invalid_argument("exp_mul: mismatched group orders");
    }
    return GainExponent((a.value() + b.value()) % a.order().value(), a.order());
}

GainExponent exp_inv(GainExponent a) {
    const int m = a.order().value();
    return GainExponent((m - a.value()) % m, a.order());
}

std::complex<double> root_of_unity(int e, int m) {
    e = ((e % m) + m) % m;
    if ((4 * e) % m == 0) {
        switch ((4 * e) / m) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            case 3: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * e / m;
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> to_complex(GainExponent a) {
    return root_of_unity(a.value(), a.order().value());
}

}  // namespace gaincons
