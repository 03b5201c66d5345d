#pragma once

// Cyclic gain group of m-th roots of unity, stored as integer exponents.
// The exponent q stands for alpha_q = exp(2*pi*q*j/m).

#include <complex>
#include <stdexcept>

namespace gaincons {

class GroupOrder {
public:
    explicit GroupOrder(int m) : m_(m) {
        if (m < 2) throw std::invalid_argument("group order must be >= 2");
    }
    int value() const { return m_; }
    friend bool operator==(GroupOrder, GroupOrder) = default;

private:
    int m_;
};

class GainExponent {
public:
    GainExponent(int e, GroupOrder order) : e_(e), order_(order) {
        if (e < 0 || e >= order.value()) {
            throw std::invalid_argument("gain exponent out of range [0, m)");
        }
    }

    /// Reduces any integer into [0, m).
    static GainExponent reduce(long long e, GroupOrder order) {
        const long long m = order.value();
        return GainExponent(static_cast<int>(((e % m) + m) % m), order);
    }
    static GainExponent identity(GroupOrder order) { return GainExponent(0, order); }

    int value() const { return e_; }
    GroupOrder order() const { return order_; }
    bool is_identity() const { return e_ == 0; }

    friend bool operator==(const GainExponent&, const GainExponent&) = default;

private:
    int e_;
    GroupOrder order_;
};

/// Group product; throws std::invalid_argument on mismatched orders.
GainExponent exp_mul(GainExponent a, GainExponent b);
GainExponent exp_inv(GainExponent a);

/// cos(2*pi*e/m) + j*sin(2*pi*e/m). Quarter turns are returned exactly.
std::complex<double> to_complex(GainExponent a);
std::complex<double> root_of_unity(int e, int m);

}  // namespace gaincons
