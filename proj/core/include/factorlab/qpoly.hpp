#pragma once

// Dense univariate polynomials in the formal parameter q over the rationals.

#include "factorlab/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace factorlab {

class QPoly {
public:
    QPoly() = default;
    QPoly(int c) : QPoly(Rational(c)) {}
    QPoly(const Rational& c);
    /// Coefficient of q^i at index i; trailing zeros are trimmed.
    explicit QPoly(std::vector<Rational> coeffs);

    static QPoly monomial(const Rational& c, unsigned exponent);
    static QPoly q() { return monomial(Rational(1), 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(unsigned i) const;
    const Rational& leading() const { return c_.back(); }
    const std::vector<Rational>& coefficients() const { return c_; }

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const Rational& s);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(QPoly a, const Rational& s) { return a *= s; }
    QPoly operator-() const;
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    QPoly pow(unsigned e) const;
    QPoly monic() const;

    /// Euclidean division; throws on a zero divisor.
    static std::pair<QPoly, QPoly> divmod(const QPoly& num, const QPoly& den);
    /// Monic gcd; gcd(0, 0) = 0.
    static QPoly gcd(QPoly a, QPoly b);

    Rational evaluate(const Rational& x) const;
    /// Horner evaluation in any ring constructible from a Rational.
    template <class S>
    S evaluate_in(const S& x) const
    {
        S acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + S(*it);
        return acc;
    }

    /// Human-readable form in the variable q, e.g. "1 + 2*q - 1/3*q^2".
    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

} // namespace factorlab
