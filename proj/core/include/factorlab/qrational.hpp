#pragma once

/**
 * @file qrational.hpp
 * @brief The field Q(q) of rational functions in one formal parameter q.
 *
 * Stored as a reduced fraction num/den with den monic. Values that are
 * polynomials (den == 1) take a fast path with no gcd work; every
 * q-combinatorial quantity in the corpus is such a polynomial.
 */

#include "factorlab/qpoly.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace factorlab {

class QRational {
public:
    QRational() = default;
    QRational(int c) : num_(Rational(c)) {}
    QRational(const Rational& c) : num_(c) {}
    QRational(QPoly p) : num_(std::move(p)) {}
    QRational(QPoly num, QPoly den);

    static QRational q() { return QRational(QPoly::q()); }

    /// Parses an arithmetic expression in q with rational literals, e.g.
    /// "(1 - q^3)/(1 - q)", "2*q^2 + 1/2", "(1+q)^2".
    static QRational parse(std::string_view text);

    const QPoly& numerator() const { return num_; }
    const QPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    /// Constant value; throws unless is_constant().
    Rational constant() const;

    QRational& operator+=(const QRational& o);
    QRational& operator-=(const QRational& o);
    QRational& operator*=(const QRational& o);
    QRational& operator/=(const QRational& o);
    friend QRational operator+(QRational a, const QRational& b) { return a += b; }
    friend QRational operator-(QRational a, const QRational& b) { return a -= b; }
    friend QRational operator*(QRational a, const QRational& b) { return a *= b; }
    friend QRational operator/(QRational a, const QRational& b) { return a /= b; }
    QRational operator-() const;
    friend bool operator==(const QRational& a, const QRational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    QRational pow(unsigned e) const;
    /// Specialisation q -> value; throws if the denominator vanishes there.
    Rational evaluate(const Rational& value) const;

    /// "poly" or "(poly)/(poly)" in the variable q.
    std::string str() const;

private:
    void normalize();
    QPoly num_;
    QPoly den_{Rational(1)};
};

std::ostream& operator<<(std::ostream& os, const QRational& r);

} // namespace factorlab
