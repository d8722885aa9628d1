#include "factorlab/qpoly.hpp"

#include <stdexcept>

namespace factorlab {

namespace {
const Rational kZero{};
}

QPoly::QPoly(const Rational& c)
{
    if (!c.is_zero())
        c_.push_back(c);
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    trim();
}

QPoly QPoly::monomial(const Rational& c, unsigned exponent)
{
    if (c.is_zero())
        return {};
    std::vector<Rational> v(exponent + 1);
    v[exponent] = c;
    return QPoly(std::move(v));
}

void QPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

const Rational& QPoly::coeff(unsigned i) const
{
    return i < c_.size() ? c_[i] : kZero;
}

QPoly& QPoly::operator+=(const QPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator*=(const Rational& s)
{
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_)
        c *= s;
    return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(r));
}

QPoly QPoly::operator-() const
{
    QPoly r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

QPoly QPoly::pow(unsigned e) const
{
    QPoly result(Rational(1));
    QPoly base = *this;
    while (e) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e)
            base = base * base;
    }
    return result;
}

QPoly QPoly::monic() const
{
    if (is_zero())
        return {};
    return *this * leading().inverse();
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& num, const QPoly& den)
{
    if (den.is_zero())
        throw std::domain_error("QPoly: division by zero polynomial");
    QPoly rem = num;
    if (rem.degree() < den.degree())
        return {QPoly{}, rem};
    std::vector<Rational> quot(rem.degree() - den.degree() + 1);
    const Rational lead_inv = den.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
        const unsigned shift = rem.degree() - den.degree();
        const Rational factor = rem.leading() * lead_inv;
        quot[shift] = factor;
        for (std::size_t j = 0; j < den.c_.size(); ++j)
            rem.c_[shift + j] -= factor * den.c_[j];
        rem.trim();
    }
    return {QPoly(std::move(quot)), rem};
}

QPoly QPoly::gcd(QPoly a, QPoly b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Rational QPoly::evaluate(const Rational& x) const
{
    return evaluate_in<Rational>(x);
}

std::string QPoly::str() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Rational& c = c_[i];
        if (c.is_zero())
            continue;
        Rational mag = c.sign() < 0 ? -c : c;
        if (out.empty())
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        if (i == 0) {
            out += mag.str();
            continue;
        }
        if (!mag.is_one())
            out += mag.str() + "*";
        out += "q";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

} // namespace factorlab
