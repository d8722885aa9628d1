#include "factorlab/rational.hpp"

#include <ostream>

namespace factorlab {

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("Rational: empty string");
    if (s.front() == '+')
        s.erase(s.begin());
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("Rational: malformed '" + std::string(text) + "'");
    mpz_class d(den);
    if (d == 0)
        throw std::domain_error("Rational: zero denominator");
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const
{
    return v_.get_str();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const
{
    return Rational(1) / *this;
}

Rational Rational::pow(unsigned e) const
{
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), e);
    return Rational(r);
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

mpz_class gcd(const mpz_class& a, const mpz_class& b)
{
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

} // namespace factorlab
