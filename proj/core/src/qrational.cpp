#include "factorlab/qrational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace factorlab {

QRational::QRational(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero())
        throw std::domain_error("QRational: zero denominator");
    normalize();
}

void QRational::normalize()
{
    if (num_.is_zero()) {
        den_ = QPoly(Rational(1));
        return;
    }
    if (den_.is_one())
        return;
    if (den_.is_constant()) {
        num_ *= den_.leading().inverse();
        den_ = QPoly(Rational(1));
        return;
    }
    QPoly g = QPoly::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = QPoly::divmod(num_, g).first;
        den_ = QPoly::divmod(den_, g).first;
    }
    const Rational lead = den_.leading();
    if (!lead.is_one()) {
        const Rational inv = lead.inverse();
        num_ *= inv;
        den_ *= inv;
    }
    if (den_.is_one())
        den_ = QPoly(Rational(1));
}

Rational QRational::constant() const
{
    if (!is_constant())
        throw std::domain_error("QRational: value depends on q: " + str());
    return num_.coeff(0);
}

QRational& QRational::operator+=(const QRational& o)
{
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

QRational& QRational::operator-=(const QRational& o)
{
    return *this += -o;
}

QRational& QRational::operator*=(const QRational& o)
{
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

QRational& QRational::operator/=(const QRational& o)
{
    if (o.is_zero())
        throw std::domain_error("QRational: division by zero");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

QRational QRational::operator-() const
{
    QRational r = *this;
    r.num_ = -r.num_;
    return r;
}

QRational QRational::pow(unsigned e) const
{
    QRational r;
    r.num_ = num_.pow(e);
    r.den_ = den_.pow(e);
    return r;
}

Rational QRational::evaluate(const Rational& value) const
{
    Rational d = den_.evaluate(value);
    if (d.is_zero())
        throw std::domain_error("QRational: denominator vanishes at q = " + value.str());
    return num_.evaluate(value) / d;
}

std::string QRational::str() const
{
    if (den_.is_one())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const QRational& r)
{
    return os << r.str();
}

namespace {

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := ('-'|'+') unary | power
// power  := atom ('^' integer)?
// atom   := integer | 'q' | '(' expr ')'
class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    QRational parse()
    {
        QRational v = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return v;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw std::invalid_argument("cannot parse scalar '" + std::string(s_) + "': " + why);
    }
    std::string digits()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return std::string(s_.substr(start, pos_ - start));
    }

    QRational expr()
    {
        QRational v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    QRational term()
    {
        QRational v = unary();
        for (;;) {
            if (eat('*'))
                v *= unary();
            else if (eat('/'))
                v /= unary();
            else
                return v;
        }
    }
    QRational unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }
    QRational power()
    {
        QRational base = atom();
        if (eat('^')) {
            const std::string e = digits();
            if (e.size() > 6)
                fail("exponent too large");
            return base.pow(static_cast<unsigned>(std::stoul(e)));
        }
        return base;
    }
    QRational atom()
    {
        if (eat('(')) {
            QRational v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return v;
        }
        if (eat('q'))
            return QRational::q();
        return QRational(Rational(mpq_class(mpz_class(digits()))));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

QRational QRational::parse(std::string_view text)
{
    return ExprParser(text).parse();
}

} // namespace factorlab
