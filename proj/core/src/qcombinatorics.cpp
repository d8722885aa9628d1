#include "factorlab/scalar.hpp"

#include <stdexcept>

namespace factorlab {

QPoly q_integer_poly(unsigned k)
{
    std::vector<Rational> c(k, Rational(1));
    return QPoly(std::move(c));
}

QPoly q_pochhammer_poly(int i)
{
    if (i < -1)
        throw std::invalid_argument("q_pochhammer: index must be >= -1, got " + std::to_string(i));
    QPoly r(Rational(1));
    for (int j = 1; j <= i; ++j)
        r = r * (QPoly(Rational(1)) - QPoly::monomial(Rational(1), unsigned(j)));
    return r;
}

QPoly q_binomial_poly(int k, int i)
{
    if (i < 0 || k < 0 || i > k)
        throw std::invalid_argument("q_binomial: need 0 <= i <= k, got k=" + std::to_string(k) +
                                    ", i=" + std::to_string(i));
    const QPoly num = q_pochhammer_poly(k);
    const QPoly den = q_pochhammer_poly(i) * q_pochhammer_poly(k - i);
    auto [quot, rem] = QPoly::divmod(num, den);
    if (!rem.is_zero())
        throw std::logic_error("q_binomial: non-polynomial quotient");
    return quot;
}

QRational q_integer(unsigned k)
{
    return QRational(q_integer_poly(k));
}

QRational q_pochhammer(int i)
{
    return QRational(q_pochhammer_poly(i));
}

QRational q_binomial(int k, int i)
{
    return QRational(q_binomial_poly(k, i));
}

Rational binomial(unsigned n, unsigned k)
{
    if (k > n)
        return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(mpq_class(r));
}

Rational factorial(unsigned n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return Rational(mpq_class(r));
}

} // namespace factorlab
