#pragma once

/**
 * @file corpus.hpp
 * @brief Worked deformations used as fixtures: the commutative plane with a
 * flip twist, the quantum plane, the quaternions and the Heisenberg twist.
 *
 * Every deformation term is available as a named formula so that input
 * documents can refer to it (see document.hpp).
 */

#include "factorlab/deformation.hpp"

namespace factorlab {

/// Generator rules of the corpus twists by id: "commutative-plane",
/// "quantum-plane" (q read from A's parameters), "quaternions", "heisenberg".
template <Field K>
std::vector<GeneratorRule<K>> corpus_twist_rules(const std::string& id, const BasedAlgebra<K>& A,
                                                 const BasedAlgebra<K>& B)
{
    auto need = [&](std::size_t na, std::size_t nb) {
        if (A.generators().size() != na || B.generators().size() != nb)
            throw std::invalid_argument("twist '" + id + "' needs " + std::to_string(na) + " generator(s) in A and " +
                                        std::to_string(nb) + " in B");
    };
    const auto& ga = A.generators();
    const auto& gb = B.generators();
    if (id == "commutative-plane" || id == "quantum-plane") {
        need(2, 1);
        K q(1);
        if (id == "quantum-plane") {
            const auto it = A.parameters().find("q");
            if (it == A.parameters().end())
                throw std::invalid_argument("twist 'quantum-plane' needs an algebra A with parameter q");
            q = K::parse(it->second);
        }
        return {{ga[0], gb[0], XElement<K>({gb[0], ga[0]}, K(1))}, {ga[1], gb[0], XElement<K>({gb[0], ga[1]}, q)}};
    }
    if (id == "quaternions") {
        need(1, 1);
        return {{ga[0], gb[0], XElement<K>({gb[0], ga[0]}, K(-1))}};
    }
    if (id == "heisenberg") {
        need(1, 1);
        return {{ga[0], gb[0], XElement<K>({gb[0], ga[0]}, K(1))}};
    }
    throw std::invalid_argument("unknown corpus twist '" + id + "'");
}

template <Field K>
Factorisation<K> corpus_factorisation(const std::string& id, AlgebraPtr<K> A, AlgebraPtr<K> B)
{
    auto rules = corpus_twist_rules<K>(id, *A, *B);
    auto psi = extend_from_generators<K>(A, B, std::move(rules));
    return Factorisation<K>(std::move(A), std::move(B), std::move(psi));
}

template <Field K>
Factorisation<K> commutative_plane_base()
{
    return corpus_factorisation<K>("commutative-plane", commutative_poly<K>({"a", "abar"}), commutative_poly<K>({"b"}));
}

template <Field K>
Factorisation<K> quantum_plane_base(const K& q)
{
    return corpus_factorisation<K>("quantum-plane", q_plane<K>(q), commutative_poly<K>({"b"}));
}

template <Field K>
Factorisation<K> quaternion_base()
{
    return corpus_factorisation<K>("quaternions", complex_numbers<K>("i"), complex_numbers<K>("j"));
}

template <Field K>
Factorisation<K> heisenberg_base()
{
    return corpus_factorisation<K>("heisenberg", commutative_poly<K>({"p"}), commutative_poly<K>({"x"}));
}

namespace formulas {

namespace detail {

template <Field K>
K from_rational(const Rational& r)
{
    return K(r);
}

template <Field K>
K kval(long v)
{
    return K(Rational(v));
}

/// a^k abar^l for signed exponents; nullopt when an exponent is negative.
inline std::optional<Monomial> plane(long k, long l)
{
    if (k < 0 || l < 0)
        return std::nullopt;
    return Monomial{unsigned(k), unsigned(l)};
}

template <Field K>
void add_term(XElement<K>& x, unsigned r, long k, long l, const K& c)
{
    if (auto m = plane(k, l))
        x.add({Monomial{r}, *m}, c);
}

/// Series 1 + t + (c + 1/2) t^2 to the given order.
inline TSeries<Rational> closed_form_q(const Rational& c, unsigned order)
{
    return TSeries<Rational>({Rational(1), Rational(1), c + Rational(1, 2)}, order);
}

} // namespace detail

/// Commutative plane, first order: mu(a^k abar^l, a^r abar^s) = l r a^{k+r} abar^{l+s}.
template <Field K>
Cochain<K> plane_mu1(const Factorisation<K>& F)
{
    return a_valued<K>(F, 2, [](std::span<const Monomial> as) {
        const auto& x = as[0];
        const auto& y = as[1];
        return Element<K>(x + y, detail::kval<K>(long(x[1]) * y[0]));
    });
}

/// Psi^(1)(a^k abar^l (x) b^r) = l r b^r (x) a^k abar^l - k r b^{r+1} (x) a^{k-1} abar^{l+1}.
template <Field K>
Cochain<K> plane_psi1(const Factorisation<K>&)
{
    return twist_valued<K>([](const Monomial& am, const Monomial& bm) {
        const long k = am[0], l = am[1], r = bm[0];
        XElement<K> v;
        detail::add_term<K>(v, unsigned(r), k, l, detail::kval<K>(l * r));
        detail::add_term<K>(v, unsigned(r + 1), k - 1, l + 1, detail::kval<K>(-k * r));
        return v;
    });
}

/// mu^(2)(a^k abar^l, a^m abar^n) = l m (c + l m / 2) a^{k+m} abar^{l+n}.
template <Field K>
Cochain<K> plane_mu2(const Factorisation<K>& F, const Rational& c)
{
    return a_valued<K>(F, 2, [c](std::span<const Monomial> as) {
        const Rational lm(long(as[0][1]) * long(as[1][0]));
        return Element<K>(as[0] + as[1], K(lm * (c + lm / Rational(2))));
    });
}

/// Psi^(2) with the sign of the b^{r+2} term as a parameter (+1 solves the
/// removal equation; -1 is kept for the test that tells them apart).
template <Field K>
Cochain<K> plane_psi2(const Factorisation<K>&, const Rational& c, int last_sign = 1)
{
    return twist_valued<K>([c, last_sign](const Monomial& am, const Monomial& bm) {
        const long k = am[0], l = am[1], r = bm[0];
        const Rational lr(l * r);
        XElement<K> v;
        detail::add_term<K>(v, unsigned(r), k, l, K(lr * (c + lr / Rational(2))));
        detail::add_term<K>(v, unsigned(r + 1), k - 1, l + 1,
                            K(-Rational(k * r) * (Rational(k + r - 1, 2) + lr + c)));
        detail::add_term<K>(v, unsigned(r + 2), k - 2, l + 2,
                            K(Rational(last_sign) * Rational(k * (k - 1) * r * (r + 1), 2)));
        return v;
    });
}

/// t^i coefficient of q^{l r} a^{k+r} abar^{l+s}, q = 1 + t + (c + 1/2) t^2.
template <Field K>
Cochain<K> plane_closed_mu(const Factorisation<K>& F, const Rational& c, unsigned i)
{
    const auto q = detail::closed_form_q(c, i);
    return a_valued<K>(F, 2, [q, i](std::span<const Monomial> as) {
        const auto s = q.pow(as[0][1] * as[1][0]);
        return Element<K>(as[0] + as[1], K(s.coefficient(i)));
    });
}

/// t^i coefficient of q^{lr} sum_j [k choose j]_q [r+j-1 choose j]_q (q;q)_j b^{r+j} (x) a^{k-j} abar^{l+j}.
template <Field K>
Cochain<K> plane_closed_psi(const Factorisation<K>&, const Rational& c, unsigned i)
{
    const auto q = detail::closed_form_q(c, i);
    return twist_valued<K>([q, i](const Monomial& am, const Monomial& bm) {
        const unsigned k = am[0], l = am[1], r = bm[0];
        XElement<K> v;
        for (unsigned j = 0; j <= k; ++j) {
            if (j > 0 && r == 0)
                break; // [j-1 choose j]_q = 0
            QPoly p = QPoly::monomial(Rational(1), l * r) * q_binomial_poly(int(k), int(j)) * q_pochhammer_poly(int(j));
            if (j > 0)
                p = p * q_binomial_poly(int(r + j - 1), int(j));
            const auto s = p.evaluate_in(q);
            v.add({Monomial{r + j}, Monomial{k - j, l + j}}, K(s.coefficient(i)));
        }
        return v;
    });
}

/// Quantum plane: Psi^(i)(a^k abar^l (x) b^r) = q^{lr} [k][k-1]...[k-i+1] [r+i-1 choose i]_q b^{r+i} (x) a^{k-i} abar^{l+i}.
template <Field K>
Cochain<K> quantum_plane_psi(const Factorisation<K>&, const K& q, unsigned i)
{
    return twist_valued<K>([q, i](const Monomial& am, const Monomial& bm) {
        const unsigned k = am[0], l = am[1], r = bm[0];
        XElement<K> v;
        if (i > k || r == 0)
            return v;
        QPoly p = QPoly::monomial(Rational(1), l * r) * q_binomial_poly(int(r + i - 1), int(i));
        for (unsigned j = 0; j < i; ++j)
            p = p * q_integer_poly(k - j);
        v.add({Monomial{r + i}, Monomial{k - i, l + i}}, p.evaluate_in(q));
        return v;
    });
}

/// Quaternions: Psi^(1)(i (x) j) = 1 (x) 1, zero on the other basis pairs.
template <Field K>
Cochain<K> quaternion_psi1(const Factorisation<K>&)
{
    return twist_valued<K>([](const Monomial& a, const Monomial& b) {
        if (a == Monomial{1} && b == Monomial{1})
            return XElement<K>({Monomial{0}, Monomial{0}}, K(1));
        return XElement<K>{};
    });
}

/// Heisenberg: Psi^(i)(p^m (x) x^n) = i! C(m,i) C(n,i) x^{n-i} (x) p^{m-i}.
template <Field K>
Cochain<K> heisenberg_psi(const Factorisation<K>&, unsigned i)
{
    return twist_valued<K>([i](const Monomial& pm, const Monomial& xn) {
        const unsigned m = pm[0], n = xn[0];
        XElement<K> v;
        if (i <= m && i <= n)
            v.add({Monomial{n - i}, Monomial{m - i}}, K(factorial(i) * binomial(m, i) * binomial(n, i)));
        return v;
    });
}

} // namespace formulas

// Deformations

enum class PlaneMode { OrderByOrder, ClosedForm };

/// Commutative plane deformation with parameter c. Order-by-order mode
/// carries the first two orders (N <= 2); closed-form mode any N.
template <Field K>
DeformationData<K> commutative_plane(const Rational& c, unsigned N, PlaneMode mode = PlaneMode::OrderByOrder)
{
    if (N == 0)
        throw std::invalid_argument("commutative_plane: order must be positive");
    DeformationData<K> d(commutative_plane_base<K>(), N);
    const auto& F = d.base();
    if (mode == PlaneMode::OrderByOrder) {
        if (N > 2)
            throw std::invalid_argument("commutative_plane: order-by-order data stops at order 2");
        d.set_mu_A(1, formulas::plane_mu1(F));
        d.set_psi(1, formulas::plane_psi1(F));
        if (N >= 2) {
            d.set_mu_A(2, formulas::plane_mu2(F, c));
            d.set_psi(2, formulas::plane_psi2(F, c));
        }
        return d;
    }
    for (unsigned i = 1; i <= N; ++i) {
        d.set_mu_A(i, formulas::plane_closed_mu(F, c, i));
        d.set_psi(i, formulas::plane_closed_psi(F, c, i));
    }
    return d;
}

/// Quantum plane deformation of the twist only; terms above `keep` are zero.
template <Field K>
DeformationData<K> quantum_plane(const K& q, unsigned N, std::optional<unsigned> keep = std::nullopt)
{
    DeformationData<K> d(quantum_plane_base<K>(q), N);
    for (unsigned i = 1; i <= std::min(N, keep.value_or(N)); ++i)
        d.set_psi(i, formulas::quantum_plane_psi(d.base(), q, i));
    return d;
}

template <Field K>
DeformationData<K> quaternions(unsigned N)
{
    DeformationData<K> d(quaternion_base<K>(), N);
    if (N >= 1)
        d.set_psi(1, formulas::quaternion_psi1(d.base()));
    return d;
}

template <Field K>
DeformationData<K> heisenberg(unsigned N)
{
    DeformationData<K> d(heisenberg_base<K>(), N);
    for (unsigned i = 1; i <= N; ++i)
        d.set_psi(i, formulas::heisenberg_psi(d.base(), i));
    return d;
}

} // namespace factorlab
