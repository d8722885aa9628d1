#pragma once

// Small factorisations and random cochains shared by the unit tests. Built
// directly from the core primitives so that the corpus module can be tested
// against them.

#include "factorlab/complex.hpp"

#include <random>

namespace testsupport {

using namespace factorlab;

template <Scalar S>
Factorisation<S> quaternions()
{
    auto A = complex_numbers<S>("i");
    auto B = complex_numbers<S>("j");
    const Monomial i{1}, j{1};
    auto psi = extend_from_generators<S>(A, B, {{i, j, XElement<S>({j, i}, S(-1))}});
    return Factorisation<S>(A, B, psi);
}

/// k[gens] with k[b], flip twist.
template <Scalar S>
Factorisation<S> flip_plane(std::vector<std::string> gens = {"a", "abar"})
{
    auto A = commutative_poly<S>(std::move(gens));
    auto B = commutative_poly<S>({"b"});
    auto psi = TwistMap<S>::direct(A, B, [](const Monomial& a, const Monomial& b) {
        return XElement<S>({b, a}, S(1));
    });
    return Factorisation<S>(A, B, psi);
}

/// Quantum plane with k[b], Psi(a^k abar^l (x) b^r) = q^{lr} b^r (x) a^k abar^l.
template <Scalar S>
Factorisation<S> quantum_plane(const S& q)
{
    auto A = q_plane<S>(q);
    auto B = commutative_poly<S>({"b"});
    auto psi = TwistMap<S>::direct(A, B, [q](const Monomial& a, const Monomial& b) {
        S c(1);
        for (unsigned e = 0; e < a[1] * b[0]; ++e)
            c = c * q;
        return XElement<S>({b, a}, c);
    });
    return Factorisation<S>(A, B, psi);
}

inline Rational small_rational(std::mt19937& rng)
{
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    return Rational(num(rng), den(rng));
}

/// Deterministic pseudo-random values on every tuple: the value at a tuple
/// depends only on (seed, tuple). Outputs have degree <= out_degree.
template <Scalar S>
Cochain<S> random_cochain(const Factorisation<S>& fac, BiDegree deg, unsigned seed,
                          unsigned out_degree = 2)
{
    const auto outs_b = fac.B().basis_up_to(out_degree);
    const auto outs_a = fac.A().basis_up_to(out_degree);
    const Monomial one_a = fac.A().unit(), one_b = fac.B().unit();
    return Cochain<S>(deg, [=](std::span<const Monomial> as, std::span<const Monomial> bs) {
        std::seed_seq::result_type h = seed;
        auto mix = [&h](const Monomial& m) {
            for (unsigned e : m.exponents())
                h = h * 1000003u + e + 17u;
            h = h * 31u + 7u;
        };
        for (const auto& a : as)
            mix(a);
        for (const auto& b : bs)
            mix(b);
        std::mt19937 rng(h);
        std::uniform_int_distribution<std::size_t> pick_a(0, outs_a.size() - 1),
            pick_b(0, outs_b.size() - 1);
        XElement<S> v;
        for (int t = 0; t < 2; ++t) {
            const Monomial b = deg.n == 0 ? one_b : outs_b[pick_b(rng)];
            const Monomial a = deg.m == 0 ? one_a : outs_a[pick_a(rng)];
            v.add({b, a}, S(small_rational(rng)));
        }
        return v;
    });
}

template <Scalar S>
TotalCochain<S> random_total(const Factorisation<S>& fac, unsigned k, unsigned seed)
{
    TotalCochain<S> c(k);
    for (unsigned m = 0; m <= k; ++m)
        c.set(random_cochain(fac, {m, k - m}, seed * 101 + m));
    return c;
}

} // namespace testsupport
