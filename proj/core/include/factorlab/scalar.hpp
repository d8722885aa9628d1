#pragma once

// Scalar tower: exact rationals, Q(q), truncated t-series over either, and
// the q-combinatorial functions used by the deformed twists.

#include "factorlab/qrational.hpp"
#include "factorlab/rational.hpp"
#include "factorlab/tseries.hpp"

#include <concepts>
#include <optional>
#include <string>

namespace factorlab {

/// What the generic algebra code needs from a coefficient ring.
template <class S>
concept Scalar = std::regular<S> && requires(S a, const S& b) {
    { S(0) };
    { S(1) };
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { -b } -> std::convertible_to<S>;
    { b.is_zero() } -> std::convertible_to<bool>;
    { b.str() } -> std::convertible_to<std::string>;
};

/// Scalars in which every nonzero element is invertible.
template <class K>
concept Field = Scalar<K> && requires(const K& a, const K& b) {
    { a / b } -> std::convertible_to<K>;
};

template <class S>
struct ScalarTraits {
    static constexpr bool is_series = false;
    using Base = S;
    static std::optional<unsigned> lowest_order(const S& s)
    {
        return s.is_zero() ? std::nullopt : std::optional<unsigned>(0);
    }
};

template <class K>
struct ScalarTraits<TSeries<K>> {
    static constexpr bool is_series = true;
    using Base = K;
    static std::optional<unsigned> lowest_order(const TSeries<K>& s) { return s.lowest_order(); }
};

/// [k] = 1 + q + ... + q^{k-1}; [0] = 0.
QPoly q_integer_poly(unsigned k);
/// (q;q)_i = (1-q)(1-q^2)...(1-q^i), with (q;q)_{-1} = (q;q)_0 = 1.
QPoly q_pochhammer_poly(int i);
/// Gaussian binomial (q;q)_k / ((q;q)_i (q;q)_{k-i}) as a polynomial.
/// Throws std::invalid_argument unless 0 <= i <= k.
QPoly q_binomial_poly(int k, int i);

QRational q_integer(unsigned k);
QRational q_pochhammer(int i);
QRational q_binomial(int k, int i);

/// Ordinary binomial coefficient C(n, k) (zero when k > n).
Rational binomial(unsigned n, unsigned k);
Rational factorial(unsigned n);

} // namespace factorlab
