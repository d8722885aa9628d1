#pragma once

// Monomial indices and sparse linear combinations over them.

#include "factorlab/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace factorlab {

inline constexpr std::size_t kMaxGenerators = 6;

/// Exponent vector of a normal-ordered basis monomial, or a single slot index
/// for finite table algebras. Ordered by (total exponent, lexicographic).
class Monomial {
public:
    Monomial() = default;
    Monomial(std::initializer_list<unsigned> exps)
    {
        if (exps.size() > kMaxGenerators)
            throw std::length_error("Monomial: too many generators");
        for (unsigned e : exps)
            e_[n_++] = static_cast<std::uint16_t>(e);
    }
    explicit Monomial(std::span<const unsigned> exps)
    {
        if (exps.size() > kMaxGenerators)
            throw std::length_error("Monomial: too many generators");
        for (unsigned e : exps)
            e_[n_++] = static_cast<std::uint16_t>(e);
    }
    static Monomial zeros(std::size_t n)
    {
        if (n > kMaxGenerators)
            throw std::length_error("Monomial: too many generators");
        Monomial m;
        m.n_ = static_cast<std::uint8_t>(n);
        return m;
    }

    std::size_t size() const { return n_; }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    void set(std::size_t i, unsigned v) { e_[i] = static_cast<std::uint16_t>(v); }
    unsigned total() const
    {
        unsigned t = 0;
        for (std::size_t i = 0; i < n_; ++i)
            t += e_[i];
        return t;
    }
    std::vector<unsigned> exponents() const { return {e_.begin(), e_.begin() + n_}; }

    friend Monomial operator+(const Monomial& a, const Monomial& b)
    {
        if (a.n_ != b.n_)
            throw std::invalid_argument("Monomial: length mismatch");
        Monomial r = a;
        for (std::size_t i = 0; i < a.n_; ++i)
            r.e_[i] = static_cast<std::uint16_t>(a.e_[i] + b.e_[i]);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (auto c = a.total() <=> b.total(); c != 0)
            return c;
        if (auto c = a.n_ <=> b.n_; c != 0)
            return c;
        for (std::size_t i = 0; i < a.n_; ++i)
            if (auto c = a.e_[i] <=> b.e_[i]; c != 0)
                return c;
        return std::strong_ordering::equal;
    }

private:
    std::array<std::uint16_t, kMaxGenerators> e_{};
    std::uint8_t n_ = 0;
};

using MonoTuple = std::vector<Monomial>;
/// Basis element b (x) a of X = B (x) A; the B factor comes first.
using MonoPair = std::pair<Monomial, Monomial>;

/// Finite linear combination of basis keys with no stored zeros.
template <class Key, Scalar S>
class LinComb {
public:
    using Map = std::map<Key, S>;

    LinComb() = default;
    LinComb(const Key& k, S c) { add(k, std::move(c)); }

    void add(const Key& k, const S& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    /// this += s * other
    void add_scaled(const LinComb& other, const S& s)
    {
        if (s.is_zero())
            return;
        for (const auto& [k, c] : other.terms_)
            add(k, c * s);
    }

    LinComb& operator+=(const LinComb& o)
    {
        for (const auto& [k, c] : o.terms_)
            add(k, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o)
    {
        for (const auto& [k, c] : o.terms_)
            add(k, -c);
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    LinComb operator-() const
    {
        LinComb r;
        for (const auto& [k, c] : terms_)
            r.terms_.emplace(k, -c);
        return r;
    }
    LinComb scaled(const S& s) const
    {
        LinComb r;
        r.add_scaled(*this, s);
        return r;
    }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    S coeff(const Key& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? S(0) : it->second;
    }
    const Map& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

private:
    Map terms_;
};

template <Scalar S>
using Element = LinComb<Monomial, S>;
template <Scalar S>
using XElement = LinComb<MonoPair, S>;
template <Scalar S>
using Tensor = LinComb<MonoTuple, S>;

/// Coefficientwise conversion between scalar rings (e.g. K -> TSeries<K>).
template <Scalar To, class Key, Scalar From, class Conv>
LinComb<Key, To> map_coefficients(const LinComb<Key, From>& x, Conv&& conv)
{
    LinComb<Key, To> r;
    for (const auto& [k, c] : x)
        r.add(k, conv(c));
    return r;
}

} // namespace factorlab
