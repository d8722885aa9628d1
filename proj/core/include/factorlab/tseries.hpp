#pragma once

/**
 * @file tseries.hpp
 * @brief Truncated power series K[[t]]/(t^{N+1}) in the deformation parameter.
 *
 * The truncation order is fixed at construction. Mixed-order arithmetic
 * truncates to the smaller order. Scalars lifted from K (integers, base
 * field elements) carry no truncation of their own, so that generic code can
 * write S(0) and S(1) without knowing the working order.
 */

#include <algorithm>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace factorlab {

template <class K>
class TSeries {
public:
    static constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

    TSeries() = default;
    TSeries(int c) : TSeries(K(c)) {}
    TSeries(const K& c) : c_{c} {}
    TSeries(std::vector<K> coeffs, unsigned order) : c_(std::move(coeffs)), order_(order)
    {
        if (c_.size() > std::size_t(order) + 1)
            c_.resize(std::size_t(order) + 1);
        c_.resize(std::size_t(order) + 1);
    }

    static TSeries zero(unsigned order) { return TSeries(std::vector<K>{}, order); }
    static TSeries t(unsigned order)
    {
        std::vector<K> v(order + 1);
        if (order >= 1)
            v[1] = K(1);
        return TSeries(std::move(v), order);
    }
    /// c * t^power truncated at order.
    static TSeries monomial(const K& c, unsigned power, unsigned order)
    {
        std::vector<K> v(order + 1);
        if (power <= order)
            v[power] = c;
        return TSeries(std::move(v), order);
    }

    unsigned order() const { return order_; }
    bool bounded() const { return order_ != kUnbounded; }

    /// Coefficient of t^n; n must lie within the truncation order.
    const K& coefficient(unsigned n) const
    {
        if (n > order_)
            throw std::out_of_range("TSeries: coefficient t^" + std::to_string(n) +
                                    " beyond truncation order " + std::to_string(order_));
        static const K zero{};
        return n < c_.size() ? c_[n] : zero;
    }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const K& c) { return c.is_zero(); });
    }

    /// Smallest n with a nonzero coefficient, if any.
    std::optional<unsigned> lowest_order() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero())
                return static_cast<unsigned>(i);
        return std::nullopt;
    }

    TSeries truncated(unsigned order) const
    {
        const unsigned o = std::min(order, order_);
        std::vector<K> v(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), std::size_t(o) + 1));
        if (o == kUnbounded) {
            TSeries r;
            r.c_ = std::move(v);
            return r;
        }
        return TSeries(std::move(v), o);
    }

    TSeries& operator+=(const TSeries& o) { return combine(o, false); }
    TSeries& operator-=(const TSeries& o) { return combine(o, true); }

    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }

    friend TSeries operator*(const TSeries& a, const TSeries& b)
    {
        const unsigned order = std::min(a.order_, b.order_);
        const std::size_t len =
            order == kUnbounded ? a.c_.size() + b.c_.size() - 1 : std::size_t(order) + 1;
        std::vector<K> r(len);
        for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
            if (a.c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j)
                if (!b.c_[j].is_zero())
                    r[i + j] += a.c_[i] * b.c_[j];
        }
        TSeries out;
        out.c_ = std::move(r);
        out.order_ = order;
        return out;
    }
    TSeries& operator*=(const TSeries& o) { return *this = *this * o; }

    /// Requires an invertible constant term in the divisor.
    friend TSeries operator/(const TSeries& a, const TSeries& b) { return a * b.inverse(); }
    TSeries& operator/=(const TSeries& o) { return *this = *this / o; }

    TSeries inverse() const
    {
        if (c_.empty() || c_[0].is_zero())
            throw std::domain_error("TSeries: divisor has zero constant term");
        if (order_ == kUnbounded) {
            if (c_.size() > 1)
                throw std::logic_error("TSeries: unbounded non-constant series");
            return TSeries(K(1) / c_[0]);
        }
        std::vector<K> inv(std::size_t(order_) + 1);
        const K c0inv = K(1) / c_[0];
        inv[0] = c0inv;
        for (unsigned n = 1; n <= order_; ++n) {
            K acc{};
            for (unsigned k = 1; k <= n && k < c_.size(); ++k)
                acc += c_[k] * inv[n - k];
            inv[n] = -(acc * c0inv);
        }
        return TSeries(std::move(inv), order_);
    }

    TSeries operator-() const
    {
        TSeries r = *this;
        for (auto& c : r.c_)
            c = -c;
        return r;
    }

    TSeries pow(unsigned e) const
    {
        TSeries result(K(1));
        TSeries base = *this;
        while (e) {
            if (e & 1u)
                result = result * base;
            e >>= 1u;
            if (e)
                base = base * base;
        }
        return result;
    }

    /// Coefficientwise equality up to the smaller truncation order.
    friend bool operator==(const TSeries& a, const TSeries& b)
    {
        const unsigned order = std::min(a.order_, b.order_);
        const std::size_t len = std::max(a.c_.size(), b.c_.size());
        static const K zero{};
        for (std::size_t i = 0; i < len && (order == kUnbounded || i <= order); ++i) {
            const K& x = i < a.c_.size() ? a.c_[i] : zero;
            const K& y = i < b.c_.size() ? b.c_[i] : zero;
            if (!(x == y))
                return false;
        }
        return true;
    }

    /// Ordered coefficient list "[c0, c1, ..., cN]".
    std::string str() const
    {
        std::string s = "[";
        const std::size_t len = order_ == kUnbounded ? std::max<std::size_t>(c_.size(), 1)
                                                     : std::size_t(order_) + 1;
        static const K zero{};
        for (std::size_t i = 0; i < len; ++i) {
            if (i)
                s += ", ";
            s += (i < c_.size() ? c_[i] : zero).str();
        }
        return s + "]";
    }

private:
    TSeries& combine(const TSeries& o, bool subtract)
    {
        const unsigned order = std::min(order_, o.order_);
        std::size_t len = std::max(c_.size(), o.c_.size());
        if (order != kUnbounded)
            len = std::size_t(order) + 1;
        c_.resize(len);
        for (std::size_t i = 0; i < o.c_.size() && i < len; ++i) {
            if (subtract)
                c_[i] -= o.c_[i];
            else
                c_[i] += o.c_[i];
        }
        order_ = order;
        return *this;
    }

    std::vector<K> c_;
    unsigned order_ = kUnbounded;
};

template <class K>
std::ostream& operator<<(std::ostream& os, const TSeries<K>& s)
{
    return os << s.str();
}

} // namespace factorlab
