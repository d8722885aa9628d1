#pragma once

/**
 * @file complex.hpp
 * @brief Cochains C^{m,n} = Hom(A^m (x) B^n, X) and the coboundaries d_A, d_B, D.
 *
 * Arguments are always ordered (a_m, ..., a_1, b^1, ..., b^n): A-arguments
 * with descending index first, then B-arguments ascending. Values live in
 * X = B (x) A. Edge cochains (n = 0, valued in A; m = 0, valued in B) are
 * stored through the inclusions f -> 1_B (x) f and g -> g (x) 1_A, so one set
 * of formulas serves every bidegree.
 *
 *   d_A f(a_{m+1},...,a_1, b)   = a_{m+1} f(a_m,...,a_1, b)
 *                               + sum_i (-1)^{i+1} f(..., a_{m+1-i} a_{m-i}, ..., b)
 *                               + (-1)^{m+1} sum_nu f(a_{m+1},...,a_2, b_nu) a_1^nu
 *   d_B f(a, b^1,...,b^{n+1})   = sum_nu b^1_nu f(a^nu, b^2,...)
 *                               + sum_i (-1)^i f(a, ..., b^i b^{i+1}, ...)
 *                               + (-1)^{n+1} f(a, b^1,...,b^n) b^{n+1}
 *   D|C^{m,n}                   = d_A + (-1)^m d_B
 */

#include "factorlab/twist.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <span>

namespace factorlab {

struct BiDegree {
    unsigned m = 0; // number of A arguments
    unsigned n = 0; // number of B arguments
    unsigned total() const { return m + n; }
    friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
    std::string str() const { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }
};

/// Thrown when a cochain defined by a finite table is queried outside the
/// degree range it was declared on.
struct CapEscapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <Scalar S>
class Cochain {
public:
    using Rule = std::function<XElement<S>(std::span<const Monomial> as, std::span<const Monomial> bs)>;

    Cochain() : Cochain(BiDegree{1, 0}, nullptr) {}
    Cochain(BiDegree deg, Rule rule) : deg_(deg), impl_(std::make_shared<Impl>())
    {
        if (deg.total() == 0)
            throw std::invalid_argument("Cochain: bidegree (0,0) is not part of the complex");
        impl_->rule = std::move(rule);
    }

    static Cochain zero(BiDegree deg) { return Cochain(deg, nullptr); }

    BiDegree bidegree() const { return deg_; }
    bool is_a_edge() const { return deg_.n == 0; }
    bool is_b_edge() const { return deg_.m == 0; }
    bool is_zero_rule() const { return !impl_->rule; }

    XElement<S> operator()(std::span<const Monomial> as, std::span<const Monomial> bs) const
    {
        if (as.size() != deg_.m || bs.size() != deg_.n)
            throw std::invalid_argument("Cochain: arity mismatch for bidegree " + deg_.str());
        if (!impl_->rule)
            return {};
        if (!impl_->memoize)
            return impl_->rule(as, bs);
        MonoTuple key(as.begin(), as.end());
        key.insert(key.end(), bs.begin(), bs.end());
        {
            std::lock_guard lock(impl_->mu);
            if (auto it = impl_->memo.find(key); it != impl_->memo.end())
                return it->second;
        }
        XElement<S> v = impl_->rule(as, bs);
        std::lock_guard lock(impl_->mu);
        return impl_->memo.try_emplace(std::move(key), std::move(v)).first->second;
    }

    /// Arguments concatenated as (a_m, ..., a_1, b^1, ..., b^n).
    XElement<S> operator()(const MonoTuple& args) const
    {
        if (args.size() != deg_.total())
            throw std::invalid_argument("Cochain: arity mismatch for bidegree " + deg_.str());
        std::span<const Monomial> all(args);
        return (*this)(all.first(deg_.m), all.subspan(deg_.m));
    }

    /// Same values, cached per argument tuple.
    Cochain memoized() const
    {
        Cochain c(deg_, impl_->rule);
        c.impl_->memoize = true;
        return c;
    }

    friend Cochain operator+(const Cochain& f, const Cochain& g) { return combine(f, g, S(1)); }
    friend Cochain operator-(const Cochain& f, const Cochain& g) { return combine(f, g, S(-1)); }
    Cochain scaled(const S& s) const
    {
        if (!impl_->rule || s.is_zero())
            return zero(deg_);
        Cochain f = *this;
        return Cochain(deg_, [f, s](std::span<const Monomial> as, std::span<const Monomial> bs) {
            return f(as, bs).scaled(s);
        });
    }

private:
    static Cochain combine(const Cochain& f, const Cochain& g, const S& sign)
    {
        if (f.deg_ != g.deg_)
            throw std::invalid_argument("Cochain: bidegree mismatch " + f.deg_.str() + " vs " +
                                        g.deg_.str());
        if (!g.impl_->rule)
            return f;
        if (!f.impl_->rule)
            return g.scaled(sign);
        return Cochain(f.deg_, [f, g, sign](std::span<const Monomial> as, std::span<const Monomial> bs) {
            XElement<S> r = f(as, bs);
            r.add_scaled(g(as, bs), sign);
            return r;
        });
    }

    struct Impl {
        Rule rule;
        bool memoize = false;
        std::mutex mu;
        std::map<MonoTuple, XElement<S>> memo;
    };

    BiDegree deg_;
    std::shared_ptr<Impl> impl_;
};

/// Wraps an A-valued rule on A^m as an edge cochain via f -> 1_B (x) f.
template <Scalar S>
Cochain<S> a_valued(const Factorisation<S>& fac, unsigned m,
                    std::function<Element<S>(std::span<const Monomial>)> f)
{
    const Monomial one_b = fac.B().unit();
    return Cochain<S>({m, 0}, [one_b, f = std::move(f)](std::span<const Monomial> as,
                                                        std::span<const Monomial>) {
        return tensor(Element<S>(one_b, S(1)), f(as));
    });
}

/// Wraps a B-valued rule on B^n as an edge cochain via g -> g (x) 1_A.
template <Scalar S>
Cochain<S> b_valued(const Factorisation<S>& fac, unsigned n,
                    std::function<Element<S>(std::span<const Monomial>)> g)
{
    const Monomial one_a = fac.A().unit();
    return Cochain<S>({0, n}, [one_a, g = std::move(g)](std::span<const Monomial>,
                                                        std::span<const Monomial> bs) {
        return tensor(g(bs), Element<S>(one_a, S(1)));
    });
}

/// A (1,1)-cochain from a map A (x) B -> B (x) A on basis pairs.
template <Scalar S>
Cochain<S> twist_valued(std::function<XElement<S>(const Monomial&, const Monomial&)> f)
{
    return Cochain<S>({1, 1}, [f = std::move(f)](std::span<const Monomial> as,
                                                 std::span<const Monomial> bs) {
        return f(as[0], bs[0]);
    });
}

/// Cochain defined by finitely many values; unspecified tuples are zero. With
/// domain_degree set, queries whose infinite-dimensional argument degrees sum
/// past it throw CapEscapeError instead of silently returning zero.
template <Scalar S>
Cochain<S> table_cochain(const Factorisation<S>& fac, BiDegree deg,
                         std::map<MonoTuple, XElement<S>> values,
                         std::optional<unsigned> domain_degree = std::nullopt)
{
    auto shared = std::make_shared<const std::map<MonoTuple, XElement<S>>>(std::move(values));
    const AlgebraPtr<S> A = fac.A_ptr(), B = fac.B_ptr();
    return Cochain<S>(deg, [shared, A, B, domain_degree](std::span<const Monomial> as,
                                                        std::span<const Monomial> bs) {
        MonoTuple key(as.begin(), as.end());
        key.insert(key.end(), bs.begin(), bs.end());
        if (auto it = shared->find(key); it != shared->end())
            return it->second;
        if (domain_degree) {
            unsigned d = 0;
            for (const auto& a : as)
                d += A->finite() ? 0 : A->degree(a);
            for (const auto& b : bs)
                d += B->finite() ? 0 : B->degree(b);
            if (d > *domain_degree)
                throw CapEscapeError("cochain table queried beyond its declared degree " +
                                     std::to_string(*domain_degree));
        }
        return XElement<S>{};
    });
}

/// Value 1 * out at one input tuple, zero elsewhere.
template <Scalar S>
Cochain<S> delta_cochain(BiDegree deg, MonoTuple input, MonoPair out, S coeff = S(1))
{
    if (input.size() != deg.total())
        throw std::invalid_argument("delta_cochain: tuple length does not match bidegree");
    return Cochain<S>(deg, [input = std::move(input), out = std::move(out),
                            coeff](std::span<const Monomial> as, std::span<const Monomial> bs) {
        if (!std::equal(as.begin(), as.end(), input.begin()) ||
            !std::equal(bs.begin(), bs.end(), input.begin() + as.size()))
            return XElement<S>{};
        return XElement<S>(out, coeff);
    });
}

namespace detail {

/// f evaluated multilinearly with slot `slot` of the concatenated argument
/// tuple replaced by an element given as (monomial, coefficient) terms.
template <Scalar S, class Terms>
XElement<S> eval_replacing(const Cochain<S>& f, MonoTuple args, std::size_t slot, const Terms& terms)
{
    XElement<S> r;
    const auto m = f.bidegree().m;
    for (const auto& [mono, c] : terms) {
        args[slot] = mono;
        std::span<const Monomial> all(args);
        r.add_scaled(f(all.first(m), all.subspan(m)), c);
    }
    return r;
}

template <class T>
T sign_of(unsigned exponent)
{
    return exponent % 2 ? T(-1) : T(1);
}

} // namespace detail

/// Coboundary in the A direction: C^{m,n} -> C^{m+1,n}.
template <Scalar S>
Cochain<S> d_A(const Factorisation<S>& fac, const Cochain<S>& f)
{
    const BiDegree deg = f.bidegree();
    if (f.is_zero_rule())
        return Cochain<S>::zero({deg.m + 1, deg.n});
    return Cochain<S>({deg.m + 1, deg.n}, [fac, f, deg](std::span<const Monomial> as,
                                                       std::span<const Monomial> bs) {
        const unsigned m = deg.m;
        const auto& A = fac.A();
        XElement<S> r;
        // a_{m+1} . f(a_m, ..., a_1, b)
        {
            const XElement<S> left({fac.B().unit(), as[0]}, S(1));
            r += fac.x_multiply(left, f(as.subspan(1), bs));
        }
        // interior products a_{m+1-i} a_{m-i}
        for (unsigned i = 0; i < m; ++i) {
            MonoTuple args;
            args.reserve(m + bs.size());
            for (unsigned j = 0; j < m + 1; ++j) {
                if (j == i + 1)
                    continue;
                args.push_back(as[j]);
            }
            args.insert(args.end(), bs.begin(), bs.end());
            const Element<S> prod = A.basis_product(as[i], as[i + 1]);
            r.add_scaled(detail::eval_replacing(f, std::move(args), i, prod),
                         detail::sign_of<S>(i + 1));
        }
        // (-1)^{m+1} sum_nu f(a_{m+1}, ..., a_2, b_nu) a_1^nu
        const S last_sign = detail::sign_of<S>(m + 1);
        const auto head = as.first(m);
        if (bs.empty()) {
            r.add_scaled(fac.right_multiply_a(f(head, bs), as[m]), last_sign);
        } else {
            for (const auto& [key, c] : fac.twist_chain_right(as[m], bs)) {
                std::span<const Monomial> moved(key);
                r.add_scaled(fac.right_multiply_a(f(head, moved.first(bs.size())), key.back()),
                             c * last_sign);
            }
        }
        return r;
    });
}

/// Coboundary in the B direction: C^{m,n} -> C^{m,n+1}.
template <Scalar S>
Cochain<S> d_B(const Factorisation<S>& fac, const Cochain<S>& f)
{
    const BiDegree deg = f.bidegree();
    if (f.is_zero_rule())
        return Cochain<S>::zero({deg.m, deg.n + 1});
    return Cochain<S>({deg.m, deg.n + 1}, [fac, f, deg](std::span<const Monomial> as,
                                                       std::span<const Monomial> bs) {
        const unsigned n = deg.n;
        const auto& B = fac.B();
        XElement<S> r;
        // sum_nu b^1_nu f(a^nu, b^2, ..., b^{n+1})
        const auto tail = bs.subspan(1);
        if (as.empty()) {
            r += fac.left_multiply_b(bs[0], f(as, tail));
        } else {
            for (const auto& [key, c] : fac.twist_chain_left(as, bs[0])) {
                std::span<const Monomial> k(key);
                r.add_scaled(fac.left_multiply_b(key[0], f(k.subspan(1), tail)), c);
            }
        }
        // interior products b^i b^{i+1}
        for (unsigned i = 1; i <= n; ++i) {
            MonoTuple args(as.begin(), as.end());
            for (unsigned j = 0; j < n + 1; ++j) {
                if (j == i)
                    continue;
                args.push_back(bs[j]);
            }
            const Element<S> prod = B.basis_product(bs[i - 1], bs[i]);
            r.add_scaled(detail::eval_replacing(f, std::move(args), as.size() + i - 1, prod),
                         detail::sign_of<S>(i));
        }
        // (-1)^{n+1} f(a, b^1, ..., b^n) b^{n+1}
        const XElement<S> right({bs[n], fac.A().unit()}, S(1));
        r.add_scaled(fac.x_multiply(f(as, bs.first(n)), right), detail::sign_of<S>(n + 1));
        return r;
    });
}

/// Element of C^k = Hom(A^k, A) + sum Hom(A^{k-j} (x) B^j, X) + Hom(B^k, B),
/// indexed by the A-arity m (B-arity is k - m). Missing components are zero.
template <Scalar S>
class TotalCochain {
public:
    explicit TotalCochain(unsigned degree) : degree_(degree)
    {
        if (degree == 0)
            throw std::invalid_argument("TotalCochain: degree 0 is not part of the complex");
    }

    unsigned degree() const { return degree_; }

    Cochain<S> component(unsigned m) const
    {
        if (m > degree_)
            throw std::out_of_range("TotalCochain: component beyond degree");
        if (auto it = parts_.find(m); it != parts_.end())
            return it->second;
        return Cochain<S>::zero({m, degree_ - m});
    }

    void set(const Cochain<S>& c)
    {
        if (c.bidegree().total() != degree_)
            throw std::invalid_argument("TotalCochain: component " + c.bidegree().str() +
                                        " has wrong total degree");
        parts_.insert_or_assign(c.bidegree().m, c);
    }

    void add(const Cochain<S>& c)
    {
        if (auto it = parts_.find(c.bidegree().m); it != parts_.end())
            it->second = it->second + c;
        else
            set(c);
    }

    TotalCochain operator+(const TotalCochain& o) const { return combine(o, S(1)); }
    TotalCochain operator-(const TotalCochain& o) const { return combine(o, S(-1)); }
    TotalCochain scaled(const S& s) const
    {
        TotalCochain r(degree_);
        for (const auto& [m, c] : parts_)
            r.set(c.scaled(s));
        return r;
    }

private:
    TotalCochain combine(const TotalCochain& o, const S& s) const
    {
        if (o.degree_ != degree_)
            throw std::invalid_argument("TotalCochain: degree mismatch");
        TotalCochain r = *this;
        for (const auto& [m, c] : o.parts_)
            r.add(c.scaled(s));
        return r;
    }

    unsigned degree_;
    std::map<unsigned, Cochain<S>> parts_;
};

/// D = d_A + (-1)^m d_B on each component C^{m,n}.
template <Scalar S>
TotalCochain<S> total_D(const Factorisation<S>& fac, const TotalCochain<S>& c)
{
    const unsigned k = c.degree();
    TotalCochain<S> r(k + 1);
    for (unsigned m = 0; m <= k; ++m) {
        const Cochain<S> part = c.component(m);
        if (part.is_zero_rule())
            continue;
        r.add(d_A(fac, part));
        r.add(d_B(fac, part).scaled(detail::sign_of<S>(m)));
    }
    return r;
}

/// Argument slots (a_m..a_1, b^1..b^n) of a bidegree.
template <Scalar S>
std::vector<const BasedAlgebra<S>*> argument_slots(const Factorisation<S>& fac, BiDegree deg)
{
    std::vector<const BasedAlgebra<S>*> slots(deg.m, &fac.A());
    slots.insert(slots.end(), deg.n, &fac.B());
    return slots;
}

/// Checks that f vanishes on every argument tuple of degree <= bound.
template <Scalar S>
CheckReport vanishes_on(const Factorisation<S>& fac, const Cochain<S>& f, unsigned bound,
                        std::string what = "cochain vanishes")
{
    CheckReport report;
    report.check = std::move(what);
    const BiDegree deg = f.bidegree();
    for_each_tuple<S>(argument_slots(fac, deg), bound, [&](const MonoTuple& t) {
        ++report.tuples_checked;
        const XElement<S> v = f(t);
        if (v.is_zero())
            return;
        Witness w;
        for (std::size_t i = 0; i < t.size(); ++i)
            w.inputs.push_back(i < deg.m ? fac.A().format(t[i]) : fac.B().format(t[i]));
        w.lhs = fac.format(v);
        w.rhs = "0";
        if constexpr (ScalarTraits<S>::is_series)
            w.order = detail::lowest_order<S>(v);
        report.record_failure("bidegree " + deg.str(), std::move(w));
    });
    return report;
}

template <Scalar S>
CheckReport vanishes_on(const Factorisation<S>& fac, const TotalCochain<S>& c, unsigned bound,
                        std::string what = "total cochain vanishes")
{
    CheckReport report;
    report.check = what;
    for (unsigned m = 0; m <= c.degree(); ++m) {
        const Cochain<S> part = c.component(m);
        if (!part.is_zero_rule())
            report.merge(vanishes_on(fac, part, bound, what));
    }
    return report;
}

/// Checks f == g on all argument tuples of degree <= bound.
template <Scalar S>
CheckReport agree_on(const Factorisation<S>& fac, const Cochain<S>& f, const Cochain<S>& g,
                     unsigned bound, std::string what)
{
    CheckReport report;
    report.check = std::move(what);
    const BiDegree deg = f.bidegree();
    if (g.bidegree() != deg)
        throw std::invalid_argument("agree_on: bidegree mismatch");
    for_each_tuple<S>(argument_slots(fac, deg), bound, [&](const MonoTuple& t) {
        ++report.tuples_checked;
        const XElement<S> x = f(t), y = g(t);
        if (x == y)
            return;
        Witness w;
        for (std::size_t i = 0; i < t.size(); ++i)
            w.inputs.push_back(i < deg.m ? fac.A().format(t[i]) : fac.B().format(t[i]));
        w.lhs = fac.format(x);
        w.rhs = fac.format(y);
        report.record_failure("bidegree " + deg.str(), std::move(w));
    });
    return report;
}

/// Tuples at which `op(f)` queries f while being evaluated at `args`. The
/// set of queries of the coboundary formulas never depends on f's values.
template <Scalar S, class Op>
std::set<MonoTuple> trace_queries(BiDegree source, Op&& op, const MonoTuple& args)
{
    auto seen = std::make_shared<std::set<MonoTuple>>();
    Cochain<S> tracer(source, [seen](std::span<const Monomial> as, std::span<const Monomial> bs) {
        MonoTuple key(as.begin(), as.end());
        key.insert(key.end(), bs.begin(), bs.end());
        seen->insert(std::move(key));
        return XElement<S>{};
    });
    const Cochain<S> image = op(tracer);
    (void)image(args);
    return *seen;
}

} // namespace factorlab
