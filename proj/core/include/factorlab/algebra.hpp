#pragma once

/**
 * @file algebra.hpp
 * @brief Based algebras: a chosen monomial basis with exact structure constants.
 *
 * Every family supplies a closed-form product on normal-ordered basis
 * monomials. Infinite families are enumerated by total degree; finite table
 * algebras enumerate all slots (degree 0 for the unit, 1 otherwise).
 */

#include "factorlab/linear.hpp"
#include "factorlab/report.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace factorlab {

struct UnknownBasisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <Scalar S>
class BasedAlgebra {
public:
    using Product = std::function<Element<S>(const Monomial&, const Monomial&)>;
    using Split = std::function<std::optional<std::pair<Monomial, Monomial>>(const Monomial&)>;

    enum class Family { CommutativePoly, QPlane, Table, Custom };

    struct Definition {
        std::string name;
        Family family = Family::Custom;
        /// Generator names (poly families) or basis labels (tables).
        std::vector<std::string> labels;
        Monomial unit;
        Product product;
        std::function<unsigned(const Monomial&)> degree;
        std::function<bool(const Monomial&)> contains;
        std::function<std::vector<Monomial>(unsigned)> basis_up_to;
        std::optional<std::size_t> finite_dimension;
        /// Monomials used as generators by twist extension.
        std::vector<Monomial> generators;
        /// m = g * rest with g a generator, coefficient exactly 1.
        Split split_left;
        /// Family parameters for serialisation (e.g. "q").
        std::map<std::string, std::string> parameters;
        /// Structure constants of table algebras, row-major.
        std::vector<std::vector<Element<S>>> table;
    };

    explicit BasedAlgebra(Definition def) : d_(std::move(def)) {}

    const std::string& name() const { return d_.name; }
    Family family() const { return d_.family; }
    const std::vector<std::string>& labels() const { return d_.labels; }
    const Monomial& unit() const { return d_.unit; }
    Element<S> unit_element() const { return Element<S>(d_.unit, S(1)); }
    unsigned degree(const Monomial& m) const { return d_.degree(m); }
    bool contains(const Monomial& m) const { return d_.contains(m); }
    bool finite() const { return d_.finite_dimension.has_value(); }
    std::optional<std::size_t> finite_dimension() const { return d_.finite_dimension; }
    const std::vector<Monomial>& generators() const { return d_.generators; }
    const std::map<std::string, std::string>& parameters() const { return d_.parameters; }
    const std::vector<std::vector<Element<S>>>& table() const { return d_.table; }
    const Definition& definition() const { return d_; }

    /// Basis monomials of degree <= bound in canonical order (all slots when finite).
    std::vector<Monomial> basis_up_to(unsigned bound) const { return d_.basis_up_to(bound); }

    std::optional<std::pair<Monomial, Monomial>> split_left(const Monomial& m) const
    {
        return d_.split_left ? d_.split_left(m) : std::nullopt;
    }

    Element<S> basis_product(const Monomial& x, const Monomial& y) const
    {
        require(x);
        require(y);
        return d_.product(x, y);
    }

    Element<S> multiply(const Element<S>& x, const Element<S>& y) const
    {
        Element<S> r;
        for (const auto& [mx, cx] : x)
            for (const auto& [my, cy] : y)
                r.add_scaled(basis_product(mx, my), cx * cy);
        return r;
    }

    void require(const Monomial& m) const
    {
        if (!d_.contains(m))
            throw UnknownBasisError("basis index " + format(m) + " not recognised by " + d_.name);
    }

    std::string format(const Monomial& m) const
    {
        if (d_.family == Family::Table) {
            if (m.size() == 1 && m[0] < d_.labels.size())
                return d_.labels[m[0]];
            return "#?";
        }
        std::string s;
        for (std::size_t i = 0; i < m.size() && i < d_.labels.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += d_.labels[i];
            if (m[i] > 1)
                s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }

    std::string format(const Element<S>& x) const
    {
        if (x.is_zero())
            return "0";
        std::string s;
        for (const auto& [m, c] : x) {
            if (!s.empty())
                s += " + ";
            s += "(" + c.str() + ")*" + format(m);
        }
        return s;
    }

private:
    Definition d_;
};

template <Scalar S>
using AlgebraPtr = std::shared_ptr<const BasedAlgebra<S>>;

namespace detail {

inline void enumerate_exponents(std::size_t nvars, unsigned bound, std::vector<Monomial>& out)
{
    Monomial m = Monomial::zeros(nvars);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == nvars) {
            out.push_back(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m.set(i, e);
            rec(i + 1, left - e);
        }
        m.set(i, 0);
    };
    rec(0, bound);
    std::sort(out.begin(), out.end());
}

template <Scalar S>
typename BasedAlgebra<S>::Definition polynomial_skeleton(std::string name,
                                                         std::vector<std::string> gens)
{
    if (gens.empty())
        throw std::invalid_argument("polynomial family needs at least one generator");
    if (gens.size() > kMaxGenerators)
        throw std::invalid_argument("polynomial family: too many generators");
    std::set<std::string> seen;
    for (const auto& g : gens)
        if (!seen.insert(g).second)
            throw std::invalid_argument("duplicate generator name '" + g + "'");
    const std::size_t n = gens.size();
    typename BasedAlgebra<S>::Definition d;
    d.name = std::move(name);
    d.labels = std::move(gens);
    d.unit = Monomial::zeros(n);
    d.degree = [](const Monomial& m) { return m.total(); };
    d.contains = [n](const Monomial& m) { return m.size() == n; };
    d.basis_up_to = [n](unsigned bound) {
        std::vector<Monomial> out;
        enumerate_exponents(n, bound, out);
        return out;
    };
    for (std::size_t i = 0; i < n; ++i) {
        Monomial g = Monomial::zeros(n);
        g.set(i, 1);
        d.generators.push_back(g);
    }
    // Peeling the leftmost variable of a normal-ordered monomial
    // never produces a scalar in the families built on this skeleton.
    d.split_left = [n](const Monomial& m) -> std::optional<std::pair<Monomial, Monomial>> {
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] > 0) {
                Monomial g = Monomial::zeros(n), rest = m;
                g.set(i, 1);
                rest.set(i, m[i] - 1);
                return std::make_pair(g, rest);
            }
        return std::nullopt;
    };
    return d;
}

/// Memoised powers of a scalar, safe for concurrent use.
template <Scalar S>
class PowerCache {
public:
    explicit PowerCache(S base) : powers_{S(1)}, base_(std::move(base)) {}
    S operator()(unsigned e) const
    {
        std::lock_guard lock(mu_);
        while (powers_.size() <= e)
            powers_.push_back(powers_.back() * base_);
        return powers_[e];
    }

private:
    mutable std::mutex mu_;
    mutable std::vector<S> powers_;
    S base_;
};

} // namespace detail

/// Polynomials in commuting variables; product adds exponents.
template <Scalar S>
AlgebraPtr<S> commutative_poly(std::vector<std::string> gens, std::string name = "")
{
    if (name.empty()) {
        name = "k[";
        for (std::size_t i = 0; i < gens.size(); ++i)
            name += (i ? "," : "") + gens[i];
        name += "]";
    }
    auto d = detail::polynomial_skeleton<S>(std::move(name), std::move(gens));
    d.family = BasedAlgebra<S>::Family::CommutativePoly;
    d.product = [](const Monomial& x, const Monomial& y) { return Element<S>(x + y, S(1)); };
    return std::make_shared<const BasedAlgebra<S>>(std::move(d));
}

/// Manin's quantum plane k<a, abar>/(abar a - q a abar) in normal order a^k abar^l:
/// (a^k abar^l)(a^m abar^n) = q^{l m} a^{k+m} abar^{l+n}.
template <Scalar S>
AlgebraPtr<S> q_plane(const S& q, std::string name = "", std::vector<std::string> gens = {"a", "abar"})
{
    if (gens.size() != 2)
        throw std::invalid_argument("q_plane: needs exactly two generators");
    if (name.empty())
        name = "k_q[" + gens[0] + "," + gens[1] + "]";
    auto d = detail::polynomial_skeleton<S>(std::move(name), std::move(gens));
    d.family = BasedAlgebra<S>::Family::QPlane;
    d.parameters["q"] = q.str();
    auto powers = std::make_shared<detail::PowerCache<S>>(q);
    d.product = [powers](const Monomial& x, const Monomial& y) {
        return Element<S>(x + y, (*powers)(x[1] * y[0]));
    };
    return std::make_shared<const BasedAlgebra<S>>(std::move(d));
}

/// Finite-dimensional algebra from dense structure constants table[i][j] = e_i e_j.
/// The unit slot is located automatically; associativity is not assumed.
template <Scalar S>
AlgebraPtr<S> table_algebra(std::vector<std::string> labels,
                            std::vector<std::vector<Element<S>>> table, std::string name = "")
{
    const std::size_t dim = labels.size();
    if (dim == 0)
        throw std::invalid_argument("table algebra: empty basis");
    if (table.size() != dim)
        throw std::invalid_argument("table algebra: table has wrong number of rows");
    for (const auto& row : table) {
        if (row.size() != dim)
            throw std::invalid_argument("table algebra: table row has wrong length");
        for (const auto& e : row)
            for (const auto& [m, c] : e)
                if (m.size() != 1 || m[0] >= dim)
                    throw std::invalid_argument("table algebra: entry outside basis");
    }
    std::optional<std::size_t> unit;
    for (std::size_t u = 0; u < dim && !unit; ++u) {
        bool ok = true;
        for (std::size_t x = 0; x < dim && ok; ++x) {
            const Element<S> ex(Monomial{unsigned(x)}, S(1));
            ok = table[u][x] == ex && table[x][u] == ex;
        }
        if (ok)
            unit = u;
    }
    if (!unit)
        throw std::invalid_argument("table algebra: no unit slot");

    typename BasedAlgebra<S>::Definition d;
    d.name = name.empty() ? "table" : std::move(name);
    d.family = BasedAlgebra<S>::Family::Table;
    d.unit = Monomial{unsigned(*unit)};
    d.finite_dimension = dim;
    const unsigned u = unsigned(*unit);
    d.degree = [u](const Monomial& m) { return m[0] == u ? 0u : 1u; };
    d.contains = [dim](const Monomial& m) { return m.size() == 1 && m[0] < dim; };
    d.basis_up_to = [dim, u](unsigned bound) {
        std::vector<Monomial> out;
        for (unsigned i = 0; i < dim; ++i)
            if (i == u || bound >= 1)
                out.push_back(Monomial{i});
        return out;
    };
    for (unsigned i = 0; i < dim; ++i)
        if (i != u)
            d.generators.push_back(Monomial{i});
    auto shared_table = std::make_shared<const std::vector<std::vector<Element<S>>>>(table);
    d.product = [shared_table](const Monomial& x, const Monomial& y) {
        return (*shared_table)[x[0]][y[0]];
    };
    d.labels = std::move(labels);
    d.table = std::move(table);
    return std::make_shared<const BasedAlgebra<S>>(std::move(d));
}

/// The complex numbers over Q as the table algebra on {1, gen}, gen^2 = -1.
template <Scalar S>
AlgebraPtr<S> complex_numbers(const std::string& gen, std::string name = "")
{
    const Monomial one{0}, g{1};
    std::vector<std::vector<Element<S>>> t = {
        {Element<S>(one, S(1)), Element<S>(g, S(1))},
        {Element<S>(g, S(1)), Element<S>(one, S(-1))},
    };
    return table_algebra<S>({"1", gen}, std::move(t), name.empty() ? "Q[" + gen + "]" : name);
}

/// Same basis and structure data with a different product rule (used for
/// deformed algebras over t-series).
template <Scalar T, Scalar S>
typename BasedAlgebra<T>::Definition rebase_definition(const BasedAlgebra<S>& alg,
                                                      typename BasedAlgebra<T>::Product product)
{
    const auto& src = alg.definition();
    typename BasedAlgebra<T>::Definition d;
    d.name = src.name;
    d.family = BasedAlgebra<T>::Family::Custom;
    d.labels = src.labels;
    d.unit = src.unit;
    d.product = std::move(product);
    d.degree = src.degree;
    d.contains = src.contains;
    d.basis_up_to = src.basis_up_to;
    d.finite_dimension = src.finite_dimension;
    d.generators = src.generators;
    d.split_left = src.split_left;
    d.parameters = src.parameters;
    return d;
}

/// Calls fn(tuple) for every tuple of basis monomials drawn from `slots`
/// whose degrees (summed over infinite-dimensional slots) stay within bound.
template <Scalar S, class Fn>
void for_each_tuple(const std::vector<const BasedAlgebra<S>*>& slots, unsigned bound, Fn&& fn)
{
    std::vector<std::vector<Monomial>> bases;
    for (const auto* alg : slots)
        bases.push_back(alg->finite() ? alg->basis_up_to(std::max(bound, 1u))
                                      : alg->basis_up_to(bound));
    MonoTuple tuple(slots.size());
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned used) {
        if (i == slots.size()) {
            fn(static_cast<const MonoTuple&>(tuple));
            return;
        }
        const bool counted = !slots[i]->finite();
        for (const auto& m : bases[i]) {
            const unsigned deg = counted ? slots[i]->degree(m) : 0;
            if (used + deg > bound)
                continue;
            tuple[i] = m;
            rec(i + 1, used + deg);
        }
    };
    rec(0, 0);
}

/// Checks (xy)z = x(yz) on all basis triples of total degree <= degree_bound.
template <Scalar S>
CheckReport associativity_check(const BasedAlgebra<S>& alg, unsigned degree_bound)
{
    CheckReport report;
    report.check = "associativity of " + alg.name();
    const std::vector<const BasedAlgebra<S>*> slots(3, &alg);
    for_each_tuple<S>(slots, degree_bound, [&](const MonoTuple& t) {
        ++report.tuples_checked;
        const Element<S> x(t[0], S(1)), y(t[1], S(1)), z(t[2], S(1));
        const Element<S> lhs = alg.multiply(alg.multiply(x, y), z);
        const Element<S> rhs = alg.multiply(x, alg.multiply(y, z));
        if (lhs == rhs)
            return;
        Witness w{{alg.format(t[0]), alg.format(t[1]), alg.format(t[2])},
                  alg.format(lhs),
                  alg.format(rhs),
                  {}};
        if constexpr (ScalarTraits<S>::is_series) {
            const Element<S> diff = lhs - rhs;
            for (const auto& [m, c] : diff) {
                auto o = ScalarTraits<S>::lowest_order(c);
                if (o && (!w.order || *o < *w.order))
                    w.order = o;
            }
        }
        report.record_failure("associativity", std::move(w));
    });
    return report;
}

} // namespace factorlab
