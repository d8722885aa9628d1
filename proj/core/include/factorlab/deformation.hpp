#pragma once

/**
 * @file deformation.hpp
 * @brief Formal deformations mu_A + sum t^i mu_A^(i), Psi + sum t^i Psi^(i),
 * mu_B + sum t^i mu_B^(i) of a factorisation, checked order by order.
 *
 * Sign conventions. With tilde maps built from orders below n,
 *
 *   Obs_A      = [t^n] mu~(mu~ (x) A) - mu~(A (x) mu~)
 *   Obs_{A,Psi} = [t^n] Psi~(mu~_A (x) B) - (B (x) mu~_A)(Psi~ (x) A)(A (x) Psi~)
 *   Obs_{B,Psi} = [t^n] (mu~_B (x) A)(B (x) Psi~)(Psi~ (x) B) - Psi~(A (x) mu~_B)
 *   Obs_B      = [t^n] mu~_B(mu~_B (x) B) - mu~_B(B (x) mu~_B)
 *
 * and the order-n maps must satisfy D(mu_A^(n) + Psi^(n) + mu_B^(n)) = Obs^(n),
 * where Obs^(n) has components m = 3, 2, 1, 0 in that order.
 */

#include "factorlab/cohomology.hpp"

#include <memory>
#include <mutex>

namespace factorlab {

/// An operation was called on deformation data that fails its precondition.
struct PreconditionError : std::runtime_error {
    PreconditionError(const std::string& what, CheckReport r) : std::runtime_error(what), report(std::move(r)) {}
    CheckReport report;
};

template <Field K>
class DeformationData {
public:
    DeformationData(Factorisation<K> base, unsigned order)
        : base_(std::move(base)), muA_(order, Cochain<K>::zero({2, 0})), psi_(order, Cochain<K>::zero({1, 1})),
          muB_(order, Cochain<K>::zero({0, 2}))
    {
    }

    const Factorisation<K>& base() const { return base_; }
    unsigned order() const { return unsigned(psi_.size()); }

    /// Order-i terms for 1 <= i <= order(); edge terms are stored through the inclusions into X.
    const Cochain<K>& mu_A(unsigned i) const { return muA_.at(index(i)); }
    const Cochain<K>& psi(unsigned i) const { return psi_.at(index(i)); }
    const Cochain<K>& mu_B(unsigned i) const { return muB_.at(index(i)); }

    void set_mu_A(unsigned i, const Cochain<K>& c) { assign(muA_, i, c, {2, 0}); }
    void set_psi(unsigned i, const Cochain<K>& c) { assign(psi_, i, c, {1, 1}); }
    void set_mu_B(unsigned i, const Cochain<K>& c) { assign(muB_, i, c, {0, 2}); }

    bool psi_only() const
    {
        auto zero = [](const Cochain<K>& c) { return c.is_zero_rule(); };
        return std::all_of(muA_.begin(), muA_.end(), zero) && std::all_of(muB_.begin(), muB_.end(), zero);
    }

    /// Terms of order <= n only.
    DeformationData truncated(unsigned n) const
    {
        DeformationData d(base_, std::min(n, order()));
        for (unsigned i = 1; i <= d.order(); ++i) {
            d.muA_[i - 1] = muA_[i - 1];
            d.psi_[i - 1] = psi_[i - 1];
            d.muB_[i - 1] = muB_[i - 1];
        }
        return d;
    }

    /// Same data with order raised to n (new terms zero).
    DeformationData extended_to(unsigned n) const
    {
        DeformationData d = *this;
        while (d.order() < n) {
            d.muA_.push_back(Cochain<K>::zero({2, 0}));
            d.psi_.push_back(Cochain<K>::zero({1, 1}));
            d.muB_.push_back(Cochain<K>::zero({0, 2}));
        }
        return d;
    }

private:
    std::size_t index(unsigned i) const
    {
        if (i == 0 || i > order())
            throw std::out_of_range("deformation term of order " + std::to_string(i) + " outside 1.." +
                                    std::to_string(order()));
        return i - 1;
    }
    void assign(std::vector<Cochain<K>>& v, unsigned i, const Cochain<K>& c, BiDegree deg)
    {
        if (c.bidegree() != deg)
            throw std::invalid_argument("deformation term must have bidegree " + deg.str());
        v.at(index(i)) = c.is_zero_rule() ? c : c.memoized();
    }

    Factorisation<K> base_;
    std::vector<Cochain<K>> muA_, psi_, muB_;
};

namespace detail {

template <Scalar S>
Element<S> a_part(const XElement<S>& x, const Monomial& one_b)
{
    Element<S> r;
    for (const auto& [k, c] : x) {
        if (!(k.first == one_b))
            throw std::logic_error("A-valued cochain has a value outside 1 (x) A");
        r.add(k.second, c);
    }
    return r;
}

template <Scalar S>
Element<S> b_part(const XElement<S>& x, const Monomial& one_a)
{
    Element<S> r;
    for (const auto& [k, c] : x) {
        if (!(k.second == one_a))
            throw std::logic_error("B-valued cochain has a value outside B (x) 1");
        r.add(k.first, c);
    }
    return r;
}

template <Scalar K>
TSeries<K> lift(const K& c, unsigned power, unsigned order)
{
    return TSeries<K>::monomial(c, power, order);
}

template <Scalar K, class Key>
LinComb<Key, K> t_coefficient(const LinComb<Key, TSeries<K>>& x, unsigned n)
{
    LinComb<Key, K> r;
    for (const auto& [k, c] : x)
        r.add(k, c.coefficient(n));
    return r;
}

template <Scalar S>
std::optional<unsigned> lowest_order_element(const Element<S>& x)
{
    std::optional<unsigned> best;
    for (const auto& [m, c] : x) {
        auto o = ScalarTraits<S>::lowest_order(c);
        if (o && (!best || *o < *best))
            best = o;
    }
    return best;
}

/// Order-i structure maps of a deformation evaluated over K; order 0 is the base.
template <Field K>
class DeformationMaps {
public:
    explicit DeformationMaps(DeformationData<K> def) : def_(std::move(def)) {}

    const Factorisation<K>& base() const { return def_.base(); }
    const DeformationData<K>& data() const { return def_; }

    Element<K> mu_a(unsigned i, const Monomial& x, const Monomial& y) const
    {
        if (i == 0)
            return base().A().basis_product(x, y);
        return a_part(def_.mu_A(i)(MonoTuple{x, y}), base().B().unit());
    }
    Element<K> mu_b(unsigned i, const Monomial& x, const Monomial& y) const
    {
        if (i == 0)
            return base().B().basis_product(x, y);
        return b_part(def_.mu_B(i)(MonoTuple{x, y}), base().A().unit());
    }
    XElement<K> psi(unsigned i, const Monomial& a, const Monomial& b) const
    {
        if (i == 0)
            return base().psi()(a, b);
        return def_.psi(i)(MonoTuple{a, b});
    }

    Element<K> mu_a(unsigned i, const Element<K>& x, const Element<K>& y) const
    {
        Element<K> r;
        for (const auto& [mx, cx] : x)
            for (const auto& [my, cy] : y)
                r.add_scaled(mu_a(i, mx, my), cx * cy);
        return r;
    }
    Element<K> mu_b(unsigned i, const Element<K>& x, const Element<K>& y) const
    {
        Element<K> r;
        for (const auto& [mx, cx] : x)
            for (const auto& [my, cy] : y)
                r.add_scaled(mu_b(i, mx, my), cx * cy);
        return r;
    }
    XElement<K> psi(unsigned i, const Element<K>& a, const Element<K>& b) const
    {
        XElement<K> r;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b)
                r.add_scaled(psi(i, ma, mb), ca * cb);
        return r;
    }

private:
    DeformationData<K> def_;
};

} // namespace detail

/// The algebras and twist with all terms of order <= max_index, over
/// K[[t]]/(t^{order+1}).
template <Field K>
Factorisation<TSeries<K>> deformed_factorisation(const DeformationData<K>& def, unsigned max_index,
                                                 unsigned order)
{
    using T = TSeries<K>;
    if (max_index > def.order())
        throw std::invalid_argument("deformed_factorisation: order " + std::to_string(max_index) +
                                    " exceeds the data order " + std::to_string(def.order()));
    const auto maps = std::make_shared<const detail::DeformationMaps<K>>(def);
    const auto& base = def.base();
    const unsigned top = std::min(max_index, order);

    auto At = std::make_shared<const BasedAlgebra<T>>(rebase_definition<T, K>(
        base.A(), [maps, top, order](const Monomial& x, const Monomial& y) {
            Element<T> r;
            for (unsigned i = 0; i <= top; ++i)
                for (const auto& [m, c] : maps->mu_a(i, x, y))
                    r.add(m, detail::lift(c, i, order));
            return r;
        }));
    auto Bt = std::make_shared<const BasedAlgebra<T>>(rebase_definition<T, K>(
        base.B(), [maps, top, order](const Monomial& x, const Monomial& y) {
            Element<T> r;
            for (unsigned i = 0; i <= top; ++i)
                for (const auto& [m, c] : maps->mu_b(i, x, y))
                    r.add(m, detail::lift(c, i, order));
            return r;
        }));
    auto psi = TwistMap<T>::direct(At, Bt, [maps, top, order](const Monomial& a, const Monomial& b) {
        XElement<T> r;
        for (unsigned i = 0; i <= top; ++i)
            for (const auto& [k, c] : maps->psi(i, a, b))
                r.add(k, detail::lift(c, i, order));
        return r;
    });
    return Factorisation<T>(At, Bt, std::move(psi));
}

/// Unit of a deformed algebra: u with u x = x for the basis unit x, refined
/// one order at a time.
template <Scalar K>
Element<TSeries<K>> deformed_unit(const BasedAlgebra<TSeries<K>>& alg, unsigned order)
{
    using T = TSeries<K>;
    const Element<T> one(alg.unit(), T::monomial(K(1), 0, order));
    Element<T> u = one;
    for (unsigned j = 0; j < order; ++j)
        u -= alg.multiply(u, one) - one;
    return u;
}

/// Associativity of A_t and B_t and both factorisation axioms with the
/// deformed units, mod t^{n+1}, on basis tuples of degree <= degree_bound.
template <Field K>
CheckReport check_order(const DeformationData<K>& def, unsigned n, unsigned degree_bound)
{
    using T = TSeries<K>;
    if (n > def.order())
        throw std::invalid_argument("check_order: order " + std::to_string(n) + " exceeds the data order " +
                                    std::to_string(def.order()));
    const auto F = deformed_factorisation(def, n, n);
    CheckReport report;
    report.check = "deformation mod t^" + std::to_string(n + 1);

    auto assoc = [&](const BasedAlgebra<T>& alg, const char* name) {
        auto r = associativity_check(alg, degree_bound);
        if (!r.pass)
            r.failed = name;
        report.merge(r);
    };
    assoc(F.A(), "associativity-A");
    assoc(F.B(), "associativity-B");

    auto unit_check = [&](const BasedAlgebra<T>& alg, const Element<T>& u, const char* name) {
        for (const auto& x : alg.basis_up_to(degree_bound)) {
            ++report.tuples_checked;
            const Element<T> ex(x, T(K(1)));
            for (const auto& prod : {alg.multiply(u, ex), alg.multiply(ex, u)}) {
                if (prod == ex)
                    continue;
                Witness w{{alg.format(u), alg.format(x)}, alg.format(prod), alg.format(ex), {}};
                w.order = detail::lowest_order_element<T>(prod - ex);
                report.record_failure(name, std::move(w));
            }
        }
    };
    const Element<T> uA = deformed_unit<K>(F.A(), n), uB = deformed_unit<K>(F.B(), n);
    unit_check(F.A(), uA, "unit-A");
    unit_check(F.B(), uB, "unit-B");
    report.merge(check_axioms<T>(F, degree_bound, Units<T>{uA, uB}));
    return report;
}

/// mu_A^(1) + Psi^(1) + mu_B^(1) as a total 2-cochain.
template <Field K>
TotalCochain<K> first_order_cochain(const DeformationData<K>& def)
{
    if (def.order() < 1)
        throw std::invalid_argument("first_order_cochain: data has no order-1 terms");
    TotalCochain<K> c(2);
    c.set(def.mu_A(1));
    c.set(def.psi(1));
    c.set(def.mu_B(1));
    return c;
}

struct InfinitesimalReport {
    CheckReport cocycle;     // D(first-order triple) = 0
    CheckReport deformation; // check_order at n = 1
};

/// Both verdicts on the first-order terms. They must agree; a disagreement
/// throws std::logic_error since it can only come from a bug.
template <Field K>
InfinitesimalReport infinitesimal_cocycle_check(const DeformationData<K>& def, unsigned degree_bound)
{
    InfinitesimalReport r;
    r.cocycle = vanishes_on(def.base(), total_D(def.base(), first_order_cochain(def)), degree_bound,
                            "first-order terms form a cocycle");
    r.deformation = check_order(def, 1, degree_bound);
    if (r.cocycle.pass != r.deformation.pass)
        throw std::logic_error("cocycle and order-1 verdicts disagree");
    return r;
}

template <Field K>
struct ObstructionClass {
    unsigned n = 0;
    Cochain<K> obs_A = Cochain<K>::zero({3, 0});
    Cochain<K> obs_A_psi = Cochain<K>::zero({2, 1});
    Cochain<K> obs_B_psi = Cochain<K>::zero({1, 2});
    Cochain<K> obs_B = Cochain<K>::zero({0, 3});
    /// Agreement of the summation formulas with t^n extraction.
    CheckReport agreement;

    TotalCochain<K> total() const
    {
        TotalCochain<K> c(3);
        c.set(obs_A);
        c.set(obs_A_psi);
        c.set(obs_B_psi);
        c.set(obs_B);
        return c;
    }
};

/// Obs^(n) from the finite sums over lower-order terms.
template <Field K>
ObstructionClass<K> obstruction_sums(const DeformationData<K>& def, unsigned n)
{
    if (n == 0 || n > def.order() + 1)
        throw std::invalid_argument("obstruction: order must lie in 1.." + std::to_string(def.order() + 1));
    const auto M = std::make_shared<const detail::DeformationMaps<K>>(def.truncated(n - 1));
    const Monomial one_a = def.base().A().unit(), one_b = def.base().B().unit();
    ObstructionClass<K> obs;
    obs.n = n;
    if (n == 1)
        return obs;

    // Gerstenhaber square terms for mu_A and mu_B
    auto square = [n](auto mu) {
        return [n, mu](const Monomial& x, const Monomial& y, const Monomial& z) {
            Element<K> r;
            const Element<K> ex(x, K(1)), ez(z, K(1));
            for (unsigned k = 1; k < n; ++k) {
                r += mu(k, mu(n - k, Element<K>(x, K(1)), Element<K>(y, K(1))), ez);
                r -= mu(k, ex, mu(n - k, Element<K>(y, K(1)), Element<K>(z, K(1))));
            }
            return r;
        };
    };
    const auto sq_a = square([M](unsigned i, const Element<K>& x, const Element<K>& y) { return M->mu_a(i, x, y); });
    const auto sq_b = square([M](unsigned i, const Element<K>& x, const Element<K>& y) { return M->mu_b(i, x, y); });
    obs.obs_A = Cochain<K>({3, 0}, [sq_a, one_b](std::span<const Monomial> as, std::span<const Monomial>) {
                    return tensor(Element<K>(one_b, K(1)), sq_a(as[0], as[1], as[2]));
                }).memoized();
    obs.obs_B = Cochain<K>({0, 3}, [sq_b, one_a](std::span<const Monomial>, std::span<const Monomial> bs) {
                    return tensor(sq_b(bs[0], bs[1], bs[2]), Element<K>(one_a, K(1)));
                }).memoized();

    obs.obs_A_psi = Cochain<K>({2, 1}, [M, n](std::span<const Monomial> as, std::span<const Monomial> bs) {
                        const Monomial &x = as[0], &y = as[1], &b = bs[0];
                        XElement<K> r;
                        for (unsigned k = 1; k < n; ++k)
                            r += M->psi(n - k, M->mu_a(k, x, y), Element<K>(b, K(1)));
                        for (unsigned k = 0; k < n; ++k)
                            for (unsigned l = 0; l < n; ++l) {
                                if (k + l == 0 || k + l > n)
                                    continue;
                                const unsigned j = n - k - l;
                                for (const auto& [k1, c1] : M->psi(j, y, b))
                                    for (const auto& [k2, c2] : M->psi(l, x, k1.first))
                                        r.add_scaled(tensor(Element<K>(k2.first, K(1)), M->mu_a(k, k2.second, k1.second)),
                                                     -(c1 * c2));
                            }
                        return r;
                    }).memoized();

    obs.obs_B_psi = Cochain<K>({1, 2}, [M, n](std::span<const Monomial> as, std::span<const Monomial> bs) {
                        const Monomial &a = as[0], &b = bs[0], &b2 = bs[1];
                        XElement<K> r;
                        for (unsigned k = 0; k < n; ++k)
                            for (unsigned l = 0; l < n; ++l) {
                                if (k + l == 0 || k + l > n)
                                    continue;
                                const unsigned j = n - k - l;
                                for (const auto& [k1, c1] : M->psi(j, a, b))
                                    for (const auto& [k2, c2] : M->psi(l, k1.second, b2))
                                        r.add_scaled(tensor(M->mu_b(k, k1.first, k2.first), Element<K>(k2.second, K(1))),
                                                     c1 * c2);
                            }
                        for (unsigned k = 1; k < n; ++k)
                            r -= M->psi(n - k, Element<K>(a, K(1)), M->mu_b(k, b, b2));
                        return r;
                    }).memoized();
    return obs;
}

/// Obs^(n) as the t^n coefficient of the associativity and axiom defects of
/// the maps truncated below order n.
template <Field K>
ObstructionClass<K> obstruction_extracted(const DeformationData<K>& def, unsigned n)
{
    using T = TSeries<K>;
    if (n == 0 || n > def.order() + 1)
        throw std::invalid_argument("obstruction: order must lie in 1.." + std::to_string(def.order() + 1));
    const auto F = std::make_shared<const Factorisation<T>>(deformed_factorisation(def, n - 1, n));
    const Monomial one_a = def.base().A().unit(), one_b = def.base().B().unit();
    ObstructionClass<K> obs;
    obs.n = n;

    auto assoc_defect = [n](const BasedAlgebra<T>& alg, const Monomial& x, const Monomial& y, const Monomial& z) {
        const Element<T> ex(x, T(K(1))), ey(y, T(K(1))), ez(z, T(K(1)));
        return detail::t_coefficient<K>(alg.multiply(alg.multiply(ex, ey), ez) - alg.multiply(ex, alg.multiply(ey, ez)), n);
    };
    obs.obs_A = Cochain<K>({3, 0}, [F, assoc_defect, one_b](std::span<const Monomial> as, std::span<const Monomial>) {
                    return tensor(Element<K>(one_b, K(1)), assoc_defect(F->A(), as[0], as[1], as[2]));
                }).memoized();
    obs.obs_B = Cochain<K>({0, 3}, [F, assoc_defect, one_a](std::span<const Monomial>, std::span<const Monomial> bs) {
                    return tensor(assoc_defect(F->B(), bs[0], bs[1], bs[2]), Element<K>(one_a, K(1)));
                }).memoized();
    obs.obs_A_psi = Cochain<K>({2, 1}, [F, n](std::span<const Monomial> as, std::span<const Monomial> bs) {
                        const auto& A = F->A();
                        const auto& psi = F->psi();
                        XElement<T> d = psi.apply(A.basis_product(as[0], as[1]), Element<T>(bs[0], T(K(1))));
                        for (const auto& [k1, c1] : psi(as[1], bs[0]))
                            for (const auto& [k2, c2] : psi(as[0], k1.first))
                                d.add_scaled(tensor(Element<T>(k2.first, T(K(1))), A.basis_product(k2.second, k1.second)),
                                             -(c1 * c2));
                        return detail::t_coefficient<K>(d, n);
                    }).memoized();
    obs.obs_B_psi = Cochain<K>({1, 2}, [F, n](std::span<const Monomial> as, std::span<const Monomial> bs) {
                        const auto& B = F->B();
                        const auto& psi = F->psi();
                        XElement<T> d = -psi.apply(Element<T>(as[0], T(K(1))), B.basis_product(bs[0], bs[1]));
                        for (const auto& [k1, c1] : psi(as[0], bs[0]))
                            for (const auto& [k2, c2] : psi(k1.second, bs[1]))
                                d.add_scaled(tensor(B.basis_product(k1.first, k2.first), Element<T>(k2.second, T(K(1)))),
                                             c1 * c2);
                        return detail::t_coefficient<K>(d, n);
                    }).memoized();
    return obs;
}

/// Obs^(n) by the summation formulas, cross-checked against t^n extraction
/// on tuples of degree <= degree_bound. Requires validity at order n - 1.
template <Field K>
ObstructionClass<K> obstruction(const DeformationData<K>& def, unsigned n, unsigned degree_bound)
{
    if (n == 0)
        throw std::invalid_argument("obstruction: order must be positive");
    const auto pre = check_order(def.extended_to(n - 1), n - 1, degree_bound);
    if (!pre.pass)
        throw PreconditionError("deformation is not valid at order " + std::to_string(n - 1), pre);
    auto obs = obstruction_sums(def, n);
    const auto alt = obstruction_extracted(def, n);
    const auto& F = def.base();
    CheckReport& agree = obs.agreement;
    agree.check = "obstruction formulas agree with t^" + std::to_string(n) + " extraction";
    agree.merge(agree_on(F, obs.obs_A, alt.obs_A, degree_bound, "Obs_A"));
    agree.merge(agree_on(F, obs.obs_A_psi, alt.obs_A_psi, degree_bound, "Obs_A,Psi"));
    agree.merge(agree_on(F, obs.obs_B_psi, alt.obs_B_psi, degree_bound, "Obs_B,Psi"));
    agree.merge(agree_on(F, obs.obs_B, alt.obs_B, degree_bound, "Obs_B"));
    return obs;
}

template <Field K>
CheckReport obstruction_is_cocycle(const Factorisation<K>& base, const ObstructionClass<K>& obs, unsigned degree_bound)
{
    return vanishes_on(base, total_D(base, obs.total()), degree_bound, "D Obs = 0");
}

enum class ExtensionStatus { Extended, NonRemovable, Inconclusive };

template <Field K>
struct Extension {
    ExtensionStatus status = ExtensionStatus::Inconclusive;
    std::string reason;
    ObstructionClass<K> obstruction;
    /// Order-n terms solving D(x) = Obs^(n) (when extended).
    std::optional<TotalCochain<K>> terms;
    /// 2-cocycles within the caps; any combination may be added to terms.
    std::vector<TotalCochain<K>> freedom;
    std::optional<Witness> witness;
    CoboundarySolve<K> solve;

    /// The input data with the order-n terms installed.
    DeformationData<K> apply_to(const DeformationData<K>& def) const
    {
        if (!terms)
            throw std::logic_error("extension has no solution to apply");
        auto d = def.extended_to(obstruction.n);
        d.set_mu_A(obstruction.n, terms->component(2));
        d.set_psi(obstruction.n, terms->component(1));
        d.set_mu_B(obstruction.n, terms->component(0));
        return d;
    }
};

/// Solves the removal equation at order n over the (capped) delta basis.
template <Field K>
Extension<K> extend_order(const DeformationData<K>& def, unsigned n, std::optional<Caps> caps = std::nullopt,
                          bool want_freedom = true)
{
    const auto& F = def.base();
    const auto c = effective_caps(F, caps);
    Extension<K> ext;
    ext.obstruction = obstruction(def, n, c ? c->input : 0);
    if (!ext.obstruction.agreement.pass)
        throw std::logic_error("obstruction formulas disagree with t^n extraction");
    ext.solve = solve_coboundary(F, ext.obstruction.total(), c, want_freedom);
    ext.reason = ext.solve.reason;
    ext.witness = ext.solve.witness;
    switch (ext.solve.status) {
    case SolveStatus::Solved:
        ext.status = ExtensionStatus::Extended;
        ext.terms = ext.solve.solution;
        for (const auto& k : ext.solve.kernel)
            ext.freedom.push_back(from_coordinates(F, 2, ext.solve.assembly.columns, k,
                                                   c ? std::optional<unsigned>(c->input) : std::nullopt));
        break;
    case SolveStatus::Inconsistent:
        ext.status = ExtensionStatus::NonRemovable;
        break;
    case SolveStatus::Inconclusive:
        ext.status = ExtensionStatus::Inconclusive;
        break;
    }
    return ext;
}

/// alpha_t = id + sum t^i alpha^(i) on A and beta_t likewise on B, stored as
/// edge cochains of bidegree (1,0) and (0,1). Order 0 is always the identity,
/// so both series are invertible.
template <Field K>
struct GaugePair {
    std::vector<Cochain<K>> alpha;
    std::vector<Cochain<K>> beta;
    unsigned order() const { return unsigned(std::max(alpha.size(), beta.size())); }
};

namespace detail {

/// A series of linear maps id + sum t^i f^(i) on one algebra and its inverse,
/// evaluated on basis monomials with memoisation.
template <Field K>
class MapSeries {
public:
    MapSeries(std::vector<std::function<Element<K>(const Monomial&)>> terms) : terms_(std::move(terms)) {}

    unsigned order() const { return unsigned(terms_.size()); }

    Element<K> term(unsigned i, const Element<K>& x) const
    {
        if (i == 0)
            return x;
        Element<K> r;
        if (i > terms_.size())
            return r;
        for (const auto& [m, c] : x)
            r.add_scaled(terms_[i - 1](m), c);
        return r;
    }

    /// Order-i term of the inverse series: inv^0 = id, inv^i = -sum_{j>=1} f^j inv^{i-j}.
    Element<K> inverse_term(unsigned i, const Element<K>& x) const
    {
        Element<K> r;
        for (const auto& [m, c] : x)
            r.add_scaled(inverse_on(i, m), c);
        return r;
    }

private:
    Element<K> inverse_on(unsigned i, const Monomial& m) const
    {
        if (i == 0)
            return Element<K>(m, K(1));
        {
            std::lock_guard lock(cache_->mu);
            if (auto it = cache_->memo.find({i, m}); it != cache_->memo.end())
                return it->second;
        }
        Element<K> r;
        for (unsigned j = 1; j <= i; ++j)
            r -= term(j, inverse_term(i - j, Element<K>(m, K(1))));
        std::lock_guard lock(cache_->mu);
        return cache_->memo.try_emplace({i, m}, std::move(r)).first->second;
    }

    struct Cache {
        std::mutex mu;
        std::map<std::pair<unsigned, Monomial>, Element<K>> memo;
    };
    std::vector<std::function<Element<K>(const Monomial&)>> terms_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

template <Field K>
XElement<K> tensor_maps(const MapSeries<K>& beta, unsigned i, const MapSeries<K>& alpha, unsigned j, const XElement<K>& x)
{
    XElement<K> r;
    for (const auto& [k, c] : x)
        r.add_scaled(tensor(beta.term(i, Element<K>(k.first, K(1))), alpha.term(j, Element<K>(k.second, K(1)))), c);
    return r;
}

} // namespace detail

/// Transported data alpha mu_A (alpha^-1 (x) alpha^-1), beta mu_B (beta^-1 (x) beta^-1),
/// (beta (x) alpha) Psi (alpha^-1 (x) beta^-1), expanded to the data order.
template <Field K>
DeformationData<K> gauge_transform(const DeformationData<K>& def, const GaugePair<K>& g)
{
    const unsigned N = def.order();
    if (g.order() > N)
        throw std::invalid_argument("gauge_transform: gauge order exceeds the deformation order");
    const auto& F = def.base();
    const Monomial one_a = F.A().unit(), one_b = F.B().unit();
    std::vector<std::function<Element<K>(const Monomial&)>> at, bt;
    for (const auto& c : g.alpha) {
        if (c.bidegree() != BiDegree{1, 0})
            throw std::invalid_argument("gauge_transform: alpha terms must have bidegree (1,0)");
        const auto mc = c.memoized();
        at.push_back([mc, one_b](const Monomial& m) { return detail::a_part(mc(MonoTuple{m}), one_b); });
    }
    for (const auto& c : g.beta) {
        if (c.bidegree() != BiDegree{0, 1})
            throw std::invalid_argument("gauge_transform: beta terms must have bidegree (0,1)");
        const auto mc = c.memoized();
        bt.push_back([mc, one_a](const Monomial& m) { return detail::b_part(mc(MonoTuple{m}), one_a); });
    }
    const auto alpha = std::make_shared<const detail::MapSeries<K>>(std::move(at));
    const auto beta = std::make_shared<const detail::MapSeries<K>>(std::move(bt));
    const auto M = std::make_shared<const detail::DeformationMaps<K>>(def);

    DeformationData<K> out(F, N);
    for (unsigned m = 1; m <= N; ++m) {
        // sum over i + j + k + l = m of f^i(mu^j(f^-k x, f^-l y))
        auto transported = [m, M](const detail::MapSeries<K>& f, auto mu, const Monomial& x, const Monomial& y) {
            Element<K> r;
            for (unsigned i = 0; i <= m; ++i)
                for (unsigned j = 0; i + j <= m; ++j)
                    for (unsigned k = 0; i + j + k <= m; ++k) {
                        const unsigned l = m - i - j - k;
                        const Element<K> xs = f.inverse_term(k, Element<K>(x, K(1)));
                        const Element<K> ys = f.inverse_term(l, Element<K>(y, K(1)));
                        r += f.term(i, mu(j, xs, ys));
                    }
            return r;
        };
        out.set_mu_A(m, Cochain<K>({2, 0}, [=](std::span<const Monomial> as, std::span<const Monomial>) {
                         auto mu = [M](unsigned j, const Element<K>& x, const Element<K>& y) { return M->mu_a(j, x, y); };
                         return tensor(Element<K>(one_b, K(1)), transported(*alpha, mu, as[0], as[1]));
                     }));
        out.set_mu_B(m, Cochain<K>({0, 2}, [=](std::span<const Monomial>, std::span<const Monomial> bs) {
                         auto mu = [M](unsigned j, const Element<K>& x, const Element<K>& y) { return M->mu_b(j, x, y); };
                         return tensor(transported(*beta, mu, bs[0], bs[1]), Element<K>(one_a, K(1)));
                     }));
        out.set_psi(m, Cochain<K>({1, 1}, [=](std::span<const Monomial> as, std::span<const Monomial> bs) {
                        XElement<K> r;
                        for (unsigned k = 0; k <= m; ++k)
                            for (unsigned l = 0; k + l <= m; ++l) {
                                const Element<K> a = alpha->inverse_term(k, Element<K>(as[0], K(1)));
                                const Element<K> b = beta->inverse_term(l, Element<K>(bs[0], K(1)));
                                for (unsigned j = 0; k + l + j <= m; ++j) {
                                    const XElement<K> p = M->psi(j, a, b);
                                    for (unsigned i = 0; k + l + j + i <= m; ++i)
                                        r += detail::tensor_maps(*beta, i, *alpha, m - k - l - j - i, p);
                                }
                            }
                        return r;
                    }));
    }
    return out;
}

template <Field K>
struct TrivialityResult {
    enum class Status { Trivial, NotTrivial, Inconclusive };
    Status status = Status::Inconclusive;
    std::string reason;
    /// First-order gauge removing the order-1 terms (when trivial).
    std::optional<GaugePair<K>> gauge;
    std::optional<Witness> witness;
};

/// Solves D(alpha + beta) = mu_A^(1) + Psi^(1) + mu_B^(1). A solution is a
/// gauge alpha_t = id + t alpha, beta_t = id + t beta that removes the
/// order-1 terms.
template <Field K>
TrivialityResult<K> first_order_triviality(const DeformationData<K>& def, std::optional<Caps> caps = std::nullopt)
{
    using R = TrivialityResult<K>;
    const auto& F = def.base();
    const auto c = effective_caps(F, caps);
    const auto pre = check_order(def, 1, c ? c->input : 0);
    if (!pre.pass)
        throw PreconditionError("deformation is not valid at order 1", pre);
    const auto s = solve_coboundary(F, first_order_cochain(def), c, false);
    R r;
    r.reason = s.reason;
    r.witness = s.witness;
    switch (s.status) {
    case SolveStatus::Solved:
        r.status = R::Status::Trivial;
        r.gauge = GaugePair<K>{{s.solution->component(1)}, {s.solution->component(0)}};
        break;
    case SolveStatus::Inconsistent:
        r.status = R::Status::NotTrivial;
        break;
    case SolveStatus::Inconclusive:
        r.status = R::Status::Inconclusive;
        break;
    }
    return r;
}

} // namespace factorlab
