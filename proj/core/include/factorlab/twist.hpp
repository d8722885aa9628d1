#pragma once

/**
 * @file twist.hpp
 * @brief Twisting maps A (x) B -> B (x) A and the factorisation X(B,A) they define.
 *
 * A factorisation is the triple (mu_A, mu_B, Psi). Psi is evaluated on basis
 * pairs and memoised; values are finite B (x) A combinations. The axioms
 * checked are
 *
 *   Psi(mu_A (x) B) = (B (x) mu_A)(Psi (x) A)(A (x) Psi),   Psi(1_A (x) b) = b (x) 1_A,
 *   Psi(A (x) mu_B) = (mu_B (x) A)(B (x) Psi)(Psi (x) B),   Psi(a (x) 1_B) = 1_B (x) a,
 *
 * which together say that X = B (x) A with (b a)(b' a') = sum b b'_nu a^nu a'
 * is associative and unital.
 */

#include "factorlab/algebra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <utility>

namespace factorlab {

struct NonTerminatingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguousExtensionError : std::runtime_error {
    AmbiguousExtensionError(const std::string& what, Witness w)
        : std::runtime_error(what), witness(std::move(w))
    {
    }
    Witness witness;
};

/// b (x) a for elements b in B, a in A.
template <Scalar S>
XElement<S> tensor(const Element<S>& b, const Element<S>& a)
{
    XElement<S> r;
    for (const auto& [mb, cb] : b)
        for (const auto& [ma, ca] : a)
            r.add({mb, ma}, cb * ca);
    return r;
}

template <Scalar S>
struct GeneratorRule {
    Monomial a_gen;
    Monomial b_gen;
    XElement<S> value;
};

template <Scalar S>
class TwistMap {
public:
    /// Rule on basis pairs; `self` gives memoised access to the map itself so
    /// that recursive rules share the cache.
    using Rule = std::function<XElement<S>(const TwistMap& self, const Monomial& a, const Monomial& b)>;

    TwistMap(AlgebraPtr<S> A, AlgebraPtr<S> B, Rule rule)
        : A_(std::move(A)), B_(std::move(B)), state_(std::make_shared<State>())
    {
        state_->rule = std::move(rule);
    }

    /// Rule that does not recurse.
    static TwistMap direct(AlgebraPtr<S> A, AlgebraPtr<S> B,
                           std::function<XElement<S>(const Monomial&, const Monomial&)> f)
    {
        return TwistMap(std::move(A), std::move(B),
                        [f = std::move(f)](const TwistMap&, const Monomial& a, const Monomial& b) {
                            return f(a, b);
                        });
    }

    const BasedAlgebra<S>& A() const { return *A_; }
    const BasedAlgebra<S>& B() const { return *B_; }
    const AlgebraPtr<S>& A_ptr() const { return A_; }
    const AlgebraPtr<S>& B_ptr() const { return B_; }

    /// Generator rules this map was extended from, if any (kept for export).
    const std::vector<GeneratorRule<S>>& generator_rules() const { return rules_; }
    void set_generator_rules(std::vector<GeneratorRule<S>> rules) { rules_ = std::move(rules); }

    const XElement<S>& operator()(const Monomial& a, const Monomial& b) const
    {
        const MonoPair key{a, b};
        {
            std::lock_guard lock(state_->mu);
            if (auto it = state_->memo.find(key); it != state_->memo.end())
                return it->second;
            if (!state_->in_progress.insert(key).second)
                throw NonTerminatingError("twist recursion re-entered (" + A_->format(a) + ", " +
                                          B_->format(b) + ")");
            if (state_->in_progress.size() > kDepthWatermark)
                throw NonTerminatingError("twist recursion exceeded depth watermark");
        }
        A_->require(a);
        B_->require(b);
        XElement<S> value;
        try {
            value = state_->rule(*this, a, b);
        } catch (...) {
            std::lock_guard lock(state_->mu);
            state_->in_progress.erase(key);
            throw;
        }
        std::lock_guard lock(state_->mu);
        state_->in_progress.erase(key);
        return state_->memo.try_emplace(key, std::move(value)).first->second;
    }

    XElement<S> apply(const Element<S>& a, const Element<S>& b) const
    {
        XElement<S> r;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b)
                r.add_scaled((*this)(ma, mb), ca * cb);
        return r;
    }

private:
    static constexpr std::size_t kDepthWatermark = 2000;

    struct State {
        Rule rule;
        std::mutex mu;
        std::map<MonoPair, XElement<S>> memo;
        std::set<MonoPair> in_progress;
    };

    AlgebraPtr<S> A_, B_;
    std::shared_ptr<State> state_;
    std::vector<GeneratorRule<S>> rules_;
};

template <Scalar S>
class Factorisation {
public:
    Factorisation(AlgebraPtr<S> A, AlgebraPtr<S> B, TwistMap<S> psi)
        : A_(std::move(A)), B_(std::move(B)), psi_(std::make_shared<const TwistMap<S>>(std::move(psi)))
    {
    }

    const BasedAlgebra<S>& A() const { return *A_; }
    const BasedAlgebra<S>& B() const { return *B_; }
    const AlgebraPtr<S>& A_ptr() const { return A_; }
    const AlgebraPtr<S>& B_ptr() const { return B_; }
    const TwistMap<S>& psi() const { return *psi_; }
    bool finite() const { return A_->finite() && B_->finite(); }

    XElement<S> unit() const { return XElement<S>({B_->unit(), A_->unit()}, S(1)); }

    /// (b (x) a)(b' (x) a') = sum_nu b b'_nu (x) a^nu a'.
    XElement<S> x_multiply(const XElement<S>& x, const XElement<S>& y) const
    {
        XElement<S> r;
        for (const auto& [kx, cx] : x)
            for (const auto& [ky, cy] : y) {
                const S c = cx * cy;
                for (const auto& [kt, ct] : (*psi_)(kx.second, ky.first)) {
                    const Element<S> bb = B_->basis_product(kx.first, kt.first);
                    const Element<S> aa = A_->basis_product(kt.second, ky.second);
                    r.add_scaled(tensor(bb, aa), c * ct);
                }
            }
        return r;
    }

    /// x . a for a in A: multiplies the A factor on the right.
    XElement<S> right_multiply_a(const XElement<S>& x, const Monomial& a) const
    {
        XElement<S> r;
        for (const auto& [k, c] : x)
            for (const auto& [m, cm] : A_->basis_product(k.second, a))
                r.add({k.first, m}, c * cm);
        return r;
    }

    /// b . x for b in B: multiplies the B factor on the left.
    XElement<S> left_multiply_b(const Monomial& b, const XElement<S>& x) const
    {
        XElement<S> r;
        for (const auto& [k, c] : x)
            for (const auto& [m, cm] : B_->basis_product(b, k.first))
                r.add({m, k.second}, c * cm);
        return r;
    }

    /// (Psi (x) A^{n-1})(A (x) Psi (x) A^{n-2})...(A^{n-1} (x) Psi) applied to
    /// a_n (x) ... (x) a_1 (x) b; keys are [b', a_n', ..., a_1'].
    Tensor<S> twist_chain_left(std::span<const Monomial> as, const Monomial& b) const
    {
        if (as.empty())
            throw std::invalid_argument("twist_chain_left: needs at least one A factor");
        Tensor<S> state(MonoTuple{b}, S(1));
        for (std::size_t i = as.size(); i-- > 0;) {
            Tensor<S> next;
            for (const auto& [key, c] : state)
                for (const auto& [kt, ct] : (*psi_)(as[i], key[0])) {
                    MonoTuple k;
                    k.reserve(key.size() + 1);
                    k.push_back(kt.first);
                    k.push_back(kt.second);
                    k.insert(k.end(), key.begin() + 1, key.end());
                    next.add(k, c * ct);
                }
            state = std::move(next);
        }
        return state;
    }

    /// Moves a rightwards past b^1 (x) ... (x) b^n; keys are [b^1', ..., b^n', a'].
    Tensor<S> twist_chain_right(const Monomial& a, std::span<const Monomial> bs) const
    {
        if (bs.empty())
            throw std::invalid_argument("twist_chain_right: needs at least one B factor");
        Tensor<S> state(MonoTuple{a}, S(1));
        for (const auto& b : bs) {
            Tensor<S> next;
            for (const auto& [key, c] : state)
                for (const auto& [kt, ct] : (*psi_)(key.back(), b)) {
                    MonoTuple k(key.begin(), key.end() - 1);
                    k.push_back(kt.first);
                    k.push_back(kt.second);
                    next.add(k, c * ct);
                }
            state = std::move(next);
        }
        return state;
    }

    std::string format(const XElement<S>& x) const
    {
        if (x.is_zero())
            return "0";
        std::string s;
        for (const auto& [k, c] : x) {
            if (!s.empty())
                s += " + ";
            s += "(" + c.str() + ")*" + B_->format(k.first) + "(x)" + A_->format(k.second);
        }
        return s;
    }

private:
    AlgebraPtr<S> A_, B_;
    std::shared_ptr<const TwistMap<S>> psi_;
};

namespace detail {

template <Scalar S>
std::optional<unsigned> lowest_order(const XElement<S>& x)
{
    std::optional<unsigned> best;
    for (const auto& [k, c] : x) {
        auto o = ScalarTraits<S>::lowest_order(c);
        if (o && (!best || *o < *best))
            best = o;
    }
    return best;
}

} // namespace detail

/// Units to test the unit conditions against; defaults to the basis units.
template <Scalar S>
struct Units {
    Element<S> a;
    Element<S> b;
};

/// Verifies both factorisation axioms and both unit conditions on all basis
/// inputs whose degree sum is <= degree_bound.
template <Scalar S>
CheckReport check_axioms(const Factorisation<S>& fac, unsigned degree_bound,
                         std::optional<Units<S>> units = std::nullopt)
{
    const auto& A = fac.A();
    const auto& B = fac.B();
    const auto& psi = fac.psi();
    const Units<S> u = units ? *units : Units<S>{A.unit_element(), B.unit_element()};

    CheckReport report;
    report.check = "twist axioms";
    auto mismatch = [&](const char* identity, std::vector<std::string> inputs,
                        const XElement<S>& lhs, const XElement<S>& rhs) {
        Witness w{std::move(inputs), fac.format(lhs), fac.format(rhs), {}};
        if constexpr (ScalarTraits<S>::is_series)
            w.order = detail::lowest_order<S>(lhs - rhs);
        report.record_failure(identity, std::move(w));
    };

    // Psi(mu_A (x) B) = (B (x) mu_A)(Psi (x) A)(A (x) Psi)
    for_each_tuple<S>({&A, &A, &B}, degree_bound, [&](const MonoTuple& t) {
        ++report.tuples_checked;
        const XElement<S> lhs = psi.apply(A.basis_product(t[0], t[1]), Element<S>(t[2], S(1)));
        XElement<S> rhs;
        for (const auto& [k1, c1] : psi(t[1], t[2]))
            for (const auto& [k2, c2] : psi(t[0], k1.first))
                rhs.add_scaled(tensor(Element<S>(k2.first, S(1)), A.basis_product(k2.second, k1.second)),
                               c1 * c2);
        if (!(lhs == rhs))
            mismatch("twist-product-A", {A.format(t[0]), A.format(t[1]), B.format(t[2])}, lhs, rhs);
    });

    // Psi(A (x) mu_B) = (mu_B (x) A)(B (x) Psi)(Psi (x) B)
    for_each_tuple<S>({&A, &B, &B}, degree_bound, [&](const MonoTuple& t) {
        ++report.tuples_checked;
        const XElement<S> lhs = psi.apply(Element<S>(t[0], S(1)), B.basis_product(t[1], t[2]));
        XElement<S> rhs;
        for (const auto& [k1, c1] : psi(t[0], t[1]))
            for (const auto& [k2, c2] : psi(k1.second, t[2]))
                rhs.add_scaled(tensor(B.basis_product(k1.first, k2.first), Element<S>(k2.second, S(1))),
                               c1 * c2);
        if (!(lhs == rhs))
            mismatch("twist-product-B", {A.format(t[0]), B.format(t[1]), B.format(t[2])}, lhs, rhs);
    });

    for (const auto& b : B.basis_up_to(degree_bound)) {
        ++report.tuples_checked;
        const Element<S> eb(b, S(1));
        const XElement<S> lhs = psi.apply(u.a, eb);
        const XElement<S> rhs = tensor(eb, u.a);
        if (!(lhs == rhs))
            mismatch("twist-unit-A", {A.format(u.a), B.format(b)}, lhs, rhs);
    }
    for (const auto& a : A.basis_up_to(degree_bound)) {
        ++report.tuples_checked;
        const Element<S> ea(a, S(1));
        const XElement<S> lhs = psi.apply(ea, u.b);
        const XElement<S> rhs = tensor(u.b, ea);
        if (!(lhs == rhs))
            mismatch("twist-unit-B", {A.format(a), B.format(u.b)}, lhs, rhs);
    }
    return report;
}

/// Extends generator rules to all basis pairs by peeling generators off the
/// left of a-monomials (first axiom) and then of b-monomials (second axiom).
/// Units are fixed by the unit conditions. Both axioms are then verified for
/// every factorisation of the inputs as basis products, with degree sum
/// <= verify_degree; AmbiguousExtensionError is thrown on disagreement.
template <Scalar S>
TwistMap<S> extend_from_generators(AlgebraPtr<S> A, AlgebraPtr<S> B,
                                   std::vector<GeneratorRule<S>> rules, unsigned verify_degree = 4)
{
    std::map<MonoPair, XElement<S>> table;
    for (const auto& r : rules) {
        if (std::find(A->generators().begin(), A->generators().end(), r.a_gen) ==
                A->generators().end() ||
            std::find(B->generators().begin(), B->generators().end(), r.b_gen) ==
                B->generators().end())
            throw std::invalid_argument("generator rule on non-generator pair (" +
                                        A->format(r.a_gen) + ", " + B->format(r.b_gen) + ")");
        if (!table.emplace(MonoPair{r.a_gen, r.b_gen}, r.value).second)
            throw std::invalid_argument("duplicate generator rule for (" + A->format(r.a_gen) +
                                        ", " + B->format(r.b_gen) + ")");
    }
    for (const auto& ga : A->generators())
        for (const auto& gb : B->generators())
            if (!table.count({ga, gb}))
                throw std::invalid_argument("missing generator rule for (" + A->format(ga) + ", " +
                                            B->format(gb) + ")");

    auto shared = std::make_shared<const std::map<MonoPair, XElement<S>>>(std::move(table));
    const AlgebraPtr<S> Ap = A, Bp = B;
    typename TwistMap<S>::Rule rule = [shared, Ap, Bp](const TwistMap<S>& self, const Monomial& a,
                                                       const Monomial& b) -> XElement<S> {
        if (a == Ap->unit() || b == Bp->unit())
            return XElement<S>({b, a}, S(1));
        if (auto it = shared->find({a, b}); it != shared->end())
            return it->second;
        XElement<S> out;
        if (auto split = Ap->split_left(a); split && !(split->second == Ap->unit())) {
            const auto& [g, rest] = *split;
            for (const auto& [k1, c1] : self(rest, b))
                for (const auto& [k2, c2] : self(g, k1.first))
                    out.add_scaled(tensor(Element<S>(k2.first, S(1)),
                                          Ap->basis_product(k2.second, k1.second)),
                                   c1 * c2);
            return out;
        }
        if (auto split = Bp->split_left(b)) {
            const auto& [h, rest] = *split;
            for (const auto& [k1, c1] : self(a, h))
                for (const auto& [k2, c2] : self(k1.second, rest))
                    out.add_scaled(tensor(Bp->basis_product(k1.first, k2.first),
                                          Element<S>(k2.second, S(1))),
                                   c1 * c2);
            return out;
        }
        throw std::invalid_argument("no generator rule or splitting for (" + Ap->format(a) + ", " +
                                    Bp->format(b) + ")");
    };
    TwistMap<S> psi(A, B, std::move(rule));
    psi.set_generator_rules(std::move(rules));

    // Every way of writing a basis product x y must give the same value.
    const auto report = check_axioms(Factorisation<S>(A, B, psi), verify_degree);
    if (!report.pass)
        throw AmbiguousExtensionError("ambiguous twist extension (" + report.failed + ")",
                                      *report.witness);
    return psi;
}

} // namespace factorlab
