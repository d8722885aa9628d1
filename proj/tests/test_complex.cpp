#include "doctest.h"

#include "support.hpp"

using namespace factorlab;
using testsupport::flip_plane;
using testsupport::quantum_plane;
using testsupport::quaternions;
using testsupport::random_cochain;
using testsupport::random_total;

namespace {

using X = XElement<Rational>;
using E = Element<Rational>;

Factorisation<TSeries<Rational>> heisenberg_twist(unsigned N)
{
    using T = TSeries<Rational>;
    auto A = commutative_poly<T>({"p"});
    auto B = commutative_poly<T>({"x"});
    XElement<T> rule({Monomial{1}, Monomial{1}}, T(Rational(1)));
    rule.add({Monomial{0}, Monomial{0}}, T::t(N));
    return Factorisation<T>(A, B, extend_from_generators<T>(A, B, {{Monomial{1}, Monomial{1}, rule}}));
}

/// d_A d_A, d_B d_B and d_A d_B - d_B d_A vanish on random cochains of all
/// bidegrees with m + n <= 2.
template <Scalar S>
void check_square_zero(const Factorisation<S>& fac, unsigned bound, unsigned seed)
{
    for (unsigned k = 1; k <= 2; ++k)
        for (unsigned m = 0; m <= k; ++m) {
            const BiDegree deg{m, k - m};
            const auto f = random_cochain(fac, deg, seed + 13 * k + m).memoized();
            INFO("bidegree ", deg.str());
            const auto dA = d_A(fac, f).memoized();
            const auto dB = d_B(fac, f).memoized();
            CHECK(vanishes_on(fac, d_A(fac, dA), bound).pass);
            CHECK(vanishes_on(fac, d_B(fac, dB), bound).pass);
            CHECK(vanishes_on(fac, d_A(fac, dB) - d_B(fac, dA), bound).pass);
        }
}

/// Classical Hochschild coboundary of an A-valued m-cochain, m <= 2.
E hochschild(const BasedAlgebra<Rational>& A, const std::function<E(const MonoTuple&)>& f,
             const MonoTuple& args)
{
    const E one(A.unit(), Rational(1));
    auto el = [](const Monomial& m) { return E(m, Rational(1)); };
    auto f_lin = [&](const E& x, const MonoTuple& rest, bool first) {
        E r;
        for (const auto& [mx, cx] : x) {
            MonoTuple t = rest;
            t.insert(first ? t.begin() : t.end(), mx);
            r.add_scaled(f(t), cx);
        }
        return r;
    };
    if (args.size() == 2) {
        const Monomial& x1 = args[0];
        const Monomial& x2 = args[1];
        return A.multiply(el(x1), f({x2})) - f_lin(A.basis_product(x1, x2), {}, true) +
               A.multiply(f({x1}), el(x2));
    }
    const Monomial& x1 = args[0];
    const Monomial& x2 = args[1];
    const Monomial& x3 = args[2];
    return A.multiply(el(x1), f({x2, x3})) - f_lin(A.basis_product(x1, x2), {x3}, true) +
           f_lin(A.basis_product(x2, x3), {x1}, false) - A.multiply(f({x1, x2}), el(x3));
}

} // namespace

TEST_CASE("d_A of the identity on A is the product")
{
    const auto H = quaternions<Rational>();
    const auto alpha = a_valued<Rational>(H, 1, [](std::span<const Monomial> as) {
        return E(as[0], Rational(1));
    });
    const auto d = d_A(H, alpha);
    for_each_tuple<Rational>({&H.A(), &H.A()}, 1, [&](const MonoTuple& t) {
        CHECK(d(t) == tensor(E(H.B().unit(), Rational(1)), H.A().basis_product(t[0], t[1])));
    });
}

TEST_CASE("d_A and d_B on first-order edge cochains")
{
    const auto H = quaternions<Rational>();
    // beta(j) = 1 + j, beta(1) = 2; alpha(i) = 3, alpha(1) = i
    const auto beta_fn = [](std::span<const Monomial> bs) {
        return bs[0] == Monomial{1} ? E(Monomial{0}, Rational(1)) + E(Monomial{1}, Rational(1))
                                    : E(Monomial{0}, Rational(2));
    };
    const auto alpha_fn = [](std::span<const Monomial> as) {
        return as[0] == Monomial{1} ? E(Monomial{0}, Rational(3)) : E(Monomial{1}, Rational(1));
    };
    const auto beta = b_valued<Rational>(H, 1, beta_fn);
    const auto alpha = a_valued<Rational>(H, 1, alpha_fn);
    const auto one_a = E(H.A().unit(), Rational(1));
    const auto one_b = E(H.B().unit(), Rational(1));
    for_each_tuple<Rational>({&H.A(), &H.B()}, 1, [&](const MonoTuple& t) {
        const Monomial a = t[0], b = t[1];
        const X xa = tensor(one_b, E(a, Rational(1)));
        const X xb = tensor(E(b, Rational(1)), one_a);
        // a beta(b) - sum beta(b_nu) a^nu
        X expected = H.x_multiply(xa, tensor(beta_fn(std::span(&b, 1)), one_a));
        for (const auto& [k, c] : H.psi()(a, b))
            expected.add_scaled(tensor(beta_fn(std::span(&k.first, 1)), E(k.second, Rational(1))), -c);
        CHECK(d_A(H, beta)(t) == expected);

        // sum b_nu alpha(a^nu) - alpha(a) b
        X expected_b = -H.x_multiply(tensor(one_b, alpha_fn(std::span(&a, 1))), xb);
        for (const auto& [k, c] : H.psi()(a, b))
            expected_b.add_scaled(tensor(E(k.first, Rational(1)), alpha_fn(std::span(&k.second, 1))), c);
        CHECK(d_B(H, alpha)(t) == expected_b);
    });
}

TEST_CASE("D of a first-order gauge has mixed part d_A beta - d_B alpha")
{
    const auto F = quantum_plane<Rational>(Rational(-3));
    const auto alpha = random_cochain(F, {1, 0}, 4);
    const auto beta = random_cochain(F, {0, 1}, 5);
    TotalCochain<Rational> c(1);
    c.set(alpha);
    c.set(beta);
    const auto Dc = total_D(F, c);
    CHECK(agree_on(F, Dc.component(1), d_A(F, beta) - d_B(F, alpha), 4, "mixed").pass);
    CHECK(agree_on(F, Dc.component(2), d_A(F, alpha), 4, "A edge").pass);
    CHECK(agree_on(F, Dc.component(0), d_B(F, beta), 4, "B edge").pass);
}

TEST_CASE("zero cochains")
{
    const auto H = quaternions<Rational>();
    const auto z = Cochain<Rational>::zero({1, 1});
    CHECK(d_A(H, z).is_zero_rule());
    CHECK(d_B(H, z).is_zero_rule());
    CHECK(vanishes_on(H, total_D(H, TotalCochain<Rational>(2)), 3).pass);
    CHECK_THROWS_AS(Cochain<Rational>::zero({0, 0}), std::invalid_argument);
}

TEST_CASE("cochain arithmetic")
{
    const auto F = flip_plane<Rational>();
    const auto f = random_cochain(F, {1, 1}, 1), g = random_cochain(F, {1, 1}, 2);
    const auto zero = Cochain<Rational>::zero({1, 1});
    CHECK(agree_on(F, f + zero, f, 4, "f + 0").pass);
    CHECK(vanishes_on(F, f - f, 4).pass);
    CHECK(agree_on(F, (f + g).scaled(Rational(2)), f.scaled(Rational(2)) + g.scaled(Rational(2)), 4,
                   "2(f+g)")
              .pass);
    CHECK_THROWS_AS(f + random_cochain(F, {2, 0}, 3), std::invalid_argument);
    const MonoTuple short_args{Monomial{1, 0}};
    CHECK_THROWS_AS(f(short_args), std::invalid_argument);
}

TEST_CASE("coboundaries square to zero and commute")
{
    SUBCASE("quaternions") { check_square_zero(quaternions<Rational>(), 0, 1); }
    SUBCASE("commutative plane") { check_square_zero(flip_plane<Rational>(), 4, 2); }
    SUBCASE("quantum plane, q = 2") { check_square_zero(quantum_plane<Rational>(Rational(2)), 4, 3); }
    SUBCASE("quantum plane, formal q") { check_square_zero(quantum_plane<QRational>(QRational::q()), 3, 4); }
    SUBCASE("Heisenberg") { check_square_zero(heisenberg_twist(4), 4, 5); }
}

TEST_CASE("total D squares to zero on random quaternion cochains")
{
    const auto H = quaternions<Rational>();
    for (unsigned seed = 0; seed < 20; ++seed) {
        const unsigned k = 1 + seed % 2;
        const auto c = random_total(H, k, seed);
        CHECK(vanishes_on(H, total_D(H, total_D(H, c)), 0).pass);
    }
}

TEST_CASE("d_A on A-valued cochains is the Hochschild coboundary")
{
    const auto F = quantum_plane<Rational>(Rational(5, 2));
    const auto& A = F.A();
    for (unsigned m = 1; m <= 2; ++m) {
        const auto f = random_cochain(F, {m, 0}, 40 + m);
        const auto f_a = [&](const MonoTuple& t) {
            E r;
            for (const auto& [k, c] : f(t))
                r.add(k.second, c);
            return r;
        };
        const auto d = d_A(F, f);
        std::vector<const BasedAlgebra<Rational>*> slots(m + 1, &A);
        for_each_tuple<Rational>(slots, 4, [&](const MonoTuple& t) {
            CHECK(d(t) == tensor(E(F.B().unit(), Rational(1)), hochschild(A, f_a, t)));
        });
    }
    // d_B on B-valued cochains, with B = k[b]
    const auto& B = F.B();
    for (unsigned n = 1; n <= 2; ++n) {
        const auto g = random_cochain(F, {0, n}, 50 + n);
        const auto g_b = [&](const MonoTuple& t) {
            E r;
            for (const auto& [k, c] : g(t))
                r.add(k.first, c);
            return r;
        };
        const auto d = d_B(F, g);
        std::vector<const BasedAlgebra<Rational>*> slots(n + 1, &B);
        for_each_tuple<Rational>(slots, 5, [&](const MonoTuple& t) {
            CHECK(d(t) == tensor(hochschild(B, g_b, t), E(F.A().unit(), Rational(1))));
        });
    }
}

TEST_CASE("table cochains report queries beyond their domain")
{
    const auto F = flip_plane<Rational>();
    std::map<MonoTuple, X> values;
    values[{Monomial{1, 0}, Monomial{1}}] = X({Monomial{0}, Monomial{0, 1}}, Rational(1));
    const auto f = table_cochain(F, {1, 1}, values, 2u);
    CHECK(f(MonoTuple{Monomial{1, 0}, Monomial{1}}) == X({Monomial{0}, Monomial{0, 1}}, Rational(1)));
    CHECK(f(MonoTuple{Monomial{0, 1}, Monomial{1}}).is_zero());
    CHECK_THROWS_AS(f(MonoTuple{Monomial{2, 0}, Monomial{1}}), CapEscapeError);
}

TEST_CASE("query tracing")
{
    const auto F = flip_plane<Rational>({"a"});
    const MonoTuple args{Monomial{1}, Monomial{2}, Monomial{3}};
    const auto q = trace_queries<Rational>({1, 1}, [&](const Cochain<Rational>& f) { return d_A(F, f); }, args);
    // a f(a^2, b^3), f(a^3, b^3), f(a, b^3) a^2
    CHECK(q == std::set<MonoTuple>{{Monomial{2}, Monomial{3}}, {Monomial{3}, Monomial{3}}, {Monomial{1}, Monomial{3}}});
}
