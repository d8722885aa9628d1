#include "doctest.h"

#include "support.hpp"

using namespace factorlab;
using testsupport::flip_plane;
using testsupport::quantum_plane;
using testsupport::quaternions;

namespace {

using X = XElement<Rational>;

X x(const Monomial& b, const Monomial& a, Rational c = Rational(1))
{
    return X({b, a}, c);
}

Rational binom(unsigned n, unsigned k)
{
    return Rational(binomial(n, k));
}

} // namespace

TEST_CASE("flip rule extends to the usual twist")
{
    auto A = commutative_poly<Rational>({"a", "abar"});
    auto B = commutative_poly<Rational>({"b"});
    const Monomial a{1, 0}, abar{0, 1}, b{1};
    auto psi = extend_from_generators<Rational>(A, B, {{a, b, x(b, a)}, {abar, b, x(b, abar)}});
    for (const auto& am : A->basis_up_to(4))
        for (const auto& bm : B->basis_up_to(4))
            CHECK(psi(am, bm) == x(bm, am));
    CHECK(check_axioms(Factorisation<Rational>(A, B, psi), 6).pass);
}

TEST_CASE("quaternion rule extends to the whole basis")
{
    const auto H = quaternions<Rational>();
    const Monomial one{0}, g{1};
    CHECK(H.psi()(g, g) == x(g, g, Rational(-1)));
    CHECK(H.psi()(one, g) == x(g, one));
    CHECK(H.psi()(g, one) == x(one, g));
    CHECK(H.psi()(one, one) == x(one, one));
    CHECK(check_axioms(H, 0).pass);

    // (1 (x) i)(j (x) 1) = -j (x) i
    CHECK(H.x_multiply(x(one, g), x(g, one)) == x(g, g, Rational(-1)));
    // (j (x) 1)(j (x) i) = -1 (x) i
    CHECK(H.x_multiply(x(g, one), x(g, g)) == x(one, g, Rational(-1)));
}

TEST_CASE("x_multiply is associative and unital on quaternion basis triples")
{
    const auto H = quaternions<Rational>();
    std::vector<X> basis;
    for (unsigned b = 0; b < 2; ++b)
        for (unsigned a = 0; a < 2; ++a)
            basis.push_back(x(Monomial{b}, Monomial{a}));
    for (const auto& u : basis) {
        CHECK(H.x_multiply(H.unit(), u) == u);
        CHECK(H.x_multiply(u, H.unit()) == u);
        for (const auto& v : basis)
            for (const auto& w : basis)
                CHECK(H.x_multiply(H.x_multiply(u, v), w) == H.x_multiply(u, H.x_multiply(v, w)));
    }
}

TEST_CASE("x_multiply is associative on the quantum plane up to degree 5")
{
    const auto F = quantum_plane<Rational>(Rational(3));
    REQUIRE(check_axioms(F, 5).pass);
    const std::vector<const BasedAlgebra<Rational>*> slots{&F.B(), &F.A(), &F.B(), &F.A(),
                                                            &F.B(), &F.A()};
    for_each_tuple<Rational>(slots, 5, [&](const MonoTuple& t) {
        const X u = x(t[0], t[1]), v = x(t[2], t[3]), w = x(t[4], t[5]);
        CHECK(F.x_multiply(F.x_multiply(u, v), w) == F.x_multiply(u, F.x_multiply(v, w)));
    });
    const Monomial b{2}, a{1, 0};
    CHECK(F.x_multiply(x(b, F.A().unit()), x(Monomial{1}, a)) == x(Monomial{3}, a));
}

TEST_CASE("quantum plane twist satisfies the axioms")
{
    const QRational q = QRational::q();
    const auto F = quantum_plane<QRational>(q);
    CHECK(check_axioms(F, 6).pass);
    CHECK(F.psi()(Monomial{1, 2}, Monomial{3}) ==
          XElement<QRational>({Monomial{3}, Monomial{1, 2}}, q.pow(6)));
}

TEST_CASE("corrupted flip fails the first axiom")
{
    auto A = commutative_poly<Rational>({"a"});
    auto B = commutative_poly<Rational>({"b"});
    auto psi = TwistMap<Rational>::direct(A, B, [](const Monomial& a, const Monomial& b) {
        const Rational c = (a == Monomial{1} && b == Monomial{1}) ? Rational(2) : Rational(1);
        return x(b, a, c);
    });
    const auto r = check_axioms(Factorisation<Rational>(A, B, psi), 3);
    CHECK_FALSE(r.pass);
    CHECK(r.failed == "twist-product-A");
    REQUIRE(r.witness);
    CHECK(r.witness->inputs == std::vector<std::string>{"a", "a", "b"});
}

TEST_CASE("unit conditions are checked")
{
    auto A = commutative_poly<Rational>({"a"});
    auto B = commutative_poly<Rational>({"b"});
    auto psi = TwistMap<Rational>::direct(A, B, [](const Monomial& a, const Monomial& b) {
        if (a.total() == 0 && b.total() == 1)
            return x(b, a) + x(b, Monomial{1});
        return x(b, a);
    });
    const auto r = check_axioms(Factorisation<Rational>(A, B, psi), 2);
    CHECK_FALSE(r.pass);
}

TEST_CASE("Heisenberg twist matches its closed form")
{
    using T = TSeries<Rational>;
    const unsigned N = 6;
    auto A = commutative_poly<T>({"p"});
    auto B = commutative_poly<T>({"x"});
    const Monomial p{1}, xg{1}, one{0};
    XElement<T> rule({xg, p}, T(Rational(1)));
    rule.add({one, one}, T::t(N));
    auto psi = extend_from_generators<T>(A, B, {{p, xg, rule}});
    for (unsigned m = 0; m <= 5; ++m)
        for (unsigned n = 0; n <= 5; ++n) {
            XElement<T> expected;
            for (unsigned i = 0; i <= std::min(m, n); ++i) {
                const Rational c = Rational(factorial(i)) * binom(m, i) * binom(n, i);
                expected.add({Monomial{n - i}, Monomial{m - i}}, T::monomial(c, i, N));
            }
            CHECK(psi(Monomial{m}, Monomial{n}) == expected);
        }
    CHECK(check_axioms(Factorisation<T>(A, B, psi), 6).pass);
}

TEST_CASE("ambiguous generator rules are detected")
{
    // swapping a and abar does not respect abar a = q a abar
    auto A = q_plane<Rational>(Rational(2));
    auto B = commutative_poly<Rational>({"b"});
    const Monomial a{1, 0}, abar{0, 1}, b{1};
    std::vector<GeneratorRule<Rational>> rules{{a, b, x(b, abar)}, {abar, b, x(b, a)}};
    try {
        extend_from_generators<Rational>(A, B, rules, 3);
        FAIL("expected AmbiguousExtensionError");
    } catch (const AmbiguousExtensionError& e) {
        CHECK(e.witness.lhs != e.witness.rhs);
        CHECK(e.witness.inputs.size() == 3);
    }
    // the compatible rule on the same algebra extends fine
    const Rational q(2);
    CHECK_NOTHROW(extend_from_generators<Rational>(A, B, {{a, b, x(b, a)}, {abar, b, x(b, abar, q)}}, 4));
}

TEST_CASE("generator rule validation")
{
    auto A = commutative_poly<Rational>({"a"});
    auto B = commutative_poly<Rational>({"b"});
    const Monomial a{1}, b{1};
    CHECK_THROWS_AS(extend_from_generators<Rational>(A, B, {}), std::invalid_argument);
    CHECK_THROWS_AS(extend_from_generators<Rational>(A, B, {{a, b, x(b, a)}, {a, b, x(b, a)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(extend_from_generators<Rational>(A, B, {{Monomial{2}, b, x(b, a)}}),
                    std::invalid_argument);
}

TEST_CASE("self-referential rules do not terminate")
{
    auto A = commutative_poly<Rational>({"a"});
    auto B = commutative_poly<Rational>({"b"});
    TwistMap<Rational> psi(A, B, [](const TwistMap<Rational>& self, const Monomial& a,
                                    const Monomial& b) { return self(a, b); });
    CHECK_THROWS_AS(psi(Monomial{1}, Monomial{1}), NonTerminatingError);
    TwistMap<Rational> climbing(A, B, [](const TwistMap<Rational>& self, const Monomial& a,
                                         const Monomial& b) {
        return self(Monomial{a[0] + 1}, b);
    });
    CHECK_THROWS_AS(climbing(Monomial{1}, Monomial{1}), NonTerminatingError);
}

TEST_CASE("twist chains")
{
    const auto F = quantum_plane<Rational>(Rational(5));
    const Monomial abar{0, 1}, a{1, 0}, b{1};
    const Monomial chain_left[] = {abar, abar};
    CHECK(F.twist_chain_left(chain_left, b) == Tensor<Rational>(MonoTuple{b, abar, abar}, Rational(25)));
    const Monomial bs[] = {b, b};
    CHECK(F.twist_chain_right(abar, bs) == Tensor<Rational>(MonoTuple{b, b, abar}, Rational(25)));
    const Monomial single[] = {a};
    CHECK(F.twist_chain_left(single, b) == Tensor<Rational>(MonoTuple{b, a}, Rational(1)));

    const auto P = flip_plane<Rational>();
    const Monomial two[] = {Monomial{2, 1}, Monomial{0, 3}};
    CHECK(P.twist_chain_left(two, Monomial{4}) ==
          Tensor<Rational>(MonoTuple{Monomial{4}, Monomial{2, 1}, Monomial{0, 3}}, Rational(1)));
    const Monomial bb[] = {Monomial{1}, Monomial{2}};
    CHECK(P.twist_chain_right(a, bb) ==
          Tensor<Rational>(MonoTuple{Monomial{1}, Monomial{2}, a}, Rational(1)));
    CHECK_THROWS_AS(P.twist_chain_left({}, b), std::invalid_argument);
}

TEST_CASE("chains with one factor equal the twist and peel recursively")
{
    using T = TSeries<Rational>;
    auto A = commutative_poly<T>({"p"});
    auto B = commutative_poly<T>({"x"});
    XElement<T> rule({Monomial{1}, Monomial{1}}, T(Rational(1)));
    rule.add({Monomial{0}, Monomial{0}}, T::t(4));
    const Factorisation<T> F(A, B, extend_from_generators<T>(A, B, {{Monomial{1}, Monomial{1}, rule}}));

    std::mt19937 rng(9);
    std::uniform_int_distribution<unsigned> e(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const Monomial a1{e(rng)}, a2{e(rng)}, a3{e(rng)}, b{e(rng)}, b2{e(rng)};
        // n = 1
        const Monomial one_a[] = {a1};
        Tensor<T> direct;
        for (const auto& [k, c] : F.psi()(a1, b))
            direct.add(MonoTuple{k.first, k.second}, c);
        CHECK(F.twist_chain_left(one_a, b) == direct);
        const Monomial one_b[] = {b};
        CHECK(F.twist_chain_right(a1, one_b) == direct);

        // chain(a3, a2, a1; b) = (Psi (x) id)(id (x) chain(a2, a1; b)) with a3 outermost
        const Monomial three[] = {a3, a2, a1};
        const Monomial two[] = {a2, a1};
        Tensor<T> peeled;
        for (const auto& [k, c] : F.twist_chain_left(two, b))
            for (const auto& [kt, ct] : F.psi()(a3, k[0]))
                peeled.add(MonoTuple{kt.first, kt.second, k[1], k[2]}, c * ct);
        CHECK(F.twist_chain_left(three, b) == peeled);

        const Monomial bs2[] = {b, b2};
        Tensor<T> peeled_right;
        for (const auto& [k, c] : F.psi()(a1, b))
            for (const auto& [kt, ct] : F.psi()(k.second, b2))
                peeled_right.add(MonoTuple{k.first, kt.first, kt.second}, c * ct);
        CHECK(F.twist_chain_right(a1, bs2) == peeled_right);
    }
}
