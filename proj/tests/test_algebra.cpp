#include "doctest.h"

#include "factorlab/algebra.hpp"

#include <random>

using namespace factorlab;

namespace {

Element<Rational> mono(std::initializer_list<unsigned> e, Rational c = Rational(1))
{
    return Element<Rational>(Monomial(e), c);
}

Element<Rational> random_element(const BasedAlgebra<Rational>& alg, std::mt19937& rng, unsigned deg)
{
    const auto basis = alg.basis_up_to(deg);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<long> c(-4, 4);
    Element<Rational> x;
    for (int i = 0; i < 3; ++i)
        x.add(basis[pick(rng)], Rational(c(rng)));
    return x;
}

} // namespace

TEST_CASE("quantum plane products")
{
    const QRational q = QRational::q();
    auto A = q_plane<QRational>(q);
    const Monomial a{1, 0}, abar{0, 1};
    CHECK(A->basis_product(abar, a) == Element<QRational>(Monomial{1, 1}, q));
    CHECK(A->basis_product(a, abar) == Element<QRational>(Monomial{1, 1}, QRational(1)));
    CHECK(A->basis_product(Monomial{2, 1}, Monomial{1, 1}) ==
          Element<QRational>(Monomial{3, 2}, q));
    CHECK(A->basis_product(Monomial{1, 1}, Monomial{1, 1}) ==
          Element<QRational>(Monomial{2, 2}, q));
    CHECK(A->basis_product(Monomial{0, 2}, Monomial{3, 0}) ==
          Element<QRational>(Monomial{3, 2}, q.pow(6)));
    CHECK(associativity_check(*A, 6).pass);
}

TEST_CASE("commutative polynomial products")
{
    auto B = commutative_poly<Rational>({"b"});
    CHECK(B->basis_product(Monomial{2}, Monomial{3}) == mono({5}));
    CHECK(B->basis_product(B->unit(), Monomial{4}) == mono({4}));
    auto A = commutative_poly<Rational>({"a", "abar"});
    CHECK(A->basis_product(Monomial{1, 1}, Monomial{1, 1}) == mono({2, 2}));
    CHECK(A->format(Monomial{2, 1}) == "a^2*abar");
    CHECK(A->format(A->unit()) == "1");
    CHECK_THROWS_AS(commutative_poly<Rational>({"x", "x"}), std::invalid_argument);
    CHECK_THROWS_AS(commutative_poly<Rational>({}), std::invalid_argument);
    CHECK_THROWS_AS(A->basis_product(Monomial{1}, Monomial{1, 0}), UnknownBasisError);
}

TEST_CASE("complex numbers as a table algebra")
{
    auto C = complex_numbers<Rational>("i");
    const Monomial one{0}, i{1};
    CHECK(C->basis_product(i, i) == mono({0}, Rational(-1)));
    CHECK(C->basis_product(one, i) == mono({1}));
    CHECK(C->unit() == one);
    CHECK(C->finite_dimension() == std::size_t(2));

    // (a + b i)(c + d i) has real part ac - bd
    const Rational a(2), b(3), c(-5), d(7);
    Element<Rational> x = mono({0}, a) + mono({1}, b);
    Element<Rational> y = mono({0}, c) + mono({1}, d);
    const auto xy = C->multiply(x, y);
    CHECK(xy.coeff(one) == a * c - b * d);
    CHECK(xy.coeff(i) == a * d + b * c);
    CHECK(associativity_check(*C, 0).pass);
    CHECK_THROWS_AS(C->basis_product(Monomial{2}, i), UnknownBasisError);
}

TEST_CASE("table algebra validation")
{
    using E = Element<Rational>;
    CHECK_THROWS_AS(table_algebra<Rational>({"x", "y"}, {{E(Monomial{1}, Rational(1)), E()},
                                                       {E(), E()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(table_algebra<Rational>({"1"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(table_algebra<Rational>({"1"}, {{E(Monomial{3}, Rational(1))}}),
                    std::invalid_argument);
}

TEST_CASE("corrupted table fails associativity with a witness")
{
    // basis {1, e, f}: e^2 = f, f e = e, e f = 1 is not associative
    using E = Element<Rational>;
    const E one(Monomial{0}, Rational(1)), e(Monomial{1}, Rational(1)), f(Monomial{2}, Rational(1));
    auto T = table_algebra<Rational>({"1", "e", "f"}, {{one, e, f}, {e, f, one}, {f, e, one}});
    const auto r = associativity_check(*T, 1);
    CHECK_FALSE(r.pass);
    REQUIRE(r.witness);
    CHECK(r.witness->inputs.size() == 3);
    CHECK(r.witness->lhs != r.witness->rhs);
}

TEST_CASE("unit laws up to degree 8")
{
    const auto check_units = [](const auto& alg, unsigned bound) {
        for (const auto& m : alg.basis_up_to(bound)) {
            CHECK(alg.basis_product(alg.unit(), m) == Element<Rational>(m, Rational(1)));
            CHECK(alg.basis_product(m, alg.unit()) == Element<Rational>(m, Rational(1)));
        }
    };
    check_units(*commutative_poly<Rational>({"a", "abar"}), 8);
    check_units(*commutative_poly<Rational>({"b"}), 8);
    check_units(*q_plane<Rational>(Rational(3)), 8);
    check_units(*complex_numbers<Rational>("j"), 8);
    CHECK(q_plane<Rational>(Rational(2))->degree(Monomial{0, 0}) == 0);
    CHECK(complex_numbers<Rational>("j")->degree(Monomial{0}) == 0);
}

TEST_CASE("multiply is bilinear")
{
    std::mt19937 rng(5);
    auto A = q_plane<Rational>(Rational(-2, 3));
    for (int t = 0; t < 40; ++t) {
        const auto x = random_element(*A, rng, 3), x2 = random_element(*A, rng, 3);
        const auto y = random_element(*A, rng, 3);
        CHECK(A->multiply(x + x2, y) == A->multiply(x, y) + A->multiply(x2, y));
        CHECK(A->multiply(y, x + x2) == A->multiply(y, x) + A->multiply(y, x2));
        CHECK(A->multiply(x.scaled(Rational(3)), y) == A->multiply(x, y).scaled(Rational(3)));
    }
}

TEST_CASE("quantum plane at q = 1 is the commutative plane")
{
    auto Q = q_plane<Rational>(Rational(1));
    auto P = commutative_poly<Rational>({"a", "abar"});
    for (const auto& x : P->basis_up_to(6))
        for (const auto& y : P->basis_up_to(6 - x.total()))
            CHECK(Q->basis_product(x, y) == P->basis_product(x, y));
}

TEST_CASE("basis enumeration is in canonical order")
{
    auto P = commutative_poly<Rational>({"a", "abar"});
    const auto basis = P->basis_up_to(2);
    REQUIRE(basis.size() == 6);
    CHECK(basis[0] == Monomial{0, 0});
    CHECK(basis[1] == Monomial{0, 1});
    CHECK(basis[2] == Monomial{1, 0});
    CHECK(basis[5] == Monomial{2, 0});
    CHECK(std::is_sorted(basis.begin(), basis.end()));
}

TEST_CASE("tuple enumeration counts degree only on infinite slots")
{
    auto P = commutative_poly<Rational>({"b"});
    auto C = complex_numbers<Rational>("i");
    std::size_t n = 0;
    for_each_tuple<Rational>({C.get(), P.get(), C.get()}, 2, [&](const MonoTuple&) { ++n; });
    CHECK(n == 2 * 3 * 2);
    n = 0;
    for_each_tuple<Rational>({P.get(), P.get()}, 3, [&](const MonoTuple&) { ++n; });
    CHECK(n == 10);
}
