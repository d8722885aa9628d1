#include "doctest.h"

#include "factorlab/corpus.hpp"
#include "support.hpp"

using namespace factorlab;
using testsupport::random_cochain;

namespace {

using Q = Rational;

GaugePair<Q> random_gauge(const Factorisation<Q>& F, unsigned order, unsigned seed)
{
    GaugePair<Q> g;
    for (unsigned i = 1; i <= order; ++i) {
        g.alpha.push_back(random_cochain(F, {1, 0}, seed + 7 * i, 1));
        g.beta.push_back(random_cochain(F, {0, 1}, seed + 11 * i, 1));
    }
    return g;
}

} // namespace

TEST_CASE("the undeformed data is valid at every order")
{
    const DeformationData<Q> trivial(quaternion_base<Q>(), 3);
    for (unsigned n = 0; n <= 3; ++n)
        CHECK(check_order(trivial, n, 0).pass);
    const DeformationData<Q> plane(commutative_plane_base<Q>(), 2);
    CHECK(check_order(plane, 2, 4).pass);
    CHECK(check_order(plane, 0, 4).tuples_checked > 0);
    CHECK_THROWS_AS(check_order(plane, 3, 4), std::invalid_argument);
}

TEST_CASE("deformed quaternions")
{
    const auto def = quaternions<Q>(4);
    for (unsigned n = 1; n <= 4; ++n)
        CHECK(check_order(def, n, 0).pass);

    // ij + ji = t in the deformed product of X
    const auto F = deformed_factorisation(def, 4, 4);
    using T = TSeries<Q>;
    const Monomial one{0}, g{1};
    const XElement<T> i({one, g}, T(Q(1))), j({g, one}, T(Q(1)));
    const auto anti = F.x_multiply(i, j) + F.x_multiply(j, i);
    CHECK(anti == XElement<T>({one, one}, T::t(4)));
}

TEST_CASE("a truncated quantum plane twist fails at second order")
{
    const auto def = quantum_plane<Q>(Q(3), 2, 1u);
    CHECK(check_order(def, 1, 4).pass);
    const auto r = check_order(def, 2, 4);
    CHECK_FALSE(r.pass);
    REQUIRE(r.witness);
    CHECK(r.witness->order == std::optional<unsigned>(2));
    CHECK_FALSE(vanishes_on(def.base(), obstruction(def, 2, 3).total(), 3).pass);
}

TEST_CASE("infinitesimal check on the commutative plane and the quantum plane")
{
    const auto plane = commutative_plane<Q>(Q(0), 1);
    const auto r = infinitesimal_cocycle_check(plane, 4);
    CHECK(r.cocycle.pass);
    CHECK(r.deformation.pass);

    const auto qp = quantum_plane<QRational>(QRational::q(), 1);
    CHECK(infinitesimal_cocycle_check(qp, 3).cocycle.pass);

    // doubling Psi^(1) on a single pair breaks both conditions
    auto broken = plane;
    const auto psi1 = plane.psi(1);
    broken.set_psi(1, Cochain<Q>({1, 1}, [psi1](std::span<const Monomial> as, std::span<const Monomial> bs) {
                       auto v = psi1(as, bs);
                       if (as[0] == Monomial{1, 0} && bs[0] == Monomial{1})
                           v = v.scaled(Q(2));
                       return v;
                   }));
    const auto rb = infinitesimal_cocycle_check(broken, 3);
    CHECK_FALSE(rb.cocycle.pass);
    CHECK_FALSE(rb.deformation.pass);
    CHECK(rb.cocycle.witness.has_value());
}

TEST_CASE("unit conditions use the deformed units")
{
    // gauging the undeformed plane by alpha(1) = a moves the unit of A_t
    const DeformationData<Q> plane(commutative_plane_base<Q>(), 2);
    const auto& F = plane.base();
    GaugePair<Q> g;
    g.alpha.push_back(a_valued<Q>(F, 1, [](std::span<const Monomial> as) {
        return as[0] == Monomial{0, 0} ? Element<Q>(Monomial{1, 0}, Q(1)) : Element<Q>{};
    }));
    const auto moved = gauge_transform(plane, g);
    CHECK(check_order(moved, 2, 3).pass);

    // the undeformed unit is no longer a unit
    const auto Ft = deformed_factorisation(moved, 2, 2);
    CHECK(associativity_check(Ft.A(), 3).pass);
    const auto u = deformed_unit<Q>(Ft.A(), 2);
    CHECK_FALSE(u == Ft.A().unit_element());
    using T = TSeries<Q>;
    const Element<T> a(Monomial{1, 0}, T(Q(1)));
    CHECK_FALSE(Ft.A().multiply(Ft.A().unit_element(), a) == a);
    CHECK(Ft.A().multiply(u, a) == a);
}

TEST_CASE("known second-order obstruction of the commutative plane")
{
    const auto def = commutative_plane<Q>(Q(0), 1);
    const auto obs = obstruction(def, 2, 3);
    CHECK(obs.agreement.pass);
    const auto& F = def.base();
    const Monomial one_b{0};

    for_each_tuple<Q>({&F.A(), &F.A(), &F.A()}, 3, [&](const MonoTuple& t) {
        const long l = t[0][1], m = t[1][0], n = t[1][1], p = t[2][0];
        const Q c(l * p * (l * m - n * p));
        CHECK(obs.obs_A(t) == XElement<Q>({one_b, t[0] + t[1] + t[2]}, c));
    });
    for_each_tuple<Q>({&F.A(), &F.A(), &F.B()}, 3, [&](const MonoTuple& t) {
        const long k = t[0][0], l = t[0][1], m = t[1][0], n = t[1][1], r = t[2][0];
        XElement<Q> e;
        auto add = [&](long rb, long ka, long la, long c) {
            if (ka >= 0 && la >= 0)
                e.add({Monomial{unsigned(rb)}, Monomial{unsigned(ka), unsigned(la)}}, Q(c));
        };
        add(r + 1, k + m - 1, l + n + 1, r * ((l * m + k * n) * r + k * m));
        add(r, k + m, l + n, -l * n * r * r);
        add(r + 2, k + m - 2, l + n + 2, -k * m * r * (r + 1));
        CHECK(obs.obs_A_psi(t) == e);
    });
    for_each_tuple<Q>({&F.A(), &F.B(), &F.B()}, 3, [&](const MonoTuple& t) {
        const long k = t[0][0], l = t[0][1], r = t[1][0], s = t[2][0];
        XElement<Q> e;
        auto add = [&](long rb, long ka, long la, long c) {
            if (ka >= 0 && la >= 0)
                e.add({Monomial{unsigned(rb)}, Monomial{unsigned(ka), unsigned(la)}}, Q(c));
        };
        add(r + s, k, l, l * l * r * s);
        add(r + s + 1, k - 1, l + 1, -(2 * l + 1) * k * r * s);
        add(r + s + 2, k - 2, l + 2, (k - 1) * k * r * s);
        CHECK(obs.obs_B_psi(t) == e);
    });
    CHECK(vanishes_on(F, obs.obs_B, 3).pass);
    CHECK(obstruction_is_cocycle(F, obs, 3).pass);
}

TEST_CASE("obstruction precondition")
{
    const auto def = quantum_plane<Q>(Q(3), 3, 1u);
    CHECK_NOTHROW(obstruction(def, 2, 3));
    CHECK_THROWS_AS(obstruction(def, 3, 3), PreconditionError);
}

TEST_CASE("twist-only obstructions reduce to single sums")
{
    const Q q(2);
    const auto def = quantum_plane<Q>(q, 3);
    REQUIRE(def.psi_only());
    const auto& F = def.base();
    const auto& A = F.A();
    const auto& B = F.B();
    auto psi = [&](unsigned i, const Monomial& a, const Monomial& b) {
        return i == 0 ? F.psi()(a, b) : def.psi(i)(MonoTuple{a, b});
    };
    for (unsigned n = 2; n <= 3; ++n) {
        const auto obs = obstruction(def, n, 3);
        CHECK(obs.agreement.pass);
        CHECK(vanishes_on(F, obs.obs_A, 3).pass);
        CHECK(vanishes_on(F, obs.obs_B, 3).pass);
        // -sum (B (x) mu_A)(Psi^(i) (x) A)(A (x) Psi^(n-i))
        for_each_tuple<Q>({&A, &A, &B}, 3, [&](const MonoTuple& t) {
            XElement<Q> e;
            for (unsigned i = 1; i < n; ++i)
                for (const auto& [k1, c1] : psi(n - i, t[1], t[2]))
                    for (const auto& [k2, c2] : psi(i, t[0], k1.first))
                        e.add_scaled(tensor(Element<Q>(k2.first, Q(1)), A.basis_product(k2.second, k1.second)), -(c1 * c2));
            CHECK(obs.obs_A_psi(t) == e);
        });
        // sum (mu_B (x) A)(B (x) Psi^(i))(Psi^(n-i) (x) B)
        for_each_tuple<Q>({&A, &B, &B}, 3, [&](const MonoTuple& t) {
            XElement<Q> e;
            for (unsigned i = 1; i < n; ++i)
                for (const auto& [k1, c1] : psi(n - i, t[0], t[1]))
                    for (const auto& [k2, c2] : psi(i, k1.second, t[2]))
                        e.add_scaled(tensor(B.basis_product(k1.first, k2.first), Element<Q>(k2.second, Q(1))), c1 * c2);
            CHECK(obs.obs_B_psi(t) == e);
        });
    }
}

TEST_CASE("extension of the quaternion deformation")
{
    const auto def = quaternions<Q>(1);
    const auto ext = extend_order(def, 2);
    REQUIRE(ext.status == ExtensionStatus::Extended);
    CHECK(vanishes_on(def.base(), ext.obstruction.total(), 0).pass);
    CHECK(check_order(ext.apply_to(def), 2, 0).pass);
    // freedom is the space of 2-cocycles
    CHECK(ext.freedom.size() == 32 - rank_and_kernel(assemble_D(def.base(), 2).matrix, false).rank);
}

TEST_CASE("second-order extension of the commutative plane")
{
    const auto def = commutative_plane<Q>(Q(0), 1);
    const Caps caps{3, 5};
    const auto ext = extend_order(def, 2, caps);
    REQUIRE(ext.status == ExtensionStatus::Extended);
    const auto& F = def.base();
    const auto extended = ext.apply_to(def);
    CHECK(check_order(extended, 2, caps.input).pass);

    const auto rhs = ext.obstruction.total();
    auto candidate = [&](const Q& c, int sign) {
        TotalCochain<Q> x(2);
        x.set(formulas::plane_mu2(F, c));
        x.set(formulas::plane_psi2(F, c, sign));
        return x;
    };
    // the reference candidate with "+" solves the removal equation, "-" does not
    for (const Q& c : {Q(0), Q(1), Q(-1, 2), Q(7, 3)}) {
        CHECK(vanishes_on(F, total_D(F, candidate(c, 1)) - rhs, 4).pass);
        CHECK_FALSE(vanishes_on(F, total_D(F, candidate(c, -1)) - rhs, 4).pass);
    }

    // candidate - particular solution lies in the span of the freedom
    const auto& cols = ext.solve.assembly.columns;
    for (const Q& c : {Q(0), Q(5, 2)}) {
        std::vector<Q> target = coordinates(cols, candidate(c, 1));
        for (const auto& [i, v] : ext.solve.particular)
            target[i] -= v;
        ExactMatrix<Q> K(cols.size(), ext.solve.kernel.size());
        for (std::size_t j = 0; j < ext.solve.kernel.size(); ++j)
            for (const auto& [i, v] : ext.solve.kernel[j])
                K.add(i, j, v);
        CHECK(solve(K, target, false).consistent);
    }

    // c shifts the solution by c times the order-1 cocycle, which is in the freedom
    const auto first = coordinates(cols, first_order_cochain(def));
    ExactMatrix<Q> K(cols.size(), ext.solve.kernel.size());
    for (std::size_t j = 0; j < ext.solve.kernel.size(); ++j)
        for (const auto& [i, v] : ext.solve.kernel[j])
            K.add(i, j, v);
    CHECK(solve(K, first, false).consistent);
}

TEST_CASE("closed form of the commutative plane")
{
    for (const Q& c : {Q(0), Q(1), Q(-1, 2)}) {
        const auto closed = commutative_plane<Q>(c, 3, PlaneMode::ClosedForm);
        CHECK(check_order(closed, 3, 4).pass);
        const auto stepwise = commutative_plane<Q>(c, 2);
        const auto& F = closed.base();
        for (unsigned i = 1; i <= 2; ++i) {
            CHECK(agree_on(F, closed.mu_A(i), stepwise.mu_A(i), 4, "mu_A").pass);
            CHECK(agree_on(F, closed.psi(i), stepwise.psi(i), 4, "Psi").pass);
        }
    }
    // Psi_t(a (x) b) at c = 0: the b^2 (x) abar slot has t-coefficient -1
    const auto d = commutative_plane<Q>(Q(0), 2, PlaneMode::ClosedForm);
    CHECK(d.psi(1)(MonoTuple{Monomial{1, 0}, Monomial{1}}).coeff({Monomial{2}, Monomial{0, 1}}) == Q(-1));
}

TEST_CASE("gauge transformations")
{
    const auto def = commutative_plane<Q>(Q(1), 2);
    const auto& F = def.base();

    const auto same = gauge_transform(def, GaugePair<Q>{});
    for (unsigned i = 1; i <= 2; ++i) {
        CHECK(agree_on(F, same.mu_A(i), def.mu_A(i), 3, "mu_A").pass);
        CHECK(agree_on(F, same.psi(i), def.psi(i), 3, "Psi").pass);
        CHECK(agree_on(F, same.mu_B(i), def.mu_B(i), 3, "mu_B").pass);
    }

    for (unsigned seed = 0; seed < 3; ++seed) {
        const auto g = random_gauge(F, 2, 100 + seed);
        const auto moved = gauge_transform(def, g);
        // first-order terms differ by D(alpha + beta)
        TotalCochain<Q> ab(1);
        ab.set(g.alpha[0]);
        ab.set(g.beta[0]);
        const auto diff = first_order_cochain(def) - first_order_cochain(moved) - total_D(F, ab);
        CHECK(vanishes_on(F, diff, 3).pass);
        CHECK(agree_on(F, def.psi(1) - moved.psi(1), d_A(F, g.beta[0]) - d_B(F, g.alpha[0]), 3, "Psi").pass);
        // validity is preserved at every order
        for (unsigned n = 0; n <= 2; ++n)
            CHECK(check_order(moved, n, 3).pass);
    }

    // and so is invalidity
    const auto bad = quantum_plane<Q>(Q(2), 2, 1u);
    const auto moved = gauge_transform(bad, random_gauge(bad.base(), 2, 5));
    CHECK(check_order(moved, 1, 3).pass);
    CHECK_FALSE(check_order(moved, 2, 3).pass);
    CHECK_THROWS_AS(gauge_transform(quaternions<Q>(1), random_gauge(quaternion_base<Q>(), 2, 1)),
                    std::invalid_argument);
}

TEST_CASE("first-order triviality")
{
    using Status = TrivialityResult<Q>::Status;
    CHECK(first_order_triviality(quaternions<Q>(1)).status == Status::NotTrivial);

    const DeformationData<Q> flat(quaternion_base<Q>(), 1);
    for (unsigned seed = 0; seed < 5; ++seed) {
        const auto built = gauge_transform(flat, random_gauge(flat.base(), 1, 40 + seed));
        const auto r = first_order_triviality(built);
        REQUIRE(r.status == Status::Trivial);
        const auto cleared = gauge_transform(built, *r.gauge);
        CHECK(vanishes_on(flat.base(), first_order_cochain(cleared), 0).pass);
    }

    const auto qp = quantum_plane<Q>(Q(2), 1);
    CHECK(first_order_triviality(qp, Caps{4, 6}).status == Status::NotTrivial);
    CHECK_THROWS_AS(first_order_triviality(qp), MissingCapsError);
}

TEST_CASE("Heisenberg closed form")
{
    using T = TSeries<Q>;
    const unsigned N = 5;
    const auto def = heisenberg<Q>(N);
    auto A = commutative_poly<T>({"p"});
    auto B = commutative_poly<T>({"x"});
    XElement<T> rule({Monomial{1}, Monomial{1}}, T(Q(1)));
    rule.add({Monomial{0}, Monomial{0}}, T::t(N));
    const auto psi = extend_from_generators<T>(A, B, {{Monomial{1}, Monomial{1}, rule}});
    for (unsigned m = 0; m <= 5; ++m)
        for (unsigned n = 0; n <= 5; ++n) {
            const auto v = psi(Monomial{m}, Monomial{n});
            for (unsigned i = 1; i <= N; ++i)
                CHECK(detail::t_coefficient<Q>(v, i) == def.psi(i)(MonoTuple{Monomial{m}, Monomial{n}}));
        }
    CHECK(check_order(def, 3, 5).pass);
}
