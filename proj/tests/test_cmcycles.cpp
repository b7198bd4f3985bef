#include "doctest.h"

#include "cmcycles/cmcycles.hpp"
#include "modular/classpoly.hpp"
#include "modular/hecke.hpp"
#include "modular/modpoly.hpp"
#include "oracles.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

using namespace singmod;
using namespace singmod::cmcycles;
using oracle::classical_phi2;
using oracle::resultant;

namespace {

Discriminant D(std::int64_t d)
{
    return Discriminant::make(d);
}

// Singular moduli of class number one (literature values).
std::map<std::int64_t, mpz_class> const class_number_one_j = {
    {-3, mpz_class(0)},
    {-4, mpz_class(1728)},
    {-7, mpz_class(-3375)},
    {-8, mpz_class(8000)},
    {-11, mpz_class(-32768)},
    {-19, mpz_class(-884736)},
    {-43, mpz_class(-884736000)},
    {-67, mpz_class("-147197952000")},
    {-163, mpz_class("-262537412640768000")},
};

mpz_class pow4(mpz_class x)
{
    x = abs(x);
    return x * x * x * x;
}

} // namespace

TEST_CASE("cycle_case and d'")
{
    CHECK(cycle_case(D(-3), D(-4)) == CycleKind::big);
    CHECK(cycle_case(D(-4), D(-16)) == CycleKind::small);
    CHECK(cycle_case(D(-3), D(-12)) == CycleKind::small);
    CHECK(small_cycle_discriminant(D(-3), D(-12)).value == -12);
    CHECK(small_cycle_discriminant(D(-12), D(-27)).value == -108);
    CHECK(small_cycle_discriminant(D(-4), D(-4)).value == -4);
    CHECK_THROWS_AS(small_cycle_discriminant(D(-3), D(-4)), DomainError);
}

TEST_CASE("big cycles")
{
    auto c = big_cm_cycle(D(-3), D(-4));
    CHECK(c.kind == CycleKind::big);
    REQUIRE(c.pairs.size() == 1);
    CHECK(c.pairs[0] == CyclePair{{1, 1, 1}, {1, 0, 1}, 4});
    CHECK(c.group_order == 4);
    CHECK(big_cm_cycle(D(-3), D(-23)).group_order == 12);
    CHECK(big_cm_cycle(D(-3), D(-23)).pairs.size() == 3);
    CHECK(big_cm_cycle(D(-15), D(-23)).pairs.size() == 6);
    CHECK(big_cm_cycle(D(-15), D(-23)).group_order == 24);
    CHECK(big_cm_cycle(D(-15), D(-20)).kind == CycleKind::diagnostic);
    CHECK_THROWS_AS(big_cm_cycle(D(-4), D(-16)), DomainError);

    // stable under inverting either coordinate
    for (auto [a, b] : {std::pair{-23, -47}, std::pair{-15, -71}, std::pair{-39, -56}}) {
        auto cyc = big_cm_cycle(D(a), D(b));
        for (int which = 0; which < 2; ++which) {
            auto moved = cyc.pairs;
            for (auto & p : moved)
                (which == 0 ? p.z1 : p.z2) = quadforms::inverse(which == 0 ? p.z1 : p.z2);
            std::sort(moved.begin(), moved.end(),
                      [](auto const & x, auto const & y) { return std::tie(x.z1, x.z2) < std::tie(y.z1, y.z2); });
            CHECK(moved == cyc.pairs);
        }
    }
}

TEST_CASE("small cycles")
{
    auto c = small_cm_cycle(D(-4), D(-4));
    REQUIRE(c.pairs.size() == 1);
    CHECK(c.pairs[0] == CyclePair{{1, 0, 1}, {1, 0, 1}, 2});
    CHECK(c.d_prime->value == -4);
    auto c2 = small_cm_cycle(D(-3), D(-12));
    CHECK(c2.d_prime->value == -12);
    CHECK(c2.group_order == 2);
    auto c3 = small_cm_cycle(D(-12), D(-27));
    CHECK(c3.d_prime->value == -108);
    CHECK(c3.group_order == 2 * 3);
    auto c4 = small_cm_cycle(D(-15), D(-60));
    CHECK(c4.group_order == 2 * static_cast<std::int64_t>(quadforms::class_number(D(-60))));
    for (auto const & p : c4.pairs) {
        CHECK(p.z1.discriminant() == -15);
        CHECK(p.z2.discriminant() == -60);
        CHECK(p.z1.is_reduced());
    }
    // explicit base points
    auto c5 = small_cm_cycle(D(-23), D(-23), quadforms::QuadForm{2, 1, 3}, quadforms::QuadForm{1, 1, 6});
    CHECK(c5.group_order == 6);
    for (auto const & p : c5.pairs)
        CHECK(p.z1 != p.z2);
    CHECK_THROWS_AS(small_cm_cycle(D(-3), D(-4)), DomainError);
    CHECK(build_cycle(D(-4), D(-16)).kind == CycleKind::small);
}

TEST_CASE("log norm examples")
{
    PrecisionContext ctx;
    CHECK(cycle_log_norm(build_cycle(D(-3), D(-4)), 1, ctx).value.to_double()
          == doctest::Approx(4 * std::log(1728.0)).epsilon(1e-14));
    CHECK(cycle_log_norm(build_cycle(D(-3), D(-7)), 1, ctx).value.to_double()
          == doctest::Approx(4 * std::log(3375.0)).epsilon(1e-14));
    try {
        cycle_log_norm(build_cycle(D(-4), D(-16)), 4, ctx);
        FAIL("expected a singularity");
    } catch (CycleSingularity const & e) {
        CHECK(e.pair().z1 == quadforms::QuadForm{1, 0, 1});
        CHECK(e.pair().z2 == quadforms::QuadForm{1, 0, 4});
    }
}

TEST_CASE("exact norms of class number one pairs against literature j-values")
{
    PrecisionContext ctx;
    CHECK(cycle_norm_integer(build_cycle(D(-3), D(-4)), 1, ctx).value == mpz_class("8916100448256"));
    CHECK(cycle_norm_integer(build_cycle(D(-3), D(-7)), 1, ctx).value == pow4(3375));
    for (auto const & [a, ja] : class_number_one_j)
        for (auto const & [b, jb] : class_number_one_j) {
            if (a >= b || std::gcd(a, b) != 1)
                continue;
            CAPTURE(a);
            CAPTURE(b);
            auto cyc = build_cycle(D(a), D(b));
            CHECK(cycle_norm_integer(cyc, 1, ctx).value == pow4(ja - jb));
            mpz_class phi2 = classical_phi2(ja, jb);
            if (phi2 == 0)
                CHECK(find_singular_pair(cyc, 2).has_value());
            else
                CHECK(cycle_norm_integer(cyc, 2, ctx).value == pow4(phi2));
        }
}

TEST_CASE("m = 1 norms equal the fourth power of the class polynomial resultant")
{
    PrecisionContext ctx;
    for (auto [a, b] : {std::pair{-15, -23}, std::pair{-23, -47}, std::pair{-20, -23}, std::pair{-39, -47},
                        std::pair{-3, -71}, std::pair{-35, -24}}) {
        CAPTURE(a);
        CAPTURE(b);
        auto H1 = modular::classpoly(D(a), ctx).coeffs;
        auto H2 = modular::classpoly(D(b), ctx).coeffs;
        auto cyc = build_cycle(D(a), D(b));
        REQUIRE(cyc.kind == CycleKind::big);
        CHECK(cycle_norm_integer(cyc, 1, ctx).value == pow4(resultant(H1, H2)));
    }
}

TEST_CASE("norm invariants")
{
    PrecisionContext ctx;
    for (auto [a, b, m] : {std::tuple{-15, -23, 2}, std::tuple{-7, -20, 3}, std::tuple{-24, -35, 4}}) {
        auto n1 = cycle_norm_integer(build_cycle(D(a), D(b)), m, ctx);
        auto n2 = cycle_norm_integer(build_cycle(D(b), D(a)), m, ctx);
        CHECK(n1.value == n2.value);
        auto n3 = cycle_norm_integer(build_cycle(D(a), D(b)), m, ctx.with_bits(2 * n1.bits));
        CHECK(n3.value == n1.value);
        CHECK(n1.value >= 2);
        CHECK(n1.residual < 1e-20);
        // multi-threaded evaluation is bit-identical
        auto n4 = cycle_norm_integer(build_cycle(D(a), D(b)), m, ctx, 4);
        CHECK(n4.value == n1.value);
    }
}

TEST_CASE("small cycle norms are integers")
{
    PrecisionContext ctx;
    for (auto [a, b, m] : {std::tuple{-3, -12, 1}, std::tuple{-15, -60, 1}, std::tuple{-12, -27, 1},
                           std::tuple{-4, -4, 3}, std::tuple{-23, -92, 2}}) {
        CAPTURE(a);
        CAPTURE(b);
        auto cyc = build_cycle(D(a), D(b));
        if (find_singular_pair(cyc, m))
            continue;
        auto n = cycle_norm_integer(cyc, m, ctx);
        CHECK(n.value >= 2);
        CHECK(n.residual < 1e-20);
    }
    // (-12, -27): one pair with multiplicity 6, so N is a sixth power
    auto n = cycle_norm_integer(build_cycle(D(-12), D(-27)), 1, ctx);
    mpz_class root;
    mpz_root(root.get_mpz_t(), n.value.get_mpz_t(), 6);
    CHECK(root * root * root * root * root * root == n.value);
    CHECK(root == abs(mpz_class(54000) - mpz_class(-12288000)));
}

TEST_CASE("vanishing detection")
{
    CHECK(find_singular_pair(build_cycle(D(-4), D(-4)), 4).has_value());
    CHECK(find_singular_pair(build_cycle(D(-4), D(-4)), 2).has_value());
    CHECK_FALSE(find_singular_pair(build_cycle(D(-4), D(-4)), 3).has_value());
    CHECK(find_singular_pair(build_cycle(D(-4), D(-4)), 1).has_value());
    CHECK_THROWS_AS(cycle_norm_integer(build_cycle(D(-4), D(-16)), 4, PrecisionContext{}), CycleSingularity);
}
