#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mwhit/field.hpp"
#include "oracles.hpp"

using namespace mwhit;

TEST_CASE("FieldConfig accepts odd prime powers and rejects the rest")
{
    for (long q : {3L, 5L, 7L, 9L, 11L, 25L, 27L, 81L, 125L})
        CHECK_NOTHROW(FieldConfig{q});
    for (long q : {1L, 2L, 4L, 8L, 15L, 21L, 45L})
        CHECK_THROWS_AS(FieldConfig{q}, std::invalid_argument);
}

TEST_CASE("squareness of -1 matches the residue computation")
{
    for (long q : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L})
        CHECK(FieldConfig(q).minus_one_is_square() == oracles::minus_one_is_square_mod_prime(q));
    CHECK(FieldConfig(9).minus_one_is_square());  // 9 = 1 mod 4
    CHECK(!FieldConfig(27).minus_one_is_square());
}

TEST_CASE("square class arithmetic")
{
    const auto x = SquareClassElement::pi_u0();
    CHECK(x * x == SquareClassElement(2, UnitClass::trivial));
    CHECK((x * x).square_class_is_trivial());
    CHECK(x.pow(3) == SquareClassElement(3, UnitClass::u0));
    CHECK(x * x.inverse() == SquareClassElement::one());
    CHECK(SquareClassElement(4, UnitClass::u0).same_square_class(SquareClassElement::u_0()));
    CHECK(!SquareClassElement(3, UnitClass::u0).same_square_class(SquareClassElement::u_0()));
}

TEST_CASE("hilbert symbol values")
{
    const FieldConfig q3(3), q5(5);

    CHECK(hilbert(SquareClassElement::u_0(), SquareClassElement::pi(), q3) == -1);
    CHECK(hilbert(SquareClassElement::u_0(), SquareClassElement::pi(), q5) == -1);

    for (const auto &x : kSquareClasses)
    {
        CHECK(hilbert(SquareClassElement::one(), x, q3) == 1);
        CHECK(hilbert(SquareClassElement::one(), x, q5) == 1);
    }

    // (pi,pi) = (-1,pi): decided by whether -1 is a residue square
    for (long q : {3L, 7L, 11L, 5L, 13L})
    {
        const FieldConfig cfg(q);
        const int expected = oracles::minus_one_is_square_mod_prime(q) ? 1 : -1;
        CHECK(hilbert(SquareClassElement::pi(), SquareClassElement::pi(), cfg) == expected);
    }
}

TEST_CASE("hilbert symbol is symmetric, bilinear and non-degenerate")
{
    for (long q : {3L, 5L})
    {
        const FieldConfig cfg(q);
        for (const auto &a : kSquareClasses)
        {
            bool pairs_with_minus_one = false;
            for (const auto &b : kSquareClasses)
            {
                CHECK(hilbert(a, b, cfg) == hilbert(b, a, cfg));
                if (hilbert(a, b, cfg) == -1)
                    pairs_with_minus_one = true;
                for (const auto &c : kSquareClasses)
                    CHECK(hilbert(a * b, c, cfg) == hilbert(a, c, cfg) * hilbert(b, c, cfg));
            }
            if (!a.square_class_is_trivial())
                CHECK(pairs_with_minus_one);
        }
    }
}

TEST_CASE("eta characters")
{
    const FieldConfig cfg(3);
    CHECK(eta(SquareClassElement::u_0(), SquareClassElement(3, UnitClass::u0), cfg) == -1);
    CHECK(eta_u0(SquareClassElement(3, UnitClass::u0)) == -1);
    for (const auto &x : kSquareClasses)
    {
        CHECK(eta(SquareClassElement::one(), x, cfg) == 1);
        CHECK(eta_u0(x) == ((x.ord % 2 == 0) ? 1 : -1));
    }
    CHECK(eta(SquareClassElement::pi(), SquareClassElement::u_0(), cfg) == -1);
    CHECK(eta_pi_on_units(SquareClassElement::u_0()) == -1);
    CHECK(eta_pi_on_units(SquareClassElement(2, UnitClass::trivial)) == 1);
    CHECK_THROWS_AS(eta_pi_on_units(SquareClassElement::pi()), std::domain_error);
}

TEST_CASE("Weil index values on classes")
{
    const FieldConfig q3(3), q5(5);
    CHECK(gamma_weil(SquareClassElement::u_0(), q3) == Phase::one());
    CHECK(gamma_weil(SquareClassElement(3, UnitClass::trivial), q3) == Phase::g());
    // gamma(pi u0) from multiplicativity: gamma(pi) gamma(u0) (pi,u0)
    for (const auto &cfg : {q3, q5})
    {
        Phase expected = mul(gamma_weil(SquareClassElement::pi(), cfg),
                             gamma_weil(SquareClassElement::u_0(), cfg), cfg);
        expected.sign *= hilbert(SquareClassElement::pi(), SquareClassElement::u_0(), cfg);
        CHECK(gamma_weil(SquareClassElement::pi_u0(), cfg) == expected);
        CHECK(gamma_weil(SquareClassElement::pi_u0(), cfg) == Phase::minus_g());
    }
}

TEST_CASE("Weil index is multiplicative up to the symbol, exhaustively")
{
    for (long q : {3L, 5L, 7L, 9L})
    {
        const FieldConfig cfg(q);
        for (const auto &a : kSquareClasses)
            for (const auto &b : kSquareClasses)
            {
                Phase rhs = mul(gamma_weil(a, cfg), gamma_weil(b, cfg), cfg);
                rhs.sign *= hilbert(a, b, cfg);
                CHECK(gamma_weil(a * b, cfg) == rhs);
            }
    }
}

TEST_CASE("the phase group has order four")
{
    const Phase all[4] = {Phase::one(), Phase::minus_one(), Phase::g(), Phase::minus_g()};
    for (long q : {3L, 5L})
    {
        const FieldConfig cfg(q);
        CHECK(mul(Phase::g(), Phase::g(), cfg) ==
              (cfg.minus_one_is_square() ? Phase::one() : Phase::minus_one()));
        for (const auto &p : all)
        {
            CHECK(mul(p, inverse(p, cfg), cfg) == Phase::one());
            // p^4 = 1
            Phase fourth = mul(mul(p, p, cfg), mul(p, p, cfg), cfg);
            CHECK(fourth == Phase::one());
            // closure
            for (const auto &r : all)
            {
                const Phase prod = mul(p, r, cfg);
                CHECK((prod == all[0] || prod == all[1] || prod == all[2] || prod == all[3]));
            }
        }
    }
}
