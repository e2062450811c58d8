#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mwhit/whittaker.hpp"
#include "oracles.hpp"

using namespace mwhit;

TEST_CASE("UnramifiedData validation")
{
    CHECK_THROWS_AS(UnramifiedData(2, {GaussRat(1)}, GaussRat(1)), std::invalid_argument);
    CHECK_THROWS_AS(UnramifiedData(1, {GaussRat(0)}, GaussRat(1)), std::invalid_argument);
    CHECK_THROWS_AS(UnramifiedData(1, {GaussRat(2)}, GaussRat(0)), std::invalid_argument);
    CHECK_NOTHROW(UnramifiedData(2, {GaussRat::i(), -GaussRat::i()}, GaussRat(3)));
}

TEST_CASE("genuine character evaluation on the Sp-torus cover")
{
    const FieldConfig cfg(3);

    // identity
    const UnramifiedData d1(1, {GaussRat(3)}, GaussRat(1));
    const auto one = chi_psi_eval(d1, CoverTorusElement::identity(1), cfg);
    CHECK(one.scalar == GaussRat(1));
    CHECK(one.phase == Phase::one());

    // diag entry pi with alpha = 3: value 3 * gamma(pi) = 3 g
    const CoverTorusElement t{{{SquareClassElement::pi()}, SquareClassElement::one()}, 1};
    const auto val = chi_psi_eval(d1, t, cfg);
    CHECK(val.scalar == GaussRat(3));
    CHECK(val.phase == Phase::g());

    // genuineness: flipping eps negates
    const CoverTorusElement tneg{t.base, -1};
    CHECK(chi_psi_eval(d1, tneg, cfg).scalar == -GaussRat(3));

    // similitude must be a square class
    const CoverTorusElement bad{{{SquareClassElement::one()}, SquareClassElement::pi()}, 1};
    CHECK_THROWS_AS(chi_psi_eval(d1, bad, cfg), std::domain_error);
    // ... but pi^2 is fine, and only orders matter
    const CoverTorusElement ok{
        {{SquareClassElement(2, UnitClass::u0)}, SquareClassElement(2, UnitClass::trivial)}, 1};
    CHECK(chi_psi_eval(d1, ok, cfg).scalar == GaussRat(9));
}

TEST_CASE("quadratic twists")
{
    const UnramifiedData d(2, {GaussRat(2), GaussRat(5)}, GaussRat(7));

    const UnramifiedData tu = quadratic_twist(d, SquareClassElement::u_0());
    CHECK(tu.alpha == std::vector<GaussRat>{GaussRat(-2), GaussRat(-5)});
    CHECK(tu.beta == GaussRat(7)); // (-1)^n = +1 for n = 2

    CHECK(quadratic_twist(d, SquareClassElement::one()).alpha == d.alpha);
    CHECK(quadratic_twist(d, SquareClassElement(2, UnitClass::trivial)).alpha == d.alpha);
    // an even-order u0 class acts like u0
    CHECK(quadratic_twist(d, SquareClassElement(2, UnitClass::u0)).alpha == tu.alpha);

    CHECK_THROWS_AS(quadratic_twist(d, SquareClassElement::pi()), TwistNotUnramified);
    CHECK_THROWS_AS(quadratic_twist(d, SquareClassElement::pi_u0()), TwistNotUnramified);

    // odd rank also flips beta
    const UnramifiedData d3(3, {GaussRat(2), GaussRat(5), GaussRat(1)}, GaussRat(7));
    CHECK(quadratic_twist(d3, SquareClassElement::u_0()).beta == GaussRat(-7));
}

TEST_CASE("Weyl action on parameters")
{
    const std::vector<GaussRat> ab = {GaussRat(2), GaussRat(3)};
    CHECK(weyl_act_alpha(SignedPermutation::transposition(2, 1), ab) ==
          std::vector<GaussRat>{GaussRat(3), GaussRat(2)});

    CHECK(weyl_act_alpha(SignedPermutation::longest_element(2), ab) ==
          std::vector<GaussRat>{GaussRat(mpq_class(1, 2)), GaussRat(mpq_class(1, 3))});

    // group action property
    std::mt19937 rng(41);
    const auto &group = weyl_group(3);
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    for (int it = 0; it < 50; ++it)
    {
        const auto &w1 = group[pick(rng)];
        const auto &w2 = group[pick(rng)];
        const std::vector<GaussRat> alpha = {GaussRat(2), GaussRat(mpq_class(3, 5)),
                                             GaussRat::i()};
        CHECK(weyl_act_alpha(w1 * w2, alpha) == weyl_act_alpha(w2, weyl_act_alpha(w1, alpha)));
    }
}

TEST_CASE("extension set")
{
    const UnramifiedData d2(2, {GaussRat(2), GaussRat(3)}, GaussRat(7));
    const auto labels2 = extension_set(d2);
    CHECK(labels2[0].alpha == d2.alpha);
    CHECK(labels2[0].beta == GaussRat(7));
    CHECK(labels2[0].branch == Branch::plus);
    CHECK(labels2[1].alpha == std::vector<GaussRat>{GaussRat(-2), GaussRat(-3)});
    CHECK(labels2[1].beta == GaussRat(7));
    CHECK(labels2[2].branch == Branch::minus);
    CHECK(labels2[3].alpha == labels2[1].alpha);

    const UnramifiedData d1(1, {GaussRat(2)}, GaussRat(7));
    const auto labels1 = extension_set(d1);
    CHECK(labels1[1].alpha == std::vector<GaussRat>{GaussRat(-2)});
    CHECK(labels1[1].beta == GaussRat(-7));

    // pairwise distinct when alpha != -alpha
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(!(labels2[i] == labels2[j]));

    // the u0-twist permutes the labels within each branch
    const auto twisted = extension_set(quadratic_twist(d2, SquareClassElement::u_0()));
    CHECK(twisted[0] == labels2[1]);
    CHECK(twisted[1] == labels2[0]);
    CHECK(twisted[2] == labels2[3]);
    CHECK(twisted[3] == labels2[2]);
}

TEST_CASE("extension set is stable under the Weyl action as functions")
{
    const FieldConfig cfg(3);
    const UnramifiedData d(2, {GaussRat(2), GaussRat(mpq_class(3, 5))}, GaussRat(7),
                           Branch::plus, EtaChar::eta_pi);
    const SpanningSet base = spanning_set(d);
    const auto probes = default_probes(2, 3, cfg);
    for (const auto &w : weyl_group(2))
    {
        UnramifiedData moved = d;
        moved.alpha = weyl_act_alpha(w, d.alpha);
        const SpanningSet ms = spanning_set(moved);
        for (int f = 0; f < 4; ++f)
            for (const auto &h : probes)
                CHECK(ms.eval(f, h, cfg) == base.eval(f, h, cfg));
    }
}

TEST_CASE("R(omega): examples")
{
    // n odd: always trivial, even for alpha = i where the flip sends i to -i
    for (const GaussRat &a : {GaussRat(2), GaussRat::i(), GaussRat(-1)})
        CHECK(r_omega(UnramifiedData(1, {a}, GaussRat(1))) == ROmega::trivial);

    // n = 2 with a paired parameter
    for (const GaussRat &a : {GaussRat(2), GaussRat::i(), GaussRat(mpq_class(3, 5))})
        CHECK(r_omega(UnramifiedData(2, {a, -a}, GaussRat(1))) == ROmega::order_two);

    // paired up to inversion
    CHECK(r_omega(UnramifiedData(2, {GaussRat(2), GaussRat(mpq_class(-1, 2))}, GaussRat(1))) ==
          ROmega::order_two);

    // generic
    CHECK(r_omega(UnramifiedData(2, {GaussRat(2), GaussRat(3)}, GaussRat(1))) == ROmega::trivial);

    // self-paired entries alpha^2 = -1 pair among themselves
    CHECK(r_omega(UnramifiedData(2, {GaussRat::i(), GaussRat::i()}, GaussRat(1))) ==
          ROmega::order_two);
    CHECK(r_omega(UnramifiedData(2, {GaussRat::i(), GaussRat(7)}, GaussRat(1))) ==
          ROmega::trivial);
    CHECK(r_omega(UnramifiedData(4,
                                 {GaussRat::i(), GaussRat(2), GaussRat::i(), GaussRat(-2)},
                                 GaussRat(1))) == ROmega::order_two);
}

TEST_CASE("R(omega): brute force agrees with the criterion and is W-stable")
{
    std::mt19937 rng(43);
    for (int n = 1; n <= 4; ++n)
        for (int it = 0; it < 120; ++it)
        {
            const auto alpha = oracles::random_alpha(rng, n);
            CHECK(r_omega_brute(n, alpha) == r_omega_criterion(n, alpha));
            if (n % 2 != 0)
                CHECK(r_omega_brute(n, alpha) == ROmega::trivial);
        }

    // invariance under replacing alpha by ^w alpha
    for (int it = 0; it < 30; ++it)
    {
        const auto alpha = oracles::random_alpha(rng, 2);
        const ROmega expected = r_omega_brute(2, alpha);
        for (const auto &w : weyl_group(2))
            CHECK(r_omega_brute(2, weyl_act_alpha(w, alpha)) == expected);
    }
}

TEST_CASE("classifier")
{
    CHECK(classify(UnramifiedData(2, {GaussRat::i(), -GaussRat::i()}, GaussRat(1))) ==
          Classification::TwoGenericSummands);
    CHECK(classify(UnramifiedData(1, {GaussRat::i()}, GaussRat(1))) ==
          Classification::Irreducible);
    CHECK(classify(UnramifiedData(1, {GaussRat(-1)}, GaussRat(1))) ==
          Classification::Irreducible);
    CHECK(classify(UnramifiedData(2, {GaussRat(2), GaussRat(-2)}, GaussRat(1))) ==
          Classification::Unknown);
    // unitary but unpaired: irreducible
    const GaussRat u(mpq_class(3, 5), mpq_class(4, 5)); // |u| = 1
    CHECK(u.is_unitary());
    CHECK(classify(UnramifiedData(2, {u, u}, GaussRat(1))) == Classification::Irreducible);
    CHECK(classify(UnramifiedData(2, {u, -u}, GaussRat(1))) ==
          Classification::TwoGenericSummands);
}
