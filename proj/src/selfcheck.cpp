#include "mwhit/selfcheck.hpp"

#include <random>
#include <sstream>

#include "mwhit/whittaker.hpp"

namespace mwhit
{

    namespace
    {

        SquareClassElement random_class(std::mt19937 &rng, long ord_range = 3)
        {
            std::uniform_int_distribution<long> ords(-ord_range, ord_range);
            std::uniform_int_distribution<int> units(0, 1);
            return {ords(rng), units(rng) ? UnitClass::u0 : UnitClass::trivial};
        }

        TorusElement random_torus(std::mt19937 &rng, int n)
        {
            std::vector<SquareClassElement> a;
            for (int i = 0; i < n; ++i)
                a.push_back(random_class(rng));
            return {a, random_class(rng)};
        }

        LaurentPoly random_poly(std::mt19937 &rng, int n, int terms = 5)
        {
            std::uniform_int_distribution<int> exps(-3, 3);
            std::uniform_int_distribution<int> vexp(-2, 2);
            std::uniform_int_distribution<long> coeff(-9, 9);
            LaurentPoly p(n);
            for (int t = 0; t < terms; ++t)
            {
                std::vector<int> e(n);
                for (int i = 0; i < n; ++i)
                    e[i] = exps(rng);
                p += LaurentPoly::monomial(n, e, VPoly::monomial(mpz_class(coeff(rng)), vexp(rng)));
            }
            return p;
        }

        GaussRat random_scalar(std::mt19937 &rng)
        {
            // small pool biased toward structured values
            static const GaussRat pool[] = {
                GaussRat(2),   GaussRat(-2),          GaussRat(3),
                GaussRat(-3),  GaussRat(mpq_class(1, 2)), GaussRat(mpq_class(-1, 2)),
                GaussRat::i(), -GaussRat::i(),        GaussRat(5),
                GaussRat(mpq_class(2, 3))};
            std::uniform_int_distribution<int> pick(0, 9);
            return pool[pick(rng)];
        }

        void add(SelfCheckReport &rep, const std::string &name, bool pass,
                 const std::string &detail)
        {
            rep.checks.push_back({name, pass, detail});
        }

    } // namespace

    SelfCheckReport run_selfcheck(int n_max, const std::vector<long> &qs)
    {
        SelfCheckReport rep;
        std::mt19937 rng(20240717u);

        // field arithmetic: Weil-index multiplicativity and symbol bilinearity,
        // exhaustive over square classes
        {
            bool ok = true;
            long bad_q = 0;
            for (long q : qs)
            {
                const FieldConfig cfg(q);
                for (const auto &a : kSquareClasses)
                    for (const auto &b : kSquareClasses)
                    {
                        const Phase lhs = gamma_weil(a * b, cfg);
                        Phase rhs = mul(gamma_weil(a, cfg), gamma_weil(b, cfg), cfg);
                        rhs.sign *= hilbert(a, b, cfg);
                        if (!(lhs == rhs))
                            ok = false;
                        if (hilbert(a, b, cfg) != hilbert(b, a, cfg))
                            ok = false;
                        for (const auto &c : kSquareClasses)
                            if (hilbert(a * b, c, cfg) != hilbert(a, c, cfg) * hilbert(b, c, cfg))
                                ok = false;
                    }
                if (!ok && bad_q == 0)
                    bad_q = q;
            }
            add(rep, "field.gamma-multiplicativity", ok,
                ok ? "all class pairs, all q" : "failed at q=" + std::to_string(bad_q));
        }

        // torus cover: cocycle identity and normal-form round trip
        {
            bool coc_ok = true, nf_ok = true;
            for (long q : qs)
            {
                const FieldConfig cfg(q);
                for (int n = 1; n <= n_max; ++n)
                    for (int it = 0; it < 300; ++it)
                    {
                        const CoverTorusElement h1{random_torus(rng, n), 1};
                        const CoverTorusElement h2{random_torus(rng, n), -1};
                        const CoverTorusElement h3{random_torus(rng, n), 1};
                        if (!(mul(mul(h1, h2, cfg), h3, cfg) == mul(h1, mul(h2, h3, cfg), cfg)))
                            coc_ok = false;
                        if (!(recompose(normal_form(h1, cfg), cfg) == h1))
                            nf_ok = false;
                    }
            }
            add(rep, "torus.cocycle-associativity", coc_ok, "random triples");
            add(rep, "torus.normal-form-roundtrip", nf_ok, "random elements");
        }

        // alternator: naive and orbit-optimized agree; antisymmetry
        {
            bool ok = true;
            for (int n = 1; n <= std::min(n_max, 3); ++n)
                for (int it = 0; it < 20 && ok; ++it)
                {
                    const LaurentPoly p = random_poly(rng, n);
                    const LaurentPoly a = alternator(p);
                    if (!(a == alternator_naive(p)))
                        ok = false;
                    for (const auto &s : simple_reflections(n))
                        if (!(act(s, a) == -a))
                            ok = false;
                }
            add(rep, "weyl.alternator-agreement", ok, "orbit vs naive, antisymmetry");
        }

        // exact division round trip
        {
            bool ok = true;
            for (int n = 1; n <= std::min(n_max, 3); ++n)
                for (const auto &k : dominant_orders(n, 4))
                    for (int sign : {1, -1})
                    {
                        const LaurentPoly body = whittaker_body(n, TorusOrders(k), sign);
                        const LaurentPoly back = body * weyl_denominator(n);
                        if (!is_alternating(back))
                            ok = false;
                    }
            add(rep, "weyl.delta-division-roundtrip", ok, "dominant grid, both branches");
        }

        // Whittaker closed forms: identity normalization and rank-one agreement
        {
            bool ok = true;
            for (long q : qs)
            {
                const FieldConfig cfg(q);
                for (int n = 1; n <= std::min(n_max, 3); ++n)
                    for (const auto &y : {SquareClassElement::one(), SquareClassElement::pi()})
                    {
                        const WhittakerValue w =
                            sp_whittaker(n, y, TorusOrders(std::vector<long>(n, 0)), cfg);
                        if (!(w.body == LaurentPoly::constant(n, 1)) || w.v_power != 0 ||
                            !(w.phase == Phase::one()))
                            ok = false;
                    }
                for (long k = 0; k <= 6; ++k)
                    if (!(rank_one_whittaker(k, cfg) ==
                          sp_whittaker(1, SquareClassElement::pi(), TorusOrders({k}), cfg)))
                        ok = false;
            }
            add(rep, "whittaker.normalization", ok, "identity value 1; rank-one agreement");
        }

        // symmetry of the k-functions under the whole Weyl group
        {
            bool ok = true;
            for (long q : qs)
            {
                const FieldConfig cfg(q);
                for (int n = 1; n <= std::min(n_max, 2); ++n)
                {
                    std::vector<GaussRat> alpha;
                    for (int i = 0; i < n; ++i)
                        alpha.push_back(random_scalar(rng));
                    const auto probes = default_probes(n, 3, cfg);
                    for (const auto &w : weyl_group(n))
                    {
                        const UnramifiedData da(n, alpha, GaussRat(7), Branch::plus, EtaChar::eta_pi);
                        const UnramifiedData dw(n, weyl_act_alpha(w, alpha), GaussRat(7),
                                                Branch::plus, EtaChar::eta_pi);
                        for (const auto &h : probes)
                            if (!(k_eval(da, h, cfg) == k_eval(dw, h, cfg)))
                                ok = false;
                    }
                }
            }
            add(rep, "whittaker.weyl-symmetry", ok, "exhaustive W, probe grid");
        }

        // structure: dual-route R(omega) (r_omega itself cross-checks), rank collapse
        {
            bool ok = true;
            for (int n = 1; n <= n_max; ++n)
                for (int it = 0; it < 100; ++it)
                {
                    std::vector<GaussRat> alpha;
                    for (int i = 0; i < n; ++i)
                        alpha.push_back(random_scalar(rng));
                    const UnramifiedData d(n, alpha, GaussRat(1));
                    const ROmega r = r_omega(d); // throws on route disagreement
                    if (n % 2 != 0 && r != ROmega::trivial)
                        ok = false;
                }
            const FieldConfig cfg(qs.front());
            if (n_max >= 2)
            {
                const UnramifiedData pair(2, {GaussRat(2), GaussRat(-2)}, GaussRat(1));
                const UnramifiedData gen(2, {GaussRat(2), GaussRat(3)}, GaussRat(1));
                const auto probes = default_probes(2, 3, cfg);
                if (rank_of_span(pair, probes, cfg) != 2)
                    ok = false;
                if (rank_of_span(gen, probes, cfg) != 4)
                    ok = false;
            }
            add(rep, "structure.r-omega-and-rank", ok, "dual-route R(omega); rank collapse");
        }

        // equivariance (n = 1) and intertwining eigenvalues
        {
            bool ok = true;
            for (long q : qs)
            {
                const FieldConfig cfg(q);
                const UnramifiedData d(1, {GaussRat(2)}, GaussRat(3));
                if (!central_equivariance_check(d, cfg).ok())
                    ok = false;
                const auto [plus, minus] = l_ratio_eigenvalues(2, cfg);
                mpq_class ratio(q + 1, 2 * q);
                ratio.canonicalize();
                const GaussRat expected(ratio);
                if (!(specialize_even_powers(plus, q) == expected) ||
                    !(specialize_even_powers(minus, q) == -expected))
                    ok = false;
            }
            add(rep, "structure.equivariance-and-eigenvalues", ok,
                "four distinct central characters; L-ratio");
        }

        return rep;
    }

    std::string format_text(const SelfCheckReport &report)
    {
        std::ostringstream os;
        for (const auto &c : report.checks)
            os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << " - " << c.detail << "\n";
        os << (report.all_pass() ? "selfcheck: all invariants hold\n"
                                 : "selfcheck: INVARIANT VIOLATION\n");
        return os.str();
    }

} // namespace mwhit
