#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwhit/field.hpp"

namespace mwhit
{

    /**
     * TorusElement: a diagonal element [t,y] = diag(t, y t^{-1}) of GSp(2n),
     * with t-block entries stored by logical index, a[0] = a_1 .. a[n-1] = a_n
     * (the matrix diagonal lists them in reverse order). The similitude factor
     * is lambda([t,y]) = y. Entries are square-class data, which is everything
     * the cocycle and the evaluation formulas consume.
     */
    struct TorusElement
    {
        std::vector<SquareClassElement> a;
        SquareClassElement y;

        TorusElement() = default;
        TorusElement(std::vector<SquareClassElement> entries, SquareClassElement sim)
            : a(std::move(entries)), y(sim) {}

        int n() const { return static_cast<int>(a.size()); }

        static TorusElement identity(int n)
        {
            return {std::vector<SquareClassElement>(n, SquareClassElement::one()),
                    SquareClassElement::one()};
        }

        // c I_{2n} = [c I_n, c^2].
        static TorusElement scalar(const SquareClassElement &c, int n)
        {
            return {std::vector<SquareClassElement>(n, c), c.square()};
        }

        // i(c) = diag(I_n, c I_n) = [I_n, c].
        static TorusElement iota(const SquareClassElement &c, int n)
        {
            return {std::vector<SquareClassElement>(n, SquareClassElement::one()), c};
        }

        SquareClassElement det() const
        {
            SquareClassElement d = SquareClassElement::one();
            for (const auto &x : a)
                d = d * x;
            return d;
        }

        SquareClassElement lambda() const { return y; }

        friend TorusElement operator*(const TorusElement &g1, const TorusElement &g2)
        {
            if (g1.n() != g2.n())
                throw std::invalid_argument("TorusElement: rank mismatch");
            TorusElement r = g1;
            for (int i = 0; i < g1.n(); ++i)
                r.a[i] = g1.a[i] * g2.a[i];
            r.y = g1.y * g2.y;
            return r;
        }

        TorusElement inverse() const
        {
            TorusElement r = *this;
            for (auto &x : r.a)
                x = x.inverse();
            r.y = y.inverse();
            return r;
        }

        bool operator==(const TorusElement &other) const = default;
    };

    // Torus cocycle: c([t,y],[t',y']) = (det t, y' det t')_F.
    inline int cocycle(const TorusElement &g1, const TorusElement &g2, const FieldConfig &cfg)
    {
        return hilbert(g1.det(), g2.y * g2.det(), cfg);
    }

    /**
     * CoverTorusElement: ([t,y], eps) in the double cover, multiplied with the
     * cocycle twist (g1,e1)(g2,e2) = (g1 g2, e1 e2 c(g1,g2)).
     */
    struct CoverTorusElement
    {
        TorusElement base;
        int eps = 1;

        CoverTorusElement() = default;
        CoverTorusElement(TorusElement g, int e) : base(std::move(g)), eps(e)
        {
            if (eps != 1 && eps != -1)
                throw std::invalid_argument("CoverTorusElement: eps must be ±1");
        }

        static CoverTorusElement identity(int n) { return {TorusElement::identity(n), 1}; }

        int n() const { return base.n(); }
        SquareClassElement lambda() const { return base.y; }

        bool operator==(const CoverTorusElement &other) const = default;
    };

    inline CoverTorusElement mul(const CoverTorusElement &h1, const CoverTorusElement &h2,
                                 const FieldConfig &cfg)
    {
        return {h1.base * h2.base, h1.eps * h2.eps * cocycle(h1.base, h2.base, cfg)};
    }

    inline CoverTorusElement inverse(const CoverTorusElement &h, const FieldConfig &cfg)
    {
        const TorusElement gi = h.base.inverse();
        // (g,e)(g^{-1}, e c(g,g^{-1})) = (1,1)
        return {gi, h.eps * cocycle(h.base, gi, cfg)};
    }

    // h^{(b,1)} = (b,1)^{-1} h (b,1), computed in the cover.
    inline CoverTorusElement conjugate(const CoverTorusElement &h, const TorusElement &by,
                                       const FieldConfig &cfg)
    {
        const CoverTorusElement b{by, 1};
        return mul(mul(inverse(b, cfg), h, cfg), b, cfg);
    }

    inline CoverTorusElement conjugate_by_iota(const CoverTorusElement &h,
                                               const SquareClassElement &c,
                                               const FieldConfig &cfg)
    {
        return conjugate(h, TorusElement::iota(c, h.n()), cfg);
    }

    enum class CentralityScope
    {
        cover_gsp,      // the cover of the whole similitude group
        cover_gsp_plus, // the cover of the subgroup with square similitude
        cover_torus     // the cover of the diagonal torus
    };

    /**
     * Centrality of a cover torus element, by the closed-form descriptions:
     * the center of the covered torus is cut out by y and det(t) being square
     * classes; the centers of the covered (similitude) groups are the covers
     * of the scalars F* I_{2n} (n even, or the '+' subgroup) respectively
     * F*^2 I_{2n} (n odd). The eps component is always central.
     */
    inline bool is_central(const CoverTorusElement &h, CentralityScope scope,
                           const FieldConfig & /*cfg*/)
    {
        const TorusElement &g = h.base;
        switch (scope)
        {
        case CentralityScope::cover_torus:
            return g.y.square_class_is_trivial() && g.det().square_class_is_trivial();
        case CentralityScope::cover_gsp_plus:
        case CentralityScope::cover_gsp:
        {
            // scalar test: g == a I_{2n} for the canonical representative a
            const SquareClassElement a0 = g.a.empty() ? SquareClassElement::one() : g.a[0];
            for (const auto &x : g.a)
                if (!(x == a0))
                    return false;
            if (!(g.y == a0.square()))
                return false;
            if (scope == CentralityScope::cover_gsp_plus)
                return true;
            return g.n() % 2 == 0 || a0.square_class_is_trivial();
        }
        }
        return false;
    }

    /**
     * HNormalForm: the factorization
     *   h = (i(pi^{-m}),1) (b I_{2n},1) ([t,1],1) (i(u),eps)
     * with m in {0,1}, b a pure power of pi, u a unit. Recomposing in the
     * cover reproduces h exactly, sign included.
     */
    struct HNormalForm
    {
        int m = 0;
        SquareClassElement b;              // trivial unit class, ord(b) = l
        std::vector<SquareClassElement> t; // logical order a_1..a_n
        SquareClassElement u;              // unit part of lambda(h)
        int eps = 1;

        long l() const { return b.ord; }

        std::vector<long> orders() const
        {
            std::vector<long> k(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                k[i] = t[i].ord;
            return k;
        }

        SquareClassElement det_t() const
        {
            SquareClassElement d = SquareClassElement::one();
            for (const auto &x : t)
                d = d * x;
            return d;
        }
    };

    inline CoverTorusElement recompose(const HNormalForm &nf, const FieldConfig &cfg)
    {
        const int n = static_cast<int>(nf.t.size());
        CoverTorusElement h{TorusElement::iota(SquareClassElement(-nf.m, UnitClass::trivial), n), 1};
        h = mul(h, {TorusElement::scalar(nf.b, n), 1}, cfg);
        h = mul(h, {TorusElement(nf.t, SquareClassElement::one()), 1}, cfg);
        h = mul(h, {TorusElement::iota(nf.u, n), nf.eps}, cfg);
        return h;
    }

    /**
     * Normal form of a cover torus element. With r = ord(lambda(h)):
     * m = r mod 2, b = pi^{(r+m)/2}, u the unit class of lambda(h), the
     * t-block divided through by b, and eps fixed so the recomposition is
     * exact. (The factorization makes lambda(h) = pi^{-m} b^2 u.)
     */
    inline HNormalForm normal_form(const CoverTorusElement &h, const FieldConfig &cfg)
    {
        HNormalForm nf;
        const SquareClassElement y = h.base.y;
        nf.m = static_cast<int>(((y.ord % 2) + 2) % 2);
        nf.b = SquareClassElement((y.ord + nf.m) / 2, UnitClass::trivial);
        nf.u = SquareClassElement(0, y.unit);
        nf.t.reserve(h.base.a.size());
        const SquareClassElement binv = nf.b.inverse();
        for (const auto &x : h.base.a)
            nf.t.push_back(x * binv);
        nf.eps = 1;
        const CoverTorusElement probe = recompose(nf, cfg);
        assert(probe.base == h.base);
        nf.eps = h.eps * probe.eps;
        return nf;
    }

} // namespace mwhit
