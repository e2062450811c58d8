#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "mwhit/gaussian_rational.hpp"

namespace mwhit
{

    /**
     * SparseLaurent: a univariate Laurent polynomial, exponent -> coefficient,
     * with no stored zeros. Instantiated with mpz_class (the coefficient ring
     * Z[v,1/v] of the symbolic layer) and with GaussRat (the value ring
     * Q(i)[v,1/v] of specialized evaluations).
     */
    template <typename Coeff>
    class SparseLaurent
    {
        std::map<long, Coeff> terms_;

        void insert(long e, const Coeff &c)
        {
            if (c == Coeff(0))
                return;
            auto [it, fresh] = terms_.emplace(e, c);
            if (!fresh)
            {
                it->second = it->second + c;
                if (it->second == Coeff(0))
                    terms_.erase(it);
            }
        }

    public:
        SparseLaurent() = default;
        SparseLaurent(const Coeff &c) { insert(0, c); }
        SparseLaurent(long c) { insert(0, Coeff(c)); }

        static SparseLaurent monomial(const Coeff &c, long e)
        {
            SparseLaurent p;
            p.insert(e, c);
            return p;
        }

        const std::map<long, Coeff> &terms() const { return terms_; }
        bool is_zero() const { return terms_.empty(); }
        bool operator==(const SparseLaurent &other) const { return terms_ == other.terms_; }
        bool operator!=(const SparseLaurent &other) const { return !(*this == other); }

        long min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
        long max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

        friend SparseLaurent operator+(const SparseLaurent &a, const SparseLaurent &b)
        {
            SparseLaurent r = a;
            for (const auto &[e, c] : b.terms_)
                r.insert(e, c);
            return r;
        }
        friend SparseLaurent operator-(const SparseLaurent &a, const SparseLaurent &b)
        {
            SparseLaurent r = a;
            for (const auto &[e, c] : b.terms_)
                r.insert(e, Coeff(0) - c);
            return r;
        }
        friend SparseLaurent operator-(const SparseLaurent &a)
        {
            return SparseLaurent() - a;
        }
        friend SparseLaurent operator*(const SparseLaurent &a, const SparseLaurent &b)
        {
            SparseLaurent r;
            for (const auto &[ea, ca] : a.terms_)
                for (const auto &[eb, cb] : b.terms_)
                    r.insert(ea + eb, ca * cb);
            return r;
        }
        SparseLaurent &operator+=(const SparseLaurent &b)
        {
            for (const auto &[e, c] : b.terms_)
                insert(e, c);
            return *this;
        }
        SparseLaurent &operator-=(const SparseLaurent &b)
        {
            for (const auto &[e, c] : b.terms_)
                insert(e, Coeff(0) - c);
            return *this;
        }

        SparseLaurent scaled(const Coeff &c) const
        {
            SparseLaurent r;
            for (const auto &[e, k] : terms_)
                r.insert(e, k * c);
            return r;
        }

        // Multiply by v^shift.
        SparseLaurent shifted(long shift) const
        {
            SparseLaurent r;
            for (const auto &[e, c] : terms_)
                r.terms_.emplace(e + shift, c);
            return r;
        }

        // The single-term test used when dividing by a unit coefficient.
        bool is_unit_monomial() const
        {
            if (terms_.size() != 1)
                return false;
            const Coeff &c = terms_.begin()->second;
            return c == Coeff(1) || c == Coeff(0) - Coeff(1);
        }
    };

    using VPoly = SparseLaurent<mpz_class>;   // Z[v, 1/v], v = q^{1/2}
    using QvPoly = SparseLaurent<GaussRat>;   // Q(i)[v, 1/v]

    inline QvPoly lift_to_qv(const VPoly &p)
    {
        QvPoly r;
        for (const auto &[e, c] : p.terms())
            r += QvPoly::monomial(GaussRat(mpq_class(c)), e);
        return r;
    }

    // Exact quotient in Q(i)[v,1/v]; nullopt when the remainder is non-zero.
    inline std::optional<QvPoly> try_divide(const QvPoly &num, const QvPoly &den)
    {
        if (den.is_zero())
            throw std::domain_error("try_divide: division by zero polynomial");
        if (num.is_zero())
            return QvPoly();
        // Shift both to honest polynomials; Laurent units do not affect divisibility.
        const long sn = num.min_exp(), sd = den.min_exp();
        QvPoly r = num.shifted(-sn);
        const QvPoly d = den.shifted(-sd);
        const long dlead = d.max_exp();
        const GaussRat dc = d.terms().rbegin()->second;
        QvPoly q;
        while (!r.is_zero())
        {
            const long rlead = r.max_exp();
            if (rlead < dlead)
                return std::nullopt;
            const GaussRat qc = r.terms().rbegin()->second / dc;
            const QvPoly qt = QvPoly::monomial(qc, rlead - dlead);
            q += qt;
            r -= qt * d;
        }
        return q.shifted(sn - sd);
    }

    inline QvPoly divide_exact(const QvPoly &num, const QvPoly &den)
    {
        auto q = try_divide(num, den);
        if (!q)
            throw std::domain_error("divide_exact: non-zero remainder");
        return *q;
    }

    // Substitute v^2 = q; requires every exponent to be even.
    inline GaussRat specialize_even_powers(const QvPoly &p, long q)
    {
        GaussRat r;
        const mpq_class qq(q);
        for (const auto &[e, c] : p.terms())
        {
            if (e % 2 != 0)
                throw std::domain_error("specialize_even_powers: odd power of v");
            mpq_class f(1);
            long h = e / 2;
            for (long j = 0; j < (h < 0 ? -h : h); ++j)
                f *= qq;
            if (h < 0)
                f = 1 / f;
            r += c * GaussRat(f);
        }
        return r;
    }

    inline std::string to_string(const VPoly &p)
    {
        if (p.is_zero())
            return "0";
        std::string s;
        for (const auto &[e, c] : p.terms())
        {
            if (!s.empty())
                s += " + ";
            s += c.get_str() + " * v^" + std::to_string(e);
        }
        return s;
    }

    inline std::string to_string(const QvPoly &p)
    {
        if (p.is_zero())
            return "0";
        std::string s;
        for (const auto &[e, c] : p.terms())
        {
            if (!s.empty())
                s += " + ";
            s += "(" + c.to_string() + ") * v^" + std::to_string(e);
        }
        return s;
    }

} // namespace mwhit
