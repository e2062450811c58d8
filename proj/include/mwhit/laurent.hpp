#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwhit/sparse_poly.hpp"

namespace mwhit
{

    // Graded-lexicographic order on exponent vectors: total degree first, then
    // lexicographic. The canonical term order for division and serialization.
    struct GradedLexLess
    {
        bool operator()(const std::vector<int> &a, const std::vector<int> &b) const
        {
            const long ga = std::accumulate(a.begin(), a.end(), 0L);
            const long gb = std::accumulate(b.begin(), b.end(), 0L);
            if (ga != gb)
                return ga < gb;
            return a < b;
        }
    };

    /**
     * LaurentPoly: a multivariate Laurent polynomial in a_1..a_n with
     * coefficients in Z[v,1/v] (v = q^{1/2}). Exact ring operations; no stored
     * zero coefficients. Terms are kept sorted in graded-lex order so the
     * leading term and the canonical serialization are well defined.
     */
    class LaurentPoly
    {
        int nvars_;
        std::map<std::vector<int>, VPoly, GradedLexLess> terms_;

        void insert(const std::vector<int> &e, const VPoly &c)
        {
            if (c.is_zero())
                return;
            auto [it, fresh] = terms_.emplace(e, c);
            if (!fresh)
            {
                it->second += c;
                if (it->second.is_zero())
                    terms_.erase(it);
            }
        }

        void check_same(const LaurentPoly &other) const
        {
            if (nvars_ != other.nvars_)
                throw std::invalid_argument("LaurentPoly: variable count mismatch");
        }

    public:
        explicit LaurentPoly(int nvars = 0) : nvars_(nvars)
        {
            if (nvars < 0)
                throw std::invalid_argument("LaurentPoly: negative variable count");
        }

        static LaurentPoly constant(int nvars, const VPoly &c)
        {
            LaurentPoly p(nvars);
            p.insert(std::vector<int>(nvars, 0), c);
            return p;
        }
        static LaurentPoly constant(int nvars, long c)
        {
            return constant(nvars, VPoly(c));
        }
        static LaurentPoly monomial(int nvars, const std::vector<int> &exps, const VPoly &c)
        {
            if (static_cast<int>(exps.size()) != nvars)
                throw std::invalid_argument("LaurentPoly::monomial: exponent size mismatch");
            LaurentPoly p(nvars);
            p.insert(exps, c);
            return p;
        }
        // a_i as a polynomial (i is 1-based).
        static LaurentPoly variable(int nvars, int i, int power = 1)
        {
            std::vector<int> e(nvars, 0);
            e.at(i - 1) = power;
            return monomial(nvars, e, VPoly(1));
        }

        int nvars() const { return nvars_; }
        const std::map<std::vector<int>, VPoly, GradedLexLess> &terms() const { return terms_; }
        bool is_zero() const { return terms_.empty(); }
        std::size_t term_count() const { return terms_.size(); }

        bool operator==(const LaurentPoly &other) const
        {
            return nvars_ == other.nvars_ && terms_ == other.terms_;
        }
        bool operator!=(const LaurentPoly &other) const { return !(*this == other); }

        friend LaurentPoly operator+(const LaurentPoly &a, const LaurentPoly &b)
        {
            a.check_same(b);
            LaurentPoly r = a;
            for (const auto &[e, c] : b.terms_)
                r.insert(e, c);
            return r;
        }
        friend LaurentPoly operator-(const LaurentPoly &a, const LaurentPoly &b)
        {
            a.check_same(b);
            LaurentPoly r = a;
            for (const auto &[e, c] : b.terms_)
                r.insert(e, VPoly() - c);
            return r;
        }
        friend LaurentPoly operator-(const LaurentPoly &a)
        {
            return LaurentPoly(a.nvars_) - a;
        }
        friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
        {
            a.check_same(b);
            LaurentPoly r(a.nvars_);
            std::vector<int> e(a.nvars_);
            for (const auto &[ea, ca] : a.terms_)
                for (const auto &[eb, cb] : b.terms_)
                {
                    for (int i = 0; i < a.nvars_; ++i)
                        e[i] = ea[i] + eb[i];
                    r.insert(e, ca * cb);
                }
            return r;
        }
        LaurentPoly &operator+=(const LaurentPoly &b)
        {
            check_same(b);
            for (const auto &[e, c] : b.terms_)
                insert(e, c);
            return *this;
        }
        LaurentPoly &operator-=(const LaurentPoly &b)
        {
            check_same(b);
            for (const auto &[e, c] : b.terms_)
                insert(e, VPoly() - c);
            return *this;
        }

        LaurentPoly scaled(const VPoly &c) const
        {
            LaurentPoly r(nvars_);
            for (const auto &[e, k] : terms_)
                r.insert(e, k * c);
            return r;
        }

        // Multiply by the monomial prod a_i^{shift_i} (v untouched).
        LaurentPoly shifted(const std::vector<int> &shift) const
        {
            LaurentPoly r(nvars_);
            std::vector<int> e(nvars_);
            for (const auto &[ea, c] : terms_)
            {
                for (int i = 0; i < nvars_; ++i)
                    e[i] = ea[i] + shift[i];
                r.terms_.emplace(e, c);
            }
            return r;
        }

        // Componentwise minimum of exponents over all terms (0 for the zero poly).
        std::vector<int> min_exponents() const
        {
            std::vector<int> m(nvars_, 0);
            bool first = true;
            for (const auto &[e, c] : terms_)
            {
                for (int i = 0; i < nvars_; ++i)
                    m[i] = first ? e[i] : std::min(m[i], e[i]);
                first = false;
            }
            return m;
        }

        // Substitute exact values for a_1..a_n; the result keeps v symbolic.
        QvPoly specialize(const std::vector<GaussRat> &alpha) const
        {
            if (static_cast<int>(alpha.size()) != nvars_)
                throw std::invalid_argument("LaurentPoly::specialize: alpha size mismatch");
            QvPoly r;
            for (const auto &[e, c] : terms_)
            {
                GaussRat m(1);
                for (int i = 0; i < nvars_; ++i)
                    if (e[i] != 0)
                        m *= alpha[i].pow(e[i]);
                r += lift_to_qv(c).scaled(m);
            }
            return r;
        }

        /**
         * Canonical serialization: flat terms "c * v^a * a1^e1 * ... * an^en"
         * joined by " + ". Alpha exponents run in descending graded-lex order;
         * within one alpha monomial the v exponents ascend. The zero
         * polynomial prints as "0".
         */
        std::string to_canonical_string() const
        {
            if (terms_.empty())
                return "0";
            std::string s;
            for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            {
                for (const auto &[ve, c] : it->second.terms())
                {
                    if (!s.empty())
                        s += " + ";
                    s += c.get_str() + " * v^" + std::to_string(ve);
                    for (int i = 0; i < nvars_; ++i)
                        s += " * a" + std::to_string(i + 1) + "^" + std::to_string(it->first[i]);
                }
            }
            return s;
        }
    };

    struct NotAlternating : std::domain_error
    {
        NotAlternating() : std::domain_error("divide_by_delta: input is not alternating") {}
    };

    struct NonDivisible : std::domain_error
    {
        NonDivisible() : std::domain_error("polynomial division left a non-zero remainder") {}
    };

    /**
     * Exact single-divisor division p = q*d in the Laurent ring; nullopt when
     * the remainder is non-zero. Both arguments are shifted into the honest
     * polynomial ring first, where graded-lex division terminates.
     */
    inline std::optional<LaurentPoly> try_divide(const LaurentPoly &p, const LaurentPoly &d)
    {
        if (d.is_zero())
            throw std::domain_error("try_divide: division by zero polynomial");
        if (p.is_zero())
            return LaurentPoly(p.nvars());
        const int n = p.nvars();
        std::vector<int> sp = p.min_exponents(), sd = d.min_exponents();
        for (int i = 0; i < n; ++i)
        {
            sp[i] = std::max(0, -sp[i]);
            sd[i] = std::max(0, -sd[i]);
        }
        LaurentPoly rem = p.shifted(sp);
        const LaurentPoly div = d.shifted(sd);
        const auto &dlt = *div.terms().rbegin();
        LaurentPoly q(n);
        std::vector<int> e(n);
        while (!rem.is_zero())
        {
            const auto &rlt = *rem.terms().rbegin();
            bool divisible = true;
            for (int i = 0; i < n; ++i)
            {
                e[i] = rlt.first[i] - dlt.first[i];
                if (e[i] < 0)
                    divisible = false;
            }
            // Coefficient division: every divisor used here has a ±v^j leading
            // coefficient, so this is a shift and a sign.
            if (!divisible || !dlt.second.is_unit_monomial())
                return std::nullopt; // a stranded leading term means a non-zero remainder
            const auto &[ve, vc] = *dlt.second.terms().begin();
            VPoly qc = rlt.second.shifted(-ve);
            if (vc < 0)
                qc = VPoly() - qc;
            const LaurentPoly qt = LaurentPoly::monomial(n, e, qc);
            q += qt;
            rem -= qt * div;
        }
        std::vector<int> back(n);
        for (int i = 0; i < n; ++i)
            back[i] = sd[i] - sp[i];
        return q.shifted(back);
    }

} // namespace mwhit
