#pragma once

#include <algorithm>
#include <future>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mwhit/laurent.hpp"

namespace mwhit
{

    /**
     * SignedPermutation: an element of the hyperoctahedral group W(C_n)
     * (order 2^n n!), acting on exponent vectors by
     * (w e)_{perm[i]} = signs[i] * e[i].
     */
    class SignedPermutation
    {
        std::vector<int> perm_;  // 0-based images
        std::vector<int> signs_; // ±1

    public:
        SignedPermutation(std::vector<int> perm, std::vector<int> signs)
            : perm_(std::move(perm)), signs_(std::move(signs))
        {
            if (perm_.size() != signs_.size())
                throw std::invalid_argument("SignedPermutation: size mismatch");
            std::vector<bool> seen(perm_.size(), false);
            for (int p : perm_)
            {
                if (p < 0 || p >= static_cast<int>(perm_.size()) || seen[p])
                    throw std::invalid_argument("SignedPermutation: not a permutation");
                seen[p] = true;
            }
            for (int s : signs_)
                if (s != 1 && s != -1)
                    throw std::invalid_argument("SignedPermutation: signs must be ±1");
        }

        static SignedPermutation identity(int n)
        {
            std::vector<int> p(n), s(n, 1);
            std::iota(p.begin(), p.end(), 0);
            return {p, s};
        }

        // Adjacent transposition (i, i+1), 1-based i.
        static SignedPermutation transposition(int n, int i)
        {
            auto w = identity(n);
            std::swap(w.perm_[i - 1], w.perm_[i]);
            return w;
        }

        // Sign flip on coordinate i, 1-based.
        static SignedPermutation flip(int n, int i)
        {
            auto w = identity(n);
            w.signs_[i - 1] = -1;
            return w;
        }

        static SignedPermutation longest_element(int n)
        {
            auto w = identity(n);
            std::fill(w.signs_.begin(), w.signs_.end(), -1);
            return w;
        }

        int n() const { return static_cast<int>(perm_.size()); }
        const std::vector<int> &perm() const { return perm_; }
        const std::vector<int> &signs() const { return signs_; }

        bool operator==(const SignedPermutation &other) const
        {
            return perm_ == other.perm_ && signs_ == other.signs_;
        }

        std::vector<int> apply(const std::vector<int> &e) const
        {
            if (e.size() != perm_.size())
                throw std::invalid_argument("SignedPermutation::apply: dimension mismatch");
            std::vector<int> r(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                r[perm_[i]] = signs_[i] * e[i];
            return r;
        }

        // Composition: (a*b).apply(e) == a.apply(b.apply(e)).
        friend SignedPermutation operator*(const SignedPermutation &a, const SignedPermutation &b)
        {
            if (a.n() != b.n())
                throw std::invalid_argument("SignedPermutation: rank mismatch");
            std::vector<int> p(a.n()), s(a.n());
            for (int i = 0; i < a.n(); ++i)
            {
                p[i] = a.perm_[b.perm_[i]];
                s[i] = b.signs_[i] * a.signs_[b.perm_[i]];
            }
            return {p, s};
        }

        SignedPermutation inverse() const
        {
            std::vector<int> p(n()), s(n());
            for (int i = 0; i < n(); ++i)
            {
                p[perm_[i]] = i;
                s[perm_[i]] = signs_[i];
            }
            return {p, s};
        }

        // Determinant of the signed permutation matrix; equals (-1)^length.
        int det() const
        {
            int d = 1;
            // permutation parity by inversion count (n is tiny here)
            for (std::size_t i = 0; i < perm_.size(); ++i)
                for (std::size_t j = i + 1; j < perm_.size(); ++j)
                    if (perm_[i] > perm_[j])
                        d = -d;
            for (int s : signs_)
                d *= s;
            return d;
        }

        /**
         * Coxeter length: the number of positive roots of C_n sent negative,
         * with positive system {e_i - e_j, e_i + e_j (i<j), 2e_i}. A root is
         * negative when its first non-zero coordinate is.
         */
        long length() const
        {
            const int nn = n();
            auto negative = [](const std::vector<int> &v) {
                for (int x : v)
                {
                    if (x != 0)
                        return x < 0;
                }
                return false;
            };
            long count = 0;
            std::vector<int> root(nn, 0);
            for (int i = 0; i < nn; ++i)
            {
                root.assign(nn, 0);
                root[i] = 2;
                if (negative(apply(root)))
                    ++count;
                for (int j = i + 1; j < nn; ++j)
                {
                    root.assign(nn, 0);
                    root[i] = 1;
                    root[j] = -1;
                    if (negative(apply(root)))
                        ++count;
                    root[j] = 1;
                    if (negative(apply(root)))
                        ++count;
                }
            }
            return count;
        }
    };

    // The n simple reflections: adjacent transpositions plus the sign flip on
    // the last coordinate (the short/long simple roots of the positive system
    // used by length()).
    inline std::vector<SignedPermutation> simple_reflections(int n)
    {
        std::vector<SignedPermutation> gens;
        for (int i = 1; i < n; ++i)
            gens.push_back(SignedPermutation::transposition(n, i));
        gens.push_back(SignedPermutation::flip(n, n));
        return gens;
    }

    // All 2^n n! elements, in a fixed deterministic order.
    inline const std::vector<SignedPermutation> &weyl_group(int n)
    {
        static std::mutex mu;
        static std::map<int, std::vector<SignedPermutation>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end())
            return it->second;
        std::vector<SignedPermutation> all;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do
        {
            for (unsigned mask = 0; mask < (1u << n); ++mask)
            {
                std::vector<int> signs(n, 1);
                for (int i = 0; i < n; ++i)
                    if (mask & (1u << i))
                        signs[i] = -1;
                all.emplace_back(perm, signs);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return cache.emplace(n, std::move(all)).first->second;
    }

    // w acting on a Laurent polynomial: a^e -> a^{w e}, ring-homomorphically.
    inline LaurentPoly act(const SignedPermutation &w, const LaurentPoly &p)
    {
        if (w.n() != p.nvars())
            throw std::invalid_argument("act: dimension mismatch");
        LaurentPoly r(p.nvars());
        for (const auto &[e, c] : p.terms())
            r += LaurentPoly::monomial(p.nvars(), w.apply(e), c);
        return r;
    }

    /**
     * Alternator A(p) = sum over w of (-1)^{length(w)} (w p), by direct
     * enumeration of the whole group. The sum is an order-independent
     * map-reduce; `workers` > 1 splits the group across threads and merges,
     * bit-identically.
     */
    inline LaurentPoly alternator_naive(const LaurentPoly &p, int workers = 1)
    {
        const auto &group = weyl_group(p.nvars());
        auto chunk_sum = [&p, &group](std::size_t lo, std::size_t hi) {
            LaurentPoly acc(p.nvars());
            for (std::size_t i = lo; i < hi; ++i)
            {
                LaurentPoly t = act(group[i], p);
                acc += (group[i].det() == 1) ? t : -t;
            }
            return acc;
        };
        if (workers <= 1 || group.size() < 2)
            return chunk_sum(0, group.size());
        const std::size_t per = (group.size() + workers - 1) / workers;
        std::vector<std::future<LaurentPoly>> parts;
        for (std::size_t lo = 0; lo < group.size(); lo += per)
            parts.push_back(std::async(std::launch::async, chunk_sum, lo,
                                       std::min(lo + per, group.size())));
        LaurentPoly acc(p.nvars());
        for (auto &f : parts)
            acc += f.get();
        return acc;
    }

    /**
     * Orbit-optimized alternator. A monomial with a zero exponent or two equal
     * absolute exponents is stabilized by a reflection and alternates to zero;
     * the rest of a W-orbit is summed once from its strictly-dominant
     * representative. Agrees bit-exactly with alternator_naive.
     */
    inline LaurentPoly alternator(const LaurentPoly &p)
    {
        const int n = p.nvars();
        std::map<std::vector<int>, VPoly> buckets;
        for (const auto &[e, c] : p.terms())
        {
            bool degenerate = false;
            for (int i = 0; i < n && !degenerate; ++i)
            {
                if (e[i] == 0)
                    degenerate = true;
                for (int j = i + 1; j < n && !degenerate; ++j)
                    if (std::abs(e[i]) == std::abs(e[j]))
                        degenerate = true;
            }
            if (degenerate)
                continue;
            // Move e to its strictly decreasing positive representative.
            const std::vector<int> &exps = e;
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&exps](int i, int j) {
                return std::abs(exps[i]) > std::abs(exps[j]);
            });
            std::vector<int> perm(n), signs(n);
            for (int pos = 0; pos < n; ++pos)
            {
                perm[order[pos]] = pos;
                signs[order[pos]] = e[order[pos]] > 0 ? 1 : -1;
            }
            const SignedPermutation u(perm, signs);
            const std::vector<int> rep = u.apply(e);
            VPoly signed_c = (u.det() == 1) ? c : VPoly() - c;
            auto [it, fresh] = buckets.emplace(rep, signed_c);
            if (!fresh)
                it->second += signed_c;
        }
        LaurentPoly r(n);
        const auto &group = weyl_group(n);
        for (const auto &[rep, c] : buckets)
        {
            if (c.is_zero())
                continue;
            for (const auto &w : group)
                r += LaurentPoly::monomial(n, w.apply(rep),
                                           w.det() == 1 ? c : VPoly() - c);
        }
        return r;
    }

    // Delta(a) = A(prod a_i^i), the Weyl denominator.
    inline const LaurentPoly &weyl_denominator(int n)
    {
        static std::mutex mu;
        static std::map<int, LaurentPoly> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end())
            return it->second;
        std::vector<int> staircase(n);
        std::iota(staircase.begin(), staircase.end(), 1);
        LaurentPoly delta = alternator(LaurentPoly::monomial(n, staircase, VPoly(1)));
        return cache.emplace(n, std::move(delta)).first->second;
    }

    inline bool is_alternating(const LaurentPoly &p)
    {
        const LaurentPoly neg = -p;
        for (const auto &s : simple_reflections(p.nvars()))
            if (act(s, p) != neg)
                return false;
        return true;
    }

    /**
     * Exact quotient p / Delta for alternating p. Every alternating Laurent
     * polynomial is divisible by Delta; a non-zero remainder therefore signals
     * a caller bug (NonDivisible), and a non-alternating input is rejected up
     * front (NotAlternating). The quotient is W-symmetric.
     */
    inline LaurentPoly divide_by_delta(const LaurentPoly &p)
    {
        if (p.is_zero())
            return p;
        if (!is_alternating(p))
            throw NotAlternating();
        auto q = try_divide(p, weyl_denominator(p.nvars()));
        if (!q)
            throw NonDivisible();
        return *q;
    }

} // namespace mwhit
