#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "mwhit/field.hpp"
#include "mwhit/gaussian_rational.hpp"
#include "mwhit/torus.hpp"
#include "mwhit/weyl.hpp"

namespace mwhit
{

    enum class Branch
    {
        plus, // standard extension, supported on even similitude valuation
        minus // its i(pi)-conjugate, supported on odd similitude valuation
    };

    enum class EtaChar
    {
        eta_1, // trivial quadratic character of O*
        eta_pi // the non-trivial one
    };

    /**
     * UnramifiedData: the parameters of a genuine unramified principal series
     * datum: Satake-type parameters alpha_1..alpha_n, the similitude
     * parameter beta, the extension branch, and the compact-splitting
     * character eta. All scalars are exact Gaussian rationals.
     */
    struct UnramifiedData
    {
        int n;
        std::vector<GaussRat> alpha;
        GaussRat beta;
        Branch branch = Branch::plus;
        EtaChar eta = EtaChar::eta_1;

        UnramifiedData(int rank, std::vector<GaussRat> a, GaussRat b,
                       Branch br = Branch::plus, EtaChar e = EtaChar::eta_1)
            : n(rank), alpha(std::move(a)), beta(std::move(b)), branch(br), eta(e)
        {
            if (n < 1 || static_cast<int>(alpha.size()) != n)
                throw std::invalid_argument("UnramifiedData: alpha must have n >= 1 entries");
            for (const auto &x : alpha)
                if (x.is_zero())
                    throw std::invalid_argument("UnramifiedData: alpha entries must be non-zero");
            if (beta.is_zero())
                throw std::invalid_argument("UnramifiedData: beta must be non-zero");
        }
    };

    struct ChiPsiValue
    {
        GaussRat scalar;
        Phase phase;

        bool operator==(const ChiPsiValue &other) const
        {
            return scalar == other.scalar && phase == other.phase;
        }
    };

    /**
     * The genuine character chi_psi on the covered Sp-torus:
     * ([t,1],eps) -> eps * prod alpha_i^{ord(a_i)} * gamma_psi(det t).
     * Requires the similitude factor to be a trivial square class.
     */
    inline ChiPsiValue chi_psi_eval(const UnramifiedData &d, const CoverTorusElement &ct,
                                    const FieldConfig &cfg)
    {
        if (ct.n() != d.n)
            throw std::invalid_argument("chi_psi_eval: rank mismatch");
        if (!ct.base.y.square_class_is_trivial())
            throw std::domain_error("chi_psi_eval: similitude factor is not a square class");
        GaussRat s(ct.eps);
        for (int i = 0; i < d.n; ++i)
            s *= d.alpha[i].pow(ct.base.a[i].ord);
        return {s, gamma_weil(ct.base.det(), cfg)};
    }

    struct TwistNotUnramified : std::domain_error
    {
        TwistNotUnramified()
            : std::domain_error("quadratic_twist: twisting by a class containing pi leaves the "
                                "unramified family")
        {
        }
    };

    /**
     * Quadratic twist by a square class c. The u0-twist negates every alpha_i
     * (eta_{u0} takes value (-1)^ord) and multiplies beta by (-1)^n; twisting
     * by a class of odd valuation is ramified and rejected.
     */
    inline UnramifiedData quadratic_twist(const UnramifiedData &d, const SquareClassElement &c)
    {
        if (c.ord % 2 != 0)
            throw TwistNotUnramified();
        if (c.unit == UnitClass::trivial)
            return d;
        UnramifiedData r = d;
        for (auto &x : r.alpha)
            x = -x;
        if (d.n % 2 != 0)
            r.beta = -r.beta;
        return r;
    }

    // ^w alpha, the evaluation pullback: (^w alpha)_i = alpha_{perm(i)}^{sign_i}.
    inline std::vector<GaussRat> weyl_act_alpha(const SignedPermutation &w,
                                                const std::vector<GaussRat> &alpha)
    {
        if (w.n() != static_cast<int>(alpha.size()))
            throw std::invalid_argument("weyl_act_alpha: rank mismatch");
        std::vector<GaussRat> r(alpha.size());
        for (int i = 0; i < w.n(); ++i)
        {
            const GaussRat &x = alpha[w.perm()[i]];
            r[i] = (w.signs()[i] == 1) ? x : x.inverse();
        }
        return r;
    }

    struct ExtensionLabel
    {
        std::vector<GaussRat> alpha;
        GaussRat beta;
        Branch branch;

        bool operator==(const ExtensionLabel &other) const
        {
            return alpha == other.alpha && beta == other.beta && branch == other.branch;
        }
    };

    /**
     * The four extensions of the central character determined by (alpha, beta):
     * plus/minus branches of (alpha, beta) and of (-alpha, (-1)^n beta). The
     * two plus-branch labels are the standard (compact-trivial) extensions.
     */
    inline std::array<ExtensionLabel, 4> extension_set(const UnramifiedData &d)
    {
        std::vector<GaussRat> neg(d.alpha);
        for (auto &x : neg)
            x = -x;
        const GaussRat beta2 = (d.n % 2 == 0) ? d.beta : -d.beta;
        return {ExtensionLabel{d.alpha, d.beta, Branch::plus},
                ExtensionLabel{neg, beta2, Branch::plus},
                ExtensionLabel{d.alpha, d.beta, Branch::minus},
                ExtensionLabel{neg, beta2, Branch::minus}};
    }

    enum class ROmega
    {
        trivial,
        order_two // {1, u0}
    };

    // Brute force: u0 lies in R(omega) iff the u0-twist fixes the xi-component
    // (that is, n is even) and some w in W_{2n} sends alpha to -alpha.
    inline ROmega r_omega_brute(int n, const std::vector<GaussRat> &alpha)
    {
        if (n % 2 != 0)
            return ROmega::trivial;
        std::vector<GaussRat> neg(alpha);
        for (auto &x : neg)
            x = -x;
        for (const auto &w : weyl_group(n))
            if (weyl_act_alpha(w, alpha) == neg)
                return ROmega::order_two;
        return ROmega::trivial;
    }

    /**
     * Closed-form criterion: n even and the multiset of inversion classes
     * {alpha_i, alpha_i^{-1}} splits into pairs (C, -C). Classes fixed by
     * negation (alpha_i^2 = -1) pair among themselves, so their count must be
     * even; otherwise the counts of C and -C must agree.
     */
    inline ROmega r_omega_criterion(int n, const std::vector<GaussRat> &alpha)
    {
        if (n % 2 != 0)
            return ROmega::trivial;
        struct InvClass
        {
            GaussRat lo, hi; // the unordered pair {x, 1/x}, canonically ordered
        };
        auto key_less = [](const GaussRat &a, const GaussRat &b) {
            if (a.re != b.re)
                return a.re < b.re;
            return a.im < b.im;
        };
        auto make_class = [&](const GaussRat &x) {
            GaussRat y = x.inverse();
            return key_less(x, y) ? InvClass{x, y} : InvClass{y, x};
        };
        std::vector<InvClass> classes;
        for (const auto &x : alpha)
            classes.push_back(make_class(x));
        std::vector<bool> used(classes.size(), false);
        for (std::size_t i = 0; i < classes.size(); ++i)
        {
            if (used[i])
                continue;
            used[i] = true;
            const InvClass want = make_class(-classes[i].lo);
            bool found = false;
            for (std::size_t j = i + 1; j < classes.size(); ++j)
            {
                if (used[j])
                    continue;
                if (classes[j].lo == want.lo && classes[j].hi == want.hi)
                {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found)
                return ROmega::trivial;
        }
        return ROmega::order_two;
    }

    // Both routes, checked against each other.
    inline ROmega r_omega(const UnramifiedData &d)
    {
        const ROmega brute = r_omega_brute(d.n, d.alpha);
        const ROmega crit = r_omega_criterion(d.n, d.alpha);
        if (brute != crit)
            throw std::logic_error("r_omega: brute-force and criterion disagree");
        return brute;
    }

    inline bool is_unitary(const std::vector<GaussRat> &alpha)
    {
        for (const auto &x : alpha)
            if (!x.is_unitary())
                return false;
        return true;
    }

    enum class Classification
    {
        Irreducible,
        TwoGenericSummands,
        Unknown
    };

    /**
     * Reducibility classifier. Unitary inducing data certifies irreducibility
     * of the Sp-restriction, so the answer is decided by R(omega); otherwise
     * the hypothesis cannot be certified here and the result is Unknown.
     */
    inline Classification classify(const UnramifiedData &d)
    {
        if (!is_unitary(d.alpha))
            return Classification::Unknown;
        return r_omega(d) == ROmega::trivial ? Classification::Irreducible
                                             : Classification::TwoGenericSummands;
    }

} // namespace mwhit
