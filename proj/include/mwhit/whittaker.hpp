#pragma once

#include <array>
#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mwhit/characters.hpp"
#include "mwhit/field.hpp"
#include "mwhit/laurent.hpp"
#include "mwhit/torus.hpp"
#include "mwhit/weyl.hpp"

namespace mwhit
{

    /**
     * TorusOrders: the valuations k_i = ord(a_i) of a torus argument, in
     * logical order. Whittaker values are supported on the dominant cone
     * 0 <= k_1 <= ... <= k_n.
     */
    struct TorusOrders
    {
        std::vector<long> k;

        TorusOrders() = default;
        explicit TorusOrders(std::vector<long> orders) : k(std::move(orders)) {}

        int n() const { return static_cast<int>(k.size()); }

        bool dominant() const
        {
            long prev = 0;
            for (long x : k)
            {
                if (x < prev)
                    return false;
                prev = x;
            }
            return true;
        }

        long sum() const
        {
            long s = 0;
            for (long x : k)
                s += x;
            return s;
        }

        long weighted_sum() const
        {
            long s = 0;
            for (int i = 0; i < n(); ++i)
                s += (i + 1) * k[i];
            return s;
        }
    };

    // delta^{1/2}([t,1]) = q^{-sum i k_i}, as a power of v = q^{1/2}.
    inline long delta_half_vpower(const TorusOrders &k)
    {
        return -2 * k.weighted_sum();
    }

    // All dominant order vectors with sum <= max_sum, lexicographically.
    inline std::vector<std::vector<long>> dominant_orders(int n, long max_sum)
    {
        std::vector<std::vector<long>> out;
        std::vector<long> cur(n, 0);
        auto rec = [&](auto &&self, int pos, long lo, long left) -> void {
            if (pos == n)
            {
                out.push_back(cur);
                return;
            }
            for (long x = lo; x <= left; ++x)
            {
                cur[pos] = x;
                self(self, pos + 1, x, left - x);
            }
        };
        rec(rec, 0, 0, max_sum);
        return out;
    }

    /**
     * The normalization factor D(alpha, y): cross terms
     * prod_{i<j} (1 - q^{-1} a_j a_i^{-1})(1 - q^{-1} a_j a_i) times the
     * y-branch factor: prod (1 + eta_pi(-y) q^{-1/2} a_i) for unit y,
     * prod (1 - q^{-1} a_i^2) for ord(y) = 1.
     */
    inline LaurentPoly d_factor(int n, const SquareClassElement &y, const FieldConfig &cfg)
    {
        if (y.ord != 0 && y.ord != 1)
            throw std::invalid_argument("d_factor: ord(y) must be 0 or 1");
        LaurentPoly r = LaurentPoly::constant(n, 1);
        const VPoly qinv = VPoly::monomial(mpz_class(1), -2);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
            {
                std::vector<int> e(n, 0);
                e[j - 1] = 1;
                e[i - 1] = -1;
                r = r * (LaurentPoly::constant(n, 1) - LaurentPoly::monomial(n, e, qinv));
                e[i - 1] = 1;
                r = r * (LaurentPoly::constant(n, 1) - LaurentPoly::monomial(n, e, qinv));
            }
        if (y.ord == 0)
        {
            const int s = eta_pi_of_minus_one(cfg) * (y.unit == UnitClass::u0 ? -1 : 1);
            for (int i = 1; i <= n; ++i)
                r = r * (LaurentPoly::constant(n, 1) +
                         LaurentPoly::variable(n, i).scaled(VPoly::monomial(mpz_class(s), -1)));
        }
        else
        {
            for (int i = 1; i <= n; ++i)
                r = r * (LaurentPoly::constant(n, 1) -
                         LaurentPoly::variable(n, i, 2).scaled(qinv));
        }
        return r;
    }

    /**
     * The symmetric body Delta^{-1} A(prod f_i(a_i) a_i^{k_i + i}), where
     * f_i = (1 - s q^{-1/2} a_i^{-1}) on the unit-similitude branch
     * (unit_sign = s) and f_i = 1 on the uniformizer branch (nullopt).
     * Exact alternator plus exact division.
     */
    inline LaurentPoly whittaker_body(int n, const TorusOrders &k, std::optional<int> unit_sign)
    {
        if (k.n() != n)
            throw std::invalid_argument("whittaker_body: order vector size mismatch");
        // pure in (n, k, unit_sign); memoized since grids and Weyl sweeps
        // revisit the same orders constantly
        struct Key
        {
            std::vector<long> k;
            int sign;
            auto operator<=>(const Key &) const = default;
        };
        static std::mutex mu;
        static std::map<Key, LaurentPoly> cache;
        const Key key{k.k, unit_sign ? *unit_sign : 0};
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = cache.find(key);
            if (it != cache.end())
                return it->second;
        }
        LaurentPoly p = LaurentPoly::constant(n, 1);
        for (int i = 1; i <= n; ++i)
        {
            std::vector<int> e(n, 0);
            e[i - 1] = static_cast<int>(k.k[i - 1]) + i;
            LaurentPoly factor = LaurentPoly::monomial(n, e, VPoly(1));
            if (unit_sign)
            {
                e[i - 1] -= 1;
                factor -= LaurentPoly::monomial(n, e, VPoly::monomial(mpz_class(*unit_sign), -1));
            }
            p = p * factor;
        }
        LaurentPoly body = divide_by_delta(alternator(p));
        std::lock_guard<std::mutex> lock(mu);
        return cache.emplace(key, std::move(body)).first->second;
    }

    /**
     * WhittakerValue: phase prefactor in {±1, ±g}, a power of v = q^{1/2}
     * from the modular character, and a W-symmetric Laurent-polynomial body
     * in the alpha variables. The value is zero iff the body is.
     */
    struct WhittakerValue
    {
        Phase phase = Phase::one();
        long v_power = 0;
        LaurentPoly body;

        WhittakerValue() : body(0) {}
        WhittakerValue(Phase ph, long vp, LaurentPoly b)
            : phase(ph), v_power(vp), body(std::move(b)) {}

        static WhittakerValue zero(int n) { return {Phase::one(), 0, LaurentPoly(n)}; }

        bool is_zero() const { return body.is_zero(); }

        bool operator==(const WhittakerValue &other) const
        {
            if (is_zero() && other.is_zero())
                return true;
            return phase == other.phase && v_power == other.v_power && body == other.body;
        }
    };

    /**
     * The spherical Whittaker value on the Sp-level torus point with entry
     * orders k (trivial unit parts) and Whittaker-character class y of
     * valuation 0 or 1:
     *   delta^{1/2} gamma_psi^{-1}(t) * Delta^{-1} A(...),
     * zero off the dominant cone. The alternator argument carries the factor
     * (1 - eta_pi(-y) q^{-1/2} a_i^{-1}) on the unit-y branch and is the bare
     * staircase monomial otherwise.
     */
    inline WhittakerValue sp_whittaker(int n, const SquareClassElement &y, const TorusOrders &k,
                                       const FieldConfig &cfg)
    {
        if (y.ord != 0 && y.ord != 1)
            throw std::invalid_argument("sp_whittaker: ord(y) must be 0 or 1");
        if (k.n() != n)
            throw std::invalid_argument("sp_whittaker: order vector size mismatch");
        if (!k.dominant())
            return WhittakerValue::zero(n);
        std::optional<int> unit_sign;
        if (y.ord == 0)
            unit_sign = eta_pi_of_minus_one(cfg) * (y.unit == UnitClass::u0 ? -1 : 1);
        const SquareClassElement det_t{k.sum(), UnitClass::trivial};
        return {gamma_weil_inverse(det_t, cfg), delta_half_vpower(k),
                whittaker_body(n, k, unit_sign)};
    }

    /**
     * The rank-one value from the SL_2 computation, built independently as the
     * geometric character sum (a^{k+1} - a^{-k-1})/(a - a^{-1}) =
     * sum_{j=0..k} a^{k-2j}, scaled by q^{-k} gamma_psi^{-1}(pi^k). Must agree
     * with sp_whittaker(n=1, y=pi, k).
     */
    inline WhittakerValue rank_one_whittaker(long k, const FieldConfig &cfg)
    {
        if (k < 0)
            return WhittakerValue::zero(1);
        LaurentPoly body(1);
        for (long j = 0; j <= k; ++j)
            body += LaurentPoly::monomial(1, {static_cast<int>(k - 2 * j)}, VPoly(1));
        const SquareClassElement det_t{k, UnitClass::trivial};
        return {gamma_weil_inverse(det_t, cfg), -2 * k, body};
    }

    /**
     * KValue: a fully specialized Whittaker value, an element of
     * Q(i)[v,1/v] * g^{0,1} with g formal. The ±1 part of the phase is folded
     * into the polynomial so the representation is canonical and equality is
     * honest; only the g-power stays separate.
     */
    struct KValue
    {
        int g_pow = 0;
        QvPoly value;

        KValue() = default;
        KValue(const Phase &ph, QvPoly val)
            : g_pow(ph.g_pow),
              value(ph.sign == 1 ? std::move(val) : QvPoly() - val)
        {
            if (value.is_zero())
                g_pow = 0;
        }

        static KValue zero() { return {}; }

        bool is_zero() const { return value.is_zero(); }

        bool operator==(const KValue &other) const
        {
            return g_pow == other.g_pow && value == other.value;
        }
        bool operator!=(const KValue &other) const { return !(*this == other); }

        KValue negated() const
        {
            KValue r = *this;
            r.value = QvPoly() - r.value;
            return r;
        }

        std::string to_string() const
        {
            if (is_zero())
                return "0";
            return std::string(g_pow ? "g" : "1") + " * [" + mwhit::to_string(value) + "]";
        }
    };

    inline KValue mul(const KValue &a, const KValue &b, const FieldConfig &cfg)
    {
        if (a.is_zero() || b.is_zero())
            return KValue::zero();
        KValue r;
        r.g_pow = a.g_pow + b.g_pow;
        r.value = a.value * b.value;
        if (r.g_pow == 2)
        {
            r.g_pow = 0;
            if (cfg.pi_pi_symbol() < 0)
                r.value = QvPoly() - r.value;
        }
        return r;
    }

    inline KValue divide_exact(const KValue &a, const KValue &b, const FieldConfig &cfg)
    {
        if (b.is_zero())
            throw std::domain_error("KValue: division by zero");
        if (a.is_zero())
            return KValue::zero();
        KValue r;
        r.g_pow = a.g_pow - b.g_pow;
        r.value = divide_exact(a.value, b.value);
        if (r.g_pow < 0)
        {
            // 1/g = (pi,pi)_F * g
            r.g_pow = 1;
            if (cfg.pi_pi_symbol() < 0)
                r.value = QvPoly() - r.value;
        }
        return r;
    }

    /**
     * Evaluation of the k-function attached to an unramified datum on a cover
     * torus element, through the normal form h =
     * (i(pi^{-m}),1)(b I,1)([t,1],1)(i(u),eps):
     *
     *   eps * eta(lambda or pi lambda) * gamma_psi^{-1}(b^n) * beta^l
     *       * delta^{1/2}(t) gamma_psi^{-1}(t) * [Delta^{-1} A(...)](alpha),
     *
     * supported on m = 0 (plus branch) resp. m = 1 (minus branch) and on
     * dominant t-orders; zero otherwise.
     */
    inline KValue k_eval(const UnramifiedData &d, const CoverTorusElement &h,
                         const FieldConfig &cfg)
    {
        if (h.n() != d.n)
            throw std::invalid_argument("k_eval: rank mismatch");
        const HNormalForm nf = normal_form(h, cfg);
        const int required_m = (d.branch == Branch::plus) ? 0 : 1;
        if (nf.m != required_m)
            return KValue::zero();
        const TorusOrders k(nf.orders());
        if (!k.dominant())
            return KValue::zero();

        std::optional<int> unit_sign;
        if (d.branch == Branch::plus)
            unit_sign = eta_pi_of_minus_one(cfg);
        QvPoly val = whittaker_body(d.n, k, unit_sign).specialize(d.alpha);
        val = val.shifted(delta_half_vpower(k));

        GaussRat scalar = d.beta.pow(nf.l());
        scalar *= GaussRat(nf.eps);
        // eta on the unit part of lambda(h) (plus branch) or pi*lambda(h)
        // (minus branch); on the support both reduce to the unit class of the
        // similitude factor.
        if (d.eta == EtaChar::eta_pi)
            scalar *= GaussRat(eta_pi_on_units(nf.u));

        const Phase phase = mul(gamma_weil_inverse(nf.b.pow(d.n), cfg),
                                gamma_weil_inverse(nf.det_t(), cfg), cfg);
        return {phase, val.scaled(scalar)};
    }

    /**
     * The symmetric spanning set: the four k-functions indexed by the
     * extension labels of the datum, all sharing its eta.
     */
    struct SpanningSet
    {
        int n;
        EtaChar eta;
        std::array<ExtensionLabel, 4> labels;

        KValue eval(int idx, const CoverTorusElement &h, const FieldConfig &cfg) const
        {
            const ExtensionLabel &lab = labels.at(idx);
            return k_eval(UnramifiedData(n, lab.alpha, lab.beta, lab.branch, eta), h, cfg);
        }
    };

    inline SpanningSet spanning_set(const UnramifiedData &d)
    {
        return {d.n, d.eta, extension_set(d)};
    }

    /**
     * Default probe set: all dominant order vectors with sum <= k_max,
     * crossed with both branch parities m, central valuations l in {0,1} and
     * both unit classes u. Sufficient at desk scale to separate whatever the
     * four functions separate.
     */
    inline std::vector<CoverTorusElement> default_probes(int n, long k_max, const FieldConfig &cfg)
    {
        std::vector<CoverTorusElement> probes;
        for (int m = 0; m <= 1; ++m)
            for (long l = 0; l <= 1; ++l)
                for (int uu = 0; uu <= 1; ++uu)
                    for (const auto &k : dominant_orders(n, k_max))
                    {
                        HNormalForm nf;
                        nf.m = m;
                        nf.b = SquareClassElement(l, UnitClass::trivial);
                        for (long ki : k)
                            nf.t.push_back(SquareClassElement(ki, UnitClass::trivial));
                        nf.u = SquareClassElement(0, uu ? UnitClass::u0 : UnitClass::trivial);
                        nf.eps = 1;
                        probes.push_back(recompose(nf, cfg));
                    }
        return probes;
    }

    namespace detail
    {
        // g is one of the two square roots of (pi,pi)_F inside Q(i); the rank
        // is computed under both embeddings and must agree.
        inline GaussRat embed_g(int which, const FieldConfig &cfg)
        {
            return cfg.pi_pi_symbol() == 1 ? GaussRat(which)
                                           : GaussRat(mpq_class(0), mpq_class(which));
        }

        inline QvPoly embed(const KValue &kv, const GaussRat &g)
        {
            return kv.g_pow == 1 ? kv.value.scaled(g) : kv.value;
        }

        // Fraction-free (Bareiss) rank over the domain Q(i)[v,1/v].
        inline int bareiss_rank(std::vector<std::vector<QvPoly>> m)
        {
            const int rows = static_cast<int>(m.size());
            const int cols = rows ? static_cast<int>(m[0].size()) : 0;
            QvPoly prev(GaussRat(1));
            int rank = 0;
            for (; rank < rows && rank < cols; ++rank)
            {
                int pr = -1, pc = -1;
                for (int i = rank; i < rows && pr < 0; ++i)
                    for (int j = rank; j < cols; ++j)
                        if (!m[i][j].is_zero())
                        {
                            pr = i;
                            pc = j;
                            break;
                        }
                if (pr < 0)
                    break;
                std::swap(m[rank], m[pr]);
                if (pc != rank)
                    for (int i = 0; i < rows; ++i)
                        std::swap(m[i][rank], m[i][pc]);
                for (int i = rank + 1; i < rows; ++i)
                    for (int j = rank + 1; j < cols; ++j)
                        m[i][j] = divide_exact(m[rank][rank] * m[i][j] - m[i][rank] * m[rank][j],
                                               prev);
                prev = m[rank][rank];
            }
            return rank;
        }
    } // namespace detail

    /**
     * Exact rank of the 4 x |probes| evaluation matrix of the spanning set,
     * over Q(i)(v) with the formal g adjoined (resolved through both of its
     * embeddings, which must agree).
     */
    inline int rank_of_span(const UnramifiedData &d, const std::vector<CoverTorusElement> &probes,
                            const FieldConfig &cfg)
    {
        if (probes.empty())
            return 0;
        const SpanningSet s = spanning_set(d);
        std::array<std::vector<KValue>, 4> values;
        for (int f = 0; f < 4; ++f)
        {
            values[f].reserve(probes.size());
            for (const auto &h : probes)
                values[f].push_back(s.eval(f, h, cfg));
        }
        int rank = -1;
        for (int which : {1, -1})
        {
            const GaussRat g = detail::embed_g(which, cfg);
            std::vector<std::vector<QvPoly>> m(4, std::vector<QvPoly>(probes.size()));
            for (int f = 0; f < 4; ++f)
                for (std::size_t j = 0; j < probes.size(); ++j)
                    m[f][j] = detail::embed(values[f][j], g);
            const int r = detail::bareiss_rank(std::move(m));
            if (rank >= 0 && r != rank)
                throw std::logic_error("rank_of_span: rank depends on the embedding of g");
            rank = r;
        }
        return rank;
    }

    /**
     * Central equivariance report (n odd): for each of the four k-functions,
     * the ratio k(z h)/k(h) over the center representatives z = (a I, 1) is a
     * constant character mu(z), and the four characters are pairwise
     * distinct.
     */
    struct EquivarianceReport
    {
        // mu[f][c]: the value of function f's central character on the class
        // representative kSquareClasses[c], scaled by (a I, 1).
        std::array<std::array<KValue, 4>, 4> mu;
        std::size_t probes_per_function = 0;
        bool all_constant = false;
        bool pairwise_distinct = false;

        bool ok() const { return all_constant && pairwise_distinct; }
    };

    inline EquivarianceReport central_equivariance_check(const UnramifiedData &d,
                                                         const FieldConfig &cfg, long k_max = 3)
    {
        if (d.n % 2 == 0)
            throw std::invalid_argument("central_equivariance_check: n must be odd");
        const SpanningSet s = spanning_set(d);
        EquivarianceReport rep;
        rep.all_constant = true;
        for (int f = 0; f < 4; ++f)
        {
            const int m = (s.labels[f].branch == Branch::plus) ? 0 : 1;
            std::vector<CoverTorusElement> probes;
            for (long l = 0; l <= 2; ++l)
                for (int uu = 0; uu <= 1; ++uu)
                    for (const auto &k : dominant_orders(d.n, k_max))
                    {
                        HNormalForm nf;
                        nf.m = m;
                        nf.b = SquareClassElement(l, UnitClass::trivial);
                        for (long ki : k)
                            nf.t.push_back(SquareClassElement(ki, UnitClass::trivial));
                        nf.u = SquareClassElement(0, uu ? UnitClass::u0 : UnitClass::trivial);
                        nf.eps = 1;
                        probes.push_back(recompose(nf, cfg));
                    }
            rep.probes_per_function = probes.size();
            const CoverTorusElement &h0 = probes.front(); // k=0, l=0, u=1: value ±1
            const KValue base = s.eval(f, h0, cfg);
            if (base.is_zero())
                throw std::logic_error("central_equivariance_check: reference probe vanished");
            for (int c = 0; c < 4; ++c)
            {
                const CoverTorusElement z{TorusElement::scalar(kSquareClasses[c], d.n), 1};
                rep.mu[f][c] = divide_exact(s.eval(f, mul(z, h0, cfg), cfg), base, cfg);
                for (const auto &h : probes)
                {
                    const KValue lhs = s.eval(f, mul(z, h, cfg), cfg);
                    const KValue rhs = mul(rep.mu[f][c], s.eval(f, h, cfg), cfg);
                    if (lhs != rhs)
                        rep.all_constant = false;
                }
            }
        }
        rep.pairwise_distinct = true;
        for (int f = 0; f < 4; ++f)
            for (int g = f + 1; g < 4; ++g)
            {
                bool differ = false;
                for (int c = 0; c < 4; ++c)
                    if (rep.mu[f][c] != rep.mu[g][c])
                        differ = true;
                if (!differ)
                    rep.pairwise_distinct = false;
            }
        return rep;
    }

    /**
     * The two intertwining eigenvalues on the spherical vectors for even n:
     * ±(L(eta_{u0},0)/L(eta_{u0},1))^{n/2} = ±((1+q^{-1})/2)^{n/2}, as exact
     * elements of Q(v) with v^2 = q.
     */
    inline std::pair<QvPoly, QvPoly> l_ratio_eigenvalues(int n, const FieldConfig & /*cfg*/)
    {
        if (n < 2 || n % 2 != 0)
            throw std::invalid_argument("l_ratio_eigenvalues: n must be even and positive");
        QvPoly ratio = QvPoly::monomial(GaussRat(mpq_class(1, 2)), 0) +
                       QvPoly::monomial(GaussRat(mpq_class(1, 2)), -2);
        QvPoly val(GaussRat(1));
        for (int j = 0; j < n / 2; ++j)
            val = val * ratio;
        return {val, QvPoly() - val};
    }

} // namespace mwhit
