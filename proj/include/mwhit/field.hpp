#pragma once

#include <stdexcept>
#include <string>

namespace mwhit
{

    /**
     * FieldConfig: the residue field cardinality q of a p-adic field F with odd
     * residual characteristic. Every tame formula implemented here depends on q
     * only through q mod 4, i.e. whether -1 is a square in the residue field.
     */
    class FieldConfig
    {
        long q_;

        static bool is_odd_prime_power(long q)
        {
            if (q < 3 || q % 2 == 0)
                return false;
            long p = 3;
            while (p * p <= q && q % p != 0)
                p += 2;
            if (p * p > q)
                return true; // q itself is prime
            while (q % p == 0)
                q /= p;
            return q == 1;
        }

    public:
        explicit FieldConfig(long q) : q_(q)
        {
            if (!is_odd_prime_power(q))
                throw std::invalid_argument("FieldConfig: q must be an odd prime power >= 3, got " +
                                            std::to_string(q));
        }

        long q() const noexcept { return q_; }

        bool minus_one_is_square() const noexcept { return q_ % 4 == 1; }

        // (pi,pi)_F = (pi,-1)_F = (-1)^{(q-1)/2}; also the value of g^2.
        int pi_pi_symbol() const noexcept { return minus_one_is_square() ? 1 : -1; }
    };

    enum class UnitClass : int
    {
        trivial = 0, // squares in O*
        u0 = 1       // the fixed non-square unit
    };

    inline UnitClass operator*(UnitClass a, UnitClass b) noexcept
    {
        return static_cast<UnitClass>(static_cast<int>(a) ^ static_cast<int>(b));
    }

    /**
     * SquareClassElement: an element of F* of the form pi^ord * u * (unit square),
     * i.e. its exact valuation together with the coset of its unit part among
     * the unit square classes. This is all the data any unramified formula
     * consumes. The image among the four square classes is (ord mod 2, unit).
     */
    struct SquareClassElement
    {
        long ord = 0;
        UnitClass unit = UnitClass::trivial;

        constexpr SquareClassElement() = default;
        constexpr SquareClassElement(long k, UnitClass u) : ord(k), unit(u) {}

        static constexpr SquareClassElement one() { return {0, UnitClass::trivial}; }
        static constexpr SquareClassElement u_0() { return {0, UnitClass::u0}; }
        static constexpr SquareClassElement pi() { return {1, UnitClass::trivial}; }
        static constexpr SquareClassElement pi_u0() { return {1, UnitClass::u0}; }

        friend SquareClassElement operator*(const SquareClassElement &a, const SquareClassElement &b)
        {
            return {a.ord + b.ord, a.unit * b.unit};
        }

        SquareClassElement inverse() const { return {-ord, unit}; }

        SquareClassElement square() const { return {2 * ord, UnitClass::trivial}; }

        SquareClassElement pow(long e) const
        {
            return {ord * e, (e % 2 == 0) ? UnitClass::trivial : unit};
        }

        bool operator==(const SquareClassElement &other) const = default;

        // Equality modulo squares.
        bool same_square_class(const SquareClassElement &other) const
        {
            return ((ord - other.ord) % 2 == 0) && unit == other.unit;
        }

        bool square_class_is_trivial() const
        {
            return ord % 2 == 0 && unit == UnitClass::trivial;
        }

        bool is_unit() const { return ord == 0; }

        std::string to_string() const
        {
            std::string s;
            if (ord == 0 && unit == UnitClass::trivial)
                return "1";
            if (ord != 0)
            {
                s += "pi";
                if (ord != 1)
                    s += "^" + std::to_string(ord);
            }
            if (unit == UnitClass::u0)
                s += (s.empty() ? "u0" : "*u0");
            return s;
        }
    };

    /**
     * Quadratic Hilbert symbol on square classes (tame case). For a = pi^m u,
     * b = pi^n w with unit classes u, w:
     *
     *   (a,b)_F = (-1)^{mn(q-1)/2} chi(w)^m chi(u)^n,
     *
     * where chi is the quadratic residue character of the units. Symmetric,
     * bilinear and non-degenerate on the four classes.
     */
    inline int hilbert(const SquareClassElement &a, const SquareClassElement &b,
                       const FieldConfig &cfg)
    {
        const bool m_odd = a.ord % 2 != 0;
        const bool n_odd = b.ord % 2 != 0;
        int r = 1;
        if (m_odd && n_odd && !cfg.minus_one_is_square())
            r = -r;
        if (m_odd && b.unit == UnitClass::u0)
            r = -r;
        if (n_odd && a.unit == UnitClass::u0)
            r = -r;
        return r;
    }

    // eta_a(b) = (a,b)_F.
    inline int eta(const SquareClassElement &a, const SquareClassElement &b, const FieldConfig &cfg)
    {
        return hilbert(a, b, cfg);
    }

    // eta_{u0}(b) = (-1)^{ord(b)}, independently of q.
    inline int eta_u0(const SquareClassElement &b)
    {
        return (b.ord % 2 == 0) ? 1 : -1;
    }

    // The non-trivial quadratic character of O*, extended to O* F*^2: value on
    // an even-valuation argument is the residue character of its unit part.
    inline int eta_pi_on_units(const SquareClassElement &b)
    {
        if (b.ord % 2 != 0)
            throw std::domain_error("eta_pi_on_units: argument not in O* F*^2");
        return b.unit == UnitClass::u0 ? -1 : 1;
    }

    // eta_pi(-1): +1 iff -1 is a square in O*.
    inline int eta_pi_of_minus_one(const FieldConfig &cfg)
    {
        return cfg.minus_one_is_square() ? 1 : -1;
    }

    /**
     * Phase: the order-4 group {±1, ±g} where g stands for the normalized Weil
     * index gamma_psi(pi). Its square g^2 = (pi,pi)_F is fixed by the field, so
     * multiplication takes a FieldConfig; g itself is never assigned a numeric
     * value.
     */
    struct Phase
    {
        int sign = 1;  // ±1
        int g_pow = 0; // 0 or 1

        constexpr Phase() = default;
        constexpr Phase(int s, int gp) : sign(s), g_pow(gp) {}

        static constexpr Phase one() { return {1, 0}; }
        static constexpr Phase minus_one() { return {-1, 0}; }
        static constexpr Phase g() { return {1, 1}; }
        static constexpr Phase minus_g() { return {-1, 1}; }

        bool operator==(const Phase &other) const = default;

        std::string to_string() const
        {
            if (g_pow == 0)
                return sign == 1 ? "1" : "-1";
            return sign == 1 ? "g" : "-g";
        }
    };

    inline Phase mul(const Phase &a, const Phase &b, const FieldConfig &cfg)
    {
        int sign = a.sign * b.sign;
        int gp = a.g_pow + b.g_pow;
        if (gp == 2)
        {
            sign *= cfg.pi_pi_symbol();
            gp = 0;
        }
        return {sign, gp};
    }

    inline Phase inverse(const Phase &a, const FieldConfig &cfg)
    {
        if (a.g_pow == 0)
            return a;
        // (s*g)^{-1} = s * g^{-1} = s * (pi,pi)_F * g
        return {a.sign * cfg.pi_pi_symbol(), 1};
    }

    /**
     * gamma_weil: the normalized Weil index gamma_psi on square classes, for the
     * fixed normalized psi. Class values: 1 -> 1, u0 -> 1, pi -> g,
     * pi*u0 -> -g; multiplicative up to Hilbert symbols,
     * gamma(ab) = gamma(a) gamma(b) (a,b)_F.
     */
    inline Phase gamma_weil(const SquareClassElement &a, const FieldConfig & /*cfg*/)
    {
        if (a.ord % 2 == 0)
            return Phase::one(); // gamma_psi(O* F*^2) = 1
        return a.unit == UnitClass::u0 ? Phase::minus_g() : Phase::g();
    }

    inline Phase gamma_weil_inverse(const SquareClassElement &a, const FieldConfig &cfg)
    {
        return inverse(gamma_weil(a, cfg), cfg);
    }

    inline const SquareClassElement kSquareClasses[4] = {
        SquareClassElement::one(), SquareClassElement::u_0(),
        SquareClassElement::pi(), SquareClassElement::pi_u0()};

} // namespace mwhit
