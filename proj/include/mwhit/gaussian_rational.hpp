#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mwhit
{

    /**
     * GaussRat: an exact Gaussian rational re + im*i with mpq components.
     * Field operations throughout; unitarity (|z|^2 == 1) is decidable exactly,
     * which is what the classifier needs.
     */
    struct GaussRat
    {
        mpq_class re{0};
        mpq_class im{0};

        GaussRat() = default;
        GaussRat(long r) : re(r) {}
        GaussRat(const mpq_class &r) : re(r) {}
        GaussRat(const mpq_class &r, const mpq_class &i) : re(r), im(i) {}

        static GaussRat i() { return {mpq_class(0), mpq_class(1)}; }

        bool is_zero() const { return re == 0 && im == 0; }
        bool is_real() const { return im == 0; }

        mpq_class norm_sq() const { return re * re + im * im; }

        bool is_unitary() const { return norm_sq() == 1; }

        friend GaussRat operator+(const GaussRat &a, const GaussRat &b)
        {
            return {a.re + b.re, a.im + b.im};
        }
        friend GaussRat operator-(const GaussRat &a, const GaussRat &b)
        {
            return {a.re - b.re, a.im - b.im};
        }
        friend GaussRat operator-(const GaussRat &a) { return {-a.re, -a.im}; }
        friend GaussRat operator*(const GaussRat &a, const GaussRat &b)
        {
            return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
        }
        GaussRat &operator+=(const GaussRat &b)
        {
            re += b.re;
            im += b.im;
            return *this;
        }
        GaussRat &operator*=(const GaussRat &b)
        {
            *this = *this * b;
            return *this;
        }

        GaussRat conj() const { return {re, -im}; }

        GaussRat inverse() const
        {
            mpq_class n = norm_sq();
            if (n == 0)
                throw std::domain_error("GaussRat: division by zero");
            return {re / n, -im / n};
        }

        friend GaussRat operator/(const GaussRat &a, const GaussRat &b)
        {
            return a * b.inverse();
        }

        GaussRat pow(long e) const
        {
            if (e < 0)
                return inverse().pow(-e);
            GaussRat result(1);
            GaussRat base = *this;
            while (e > 0)
            {
                if (e & 1)
                    result = result * base;
                base = base * base;
                e >>= 1;
            }
            return result;
        }

        bool operator==(const GaussRat &other) const
        {
            return re == other.re && im == other.im;
        }
        bool operator!=(const GaussRat &other) const { return !(*this == other); }

        // Canonical form: "p/q" for real values, "i", "-i", "bi", "a+bi", "a-bi";
        // the imaginary coefficient is printed as "p/q" with the i suffix.
        std::string to_string() const
        {
            auto rat = [](const mpq_class &x) { return x.get_str(); };
            if (im == 0)
                return rat(re);
            std::string imag;
            if (im == 1)
                imag = "i";
            else if (im == -1)
                imag = "-i";
            else
                imag = rat(im) + "i";
            if (re == 0)
                return imag;
            if (im > 0)
                return rat(re) + "+" + imag;
            return rat(re) + imag; // imag carries the minus sign
        }
    };

} // namespace mwhit
