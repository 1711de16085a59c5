#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bloch {

/// Default screening prime (overridable through BLOCH_PRIME in the CLI).
inline constexpr std::uint32_t kDefaultPrime = 2147483629u;

/// Exact rational coefficients.
class Rationals {
public:
    using value_type = mpq_class;

    static value_type zero() { return value_type(0); }
    static value_type one() { return value_type(1); }
    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    static bool is_one(const value_type& a) { return a == 1; }

    static value_type from_integer(long v) { return value_type(v); }
    static value_type from_rational(const mpq_class& q) { return q; }

    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type neg(const value_type& a) { return -a; }
    static value_type inv(const value_type& a)
    {
        if (is_zero(a)) throw std::domain_error("division by zero");
        return 1 / a;
    }

    static std::string to_string(const value_type& a) { return a.get_str(); }
    static std::string name() { return "QQ"; }

    friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

/// Integers modulo a prime p < 2^31.
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p)
    {
        if (p < 2 || p >= (1u << 31)) throw std::invalid_argument("prime must lie in [2, 2^31)");
    }

    std::uint32_t modulus() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    static bool is_zero(value_type a) { return a == 0; }
    static bool is_one(value_type a) { return a == 1; }

    value_type from_integer(long v) const
    {
        long r = v % static_cast<long>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }

    value_type from_mpz(const mpz_class& z) const
    {
        mpz_class r = z % p_;
        if (r < 0) r += p_;
        return static_cast<value_type>(r.get_ui());
    }

    value_type from_rational(const mpq_class& q) const
    {
        const value_type den = from_mpz(q.get_den());
        if (den == 0) throw std::domain_error("denominator vanishes modulo p");
        return mul(from_mpz(q.get_num()), inv(den));
    }

    value_type add(value_type a, value_type b) const
    {
        const std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type mul(value_type a, value_type b) const
    {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type pow(value_type a, std::uint64_t e) const
    {
        std::uint64_t r = 1, b = a;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return static_cast<value_type>(r);
    }
    value_type inv(value_type a) const
    {
        if (a == 0) throw std::domain_error("division by zero");
        return pow(a, p_ - 2);
    }

    static std::string to_string(value_type a) { return std::to_string(a); }
    std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

}  // namespace bloch
