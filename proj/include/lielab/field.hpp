#ifndef LIELAB_FIELD_HPP
#define LIELAB_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "error.hpp"

namespace lielab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/*
 * A field is a small value object (a "domain" in the fflas/LinBox sense)
 * that owns the arithmetic of its element type.  Elements carry no
 * reference to their field; every operation goes through the field.
 */
template <class F>
concept ExactField = std::copyable<F> && std::equality_comparable<F> &&
                     requires(const F& f, const typename F::element& a, const typename F::element& b) {
                         typename F::element;
                         { F::is_finite } -> std::convertible_to<bool>;
                         { f.zero() } -> std::same_as<typename F::element>;
                         { f.one() } -> std::same_as<typename F::element>;
                         { f.from_int(std::int64_t{}) } -> std::same_as<typename F::element>;
                         { f.from_rational(BigRational{}) } -> std::same_as<typename F::element>;
                         { f.add(a, b) } -> std::same_as<typename F::element>;
                         { f.sub(a, b) } -> std::same_as<typename F::element>;
                         { f.mul(a, b) } -> std::same_as<typename F::element>;
                         { f.neg(a) } -> std::same_as<typename F::element>;
                         { f.inv(a) } -> std::same_as<typename F::element>;
                         { f.is_zero(a) } -> std::convertible_to<bool>;
                         { f.equal(a, b) } -> std::convertible_to<bool>;
                         { f.characteristic() } -> std::convertible_to<std::uint64_t>;
                         { f.to_string(a) } -> std::convertible_to<std::string>;
                     };

template <class F>
concept FiniteField = ExactField<F> && F::is_finite && requires(const F& f, std::uint64_t i) {
    { f.order() } -> std::convertible_to<std::uint64_t>;
    { f.element_at(i) } -> std::same_as<typename F::element>;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void require_torsion_free(std::uint64_t characteristic) {
    if (characteristic == 2 || characteristic == 3)
        throw TorsionError("characteristic " + std::to_string(characteristic) +
                           " is not allowed: 2 and 3 must be invertible");
}

}  // namespace detail

/// The prime field F_p, residues stored in [0, p).
class PrimeField {
   public:
    using element = std::uint32_t;
    static constexpr bool is_finite = true;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        detail::require_torsion_free(p);
        if (p >= (std::uint64_t{1} << 31) || !detail::is_prime(p))
            throw std::invalid_argument("Fp requires a prime below 2^31, got " + std::to_string(p));
    }

    element zero() const { return 0; }
    element one() const { return 1; }
    element from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<element>(r);
    }
    element from_rational(const BigRational& q) const {
        BigInt pp = p_;
        BigInt n = boost::multiprecision::numerator(q) % pp;
        BigInt d = boost::multiprecision::denominator(q) % pp;
        if (n < 0) n += pp;
        if (d < 0) d += pp;
        if (d == 0) throw std::domain_error("denominator divisible by the characteristic");
        return mul(static_cast<element>(n), inv(static_cast<element>(d)));
    }
    element add(element a, element b) const {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<element>(s >= p_ ? s - p_ : s);
    }
    element sub(element a, element b) const { return a >= b ? a - b : static_cast<element>(a + p_ - b); }
    element mul(element a, element b) const { return static_cast<element>((std::uint64_t{a} * b) % p_); }
    element neg(element a) const { return a == 0 ? 0 : static_cast<element>(p_ - a); }
    element inv(element a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        // Fermat: a^(p-2)
        std::uint64_t result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<element>(result);
    }
    bool is_zero(element a) const { return a == 0; }
    bool equal(element a, element b) const { return a == b; }
    std::uint64_t characteristic() const { return p_; }
    std::uint64_t order() const { return p_; }
    element element_at(std::uint64_t i) const { return static_cast<element>(i); }
    std::string to_string(element a) const { return std::to_string(a); }
    std::string name() const { return "Fp " + std::to_string(p_); }

    bool operator==(const PrimeField&) const = default;

   private:
    std::uint64_t p_;
};

/// The rationals with arbitrary-precision numerators and denominators.
class RationalField {
   public:
    using element = BigRational;
    static constexpr bool is_finite = false;

    element zero() const { return 0; }
    element one() const { return 1; }
    element from_int(std::int64_t v) const { return element(v); }
    element from_rational(const BigRational& q) const { return q; }
    element add(const element& a, const element& b) const { return a + b; }
    element sub(const element& a, const element& b) const { return a - b; }
    element mul(const element& a, const element& b) const { return a * b; }
    element neg(const element& a) const { return -a; }
    element inv(const element& a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return element(1) / a;
    }
    bool is_zero(const element& a) const { return a == 0; }
    bool equal(const element& a, const element& b) const { return a == b; }
    std::uint64_t characteristic() const { return 0; }
    std::string to_string(const element& a) const {
        if (boost::multiprecision::denominator(a) == 1) return boost::multiprecision::numerator(a).str();
        return boost::multiprecision::numerator(a).str() + "/" + boost::multiprecision::denominator(a).str();
    }
    std::string name() const { return "Q"; }

    bool operator==(const RationalField&) const = default;
};

/// Parses "3", "-2", "1/2" into an exact rational.
inline BigRational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    auto parse_int = [](std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty integer");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw std::invalid_argument("malformed integer");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
        return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    if (slash == std::string_view::npos) return BigRational(parse_int(text));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(parse_int(text.substr(0, slash)), den);
}

static_assert(FiniteField<PrimeField>);
static_assert(ExactField<RationalField>);

}  // namespace lielab

#endif
