#ifndef FSET_GF_HPP
#define FSET_GF_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Exact arithmetic in GF(p^n) and its quadratic extension GF(q^2), plus the
// integer-factoring and order machinery needed on top of it. Fields are
// immutable interned contexts; elements are small values carrying an index
// into the canonical element order (coefficient tuple read as a base-p
// integer, constant term least significant).

namespace fset {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Misuse of an operation: mixed contexts, division by zero, bad domain.
struct DomainError : Error {
    using Error::Error;
};

// Inputs exceed the desk-scale envelope (64-bit factoring, enumeration budgets).
struct DeskScaleError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t pos;
    ParseError(const std::string& what, std::size_t position) : Error(what), pos(position) {}
};

bool is_prime_u64(std::uint64_t n);

struct IntFactorization {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, int>> factors;  // primes strictly increasing
};

// Complete verified factorization by trial division + Brent's rho; every
// reported prime passes the deterministic Miller-Rabin test.
IntFactorization factor_integer(std::uint64_t n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

struct PrimePower {
    std::uint64_t p = 0;
    unsigned n = 0;
    std::uint32_t q = 0;  // p^n, capped at 2^16
};

class FieldCtx;

// Field element: index into the canonical order of GF(q). Index 0 is zero,
// index 1 is one; for extensions the index digits in base p are the
// coefficients on the power basis of the modulus root.
struct Felt {
    const FieldCtx* ctx = nullptr;
    std::uint32_t idx = 0;

    friend bool operator==(const Felt&, const Felt&) = default;
};

// Element of GF(q^2) written as u + v*y where y is a root of the canonical
// quadratic y^2 + B*y + C over GF(q).
struct Ext2 {
    const FieldCtx* ctx = nullptr;  // the base field GF(q)
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    friend bool operator==(const Ext2&, const Ext2&) = default;
};

class FieldCtx {
  public:
    // Interned: the same (p, n) always yields the same context object, so
    // pointer equality is context equality. Rejects q > 2^16.
    static const FieldCtx& get(std::uint64_t p, unsigned n);

    const PrimePower& pp() const { return pp_; }
    std::uint32_t q() const { return pp_.q; }
    std::uint64_t p() const { return pp_.p; }
    unsigned n() const { return pp_.n; }

    // Canonical modulus over GF(p); empty when n == 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Felt elt(std::uint32_t idx) const;
    Felt from_int(std::uint64_t v) const;  // v mod p, embedded in the prime field
    Felt zero() const { return elt(0); }
    Felt one() const { return elt(1); }

    std::vector<std::uint32_t> coeffs(std::uint32_t idx) const;  // length n, residues mod p
    std::uint32_t from_coeffs(const std::vector<std::uint32_t>& c) const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    // Raw small-field tables (index arithmetic), present when q <= 256.
    const std::uint16_t* mul_table() const { return mul_tab_.empty() ? nullptr : mul_tab_.data(); }
    const std::uint16_t* add_table() const { return add_tab_.empty() ? nullptr : add_tab_.data(); }

    // Canonical quadratic y^2 + B*y + C defining GF(q^2); built on first use.
    std::pair<std::uint32_t, std::uint32_t> ext2_modulus() const;

  private:
    FieldCtx(std::uint64_t p, unsigned n);

    PrimePower pp_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint16_t> add_tab_;
    std::vector<std::uint16_t> mul_tab_;
    std::vector<std::uint32_t> inv_tab_;

    mutable std::once_flag ext2_once_;
    mutable std::uint32_t ext2_b_ = 0;
    mutable std::uint32_t ext2_c_ = 0;
};

inline Felt operator+(const Felt& a, const Felt& b);
inline Felt operator-(const Felt& a, const Felt& b);
inline Felt operator*(const Felt& a, const Felt& b);
inline Felt operator-(const Felt& a);

void require_same_ctx(const Felt& a, const Felt& b);

Felt field_add(const Felt& a, const Felt& b);
Felt field_sub(const Felt& a, const Felt& b);
Felt field_mul(const Felt& a, const Felt& b);
Felt field_div(const Felt& a, const Felt& b);
Felt field_pow(const Felt& a, std::uint64_t e);

inline Felt operator+(const Felt& a, const Felt& b) { return field_add(a, b); }
inline Felt operator-(const Felt& a, const Felt& b) { return field_sub(a, b); }
inline Felt operator*(const Felt& a, const Felt& b) { return field_mul(a, b); }
inline Felt operator-(const Felt& a) { return Felt{a.ctx, a.ctx->neg(a.idx)}; }

// Least e >= 1 with a^e = 1; divides q-1.
std::uint64_t element_order(const Felt& a);

// Smallest element (canonical order) of multiplicative order q-1.
Felt find_generator(const FieldCtx& ctx);

// True iff a = b^l for some b. Convention: 0 is an l-th power for every l.
bool is_lth_power(const Felt& a, std::uint64_t l);

// --- quadratic extension -------------------------------------------------

Ext2 ext2_from(const Felt& a);
Ext2 ext2_make(const FieldCtx& ctx, std::uint32_t u, std::uint32_t v);
Ext2 ext2_from_index(const FieldCtx& ctx, std::uint64_t idx);  // idx = u + v*q
std::uint64_t ext2_index(const Ext2& a);

Ext2 ext2_add(const Ext2& a, const Ext2& b);
Ext2 ext2_sub(const Ext2& a, const Ext2& b);
Ext2 ext2_mul(const Ext2& a, const Ext2& b);
Ext2 ext2_inv(const Ext2& a);
Ext2 ext2_pow(const Ext2& a, std::uint64_t e);
bool ext2_is_zero(const Ext2& a);

// (b + b^q, b * b^q), both landing in GF(q).
std::pair<Felt, Felt> trace_norm(const Ext2& b);

std::uint64_t ext2_element_order(const Ext2& a);
Ext2 ext2_find_generator(const FieldCtx& ctx);

}  // namespace fset

#endif
