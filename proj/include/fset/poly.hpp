#ifndef FSET_POLY_HPP
#define FSET_POLY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fset/gf.hpp"

// Dense univariate polynomials over GF(q): ring arithmetic, irreducibility,
// factorization, multiplicative order and the irreducibility predicates used
// by the family constructions.

namespace fset {

struct Poly {
    const FieldCtx* ctx = nullptr;
    std::vector<std::uint32_t> c;  // element indices, ascending degree, no trailing zeros

    static Poly zero(const FieldCtx& f) { return Poly{&f, {}}; }
    static Poly one(const FieldCtx& f) { return Poly{&f, {1}}; }
    static Poly x(const FieldCtx& f) { return Poly{&f, {0, 1}}; }
    static Poly constant(const Felt& a) { return a.idx == 0 ? Poly{a.ctx, {}} : Poly{a.ctx, {a.idx}}; }
    // from element indices, ascending degree
    static Poly from_indices(const FieldCtx& f, std::vector<std::uint32_t> coeffs);
    // from small integers reduced into the prime subfield (handy in tests)
    static Poly from_ints(const FieldCtx& f, const std::vector<std::int64_t>& coeffs);

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    Felt leading() const { return Felt{ctx, c.empty() ? 0u : c.back()}; }
    Felt constant_term() const { return Felt{ctx, c.empty() ? 0u : c.front()}; }
    Felt coeff(std::size_t i) const { return Felt{ctx, i < c.size() ? c[i] : 0u}; }

    friend bool operator==(const Poly&, const Poly&) = default;
};

void require_same_ctx(const Poly& a, const Poly& b);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Felt& s);
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);  // (quotient, remainder)
Poly poly_mod(const Poly& a, const Poly& b);
bool poly_divides(const Poly& a, const Poly& b);  // a | b
Poly poly_gcd(const Poly& a, const Poly& b);      // monic (or zero)
Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& mod);
Poly poly_derivative(const Poly& a);
Poly poly_compose(const Poly& f, const Poly& g);  // f(g(x))
Felt poly_eval(const Poly& f, const Felt& a);
Poly monic_normalized(const Poly& a);

inline Poly operator+(const Poly& a, const Poly& b) { return poly_add(a, b); }
inline Poly operator-(const Poly& a, const Poly& b) { return poly_sub(a, b); }
inline Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

// f - f(0); for f = x this is x itself.
Poly shifted_by_constant(const Poly& f);

// f(x^t)
Poly substitute_power(const Poly& f, std::uint64_t t);

// Ordering by (degree, coefficient tuple highest degree first).
bool canonical_less(const Poly& a, const Poly& b);

// Rabin test; throws on constant input.
bool is_irreducible(const Poly& f);

struct Factorization {
    Felt unit;
    std::vector<std::pair<Poly, int>> factors;  // monic irreducible, sorted canonically

    Poly product() const;
};

inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eedf5e7u;

// Complete factorization into monic irreducibles. The equal-degree split uses
// a seeded PRNG; output ordering is canonical regardless of seed.
Factorization factor(const Poly& f, std::uint64_t seed = kDefaultFactorSeed);

struct PolyOrder {
    std::uint64_t e = 0;  // least e with f | x^e - 1
    int s = 0;            // 2-adic valuation
    std::uint64_t m = 0;  // odd part
};

// Defined for monic irreducible f with f(0) != 0; throws DeskScaleError when
// q^deg(f) - 1 exceeds the 64-bit factoring bound.
PolyOrder poly_order(const Poly& f);

struct PredicateResult {
    bool applies = false;
    std::string reason;  // empty when it applies
};

// Order-based substitution criterion: every prime of t divides e, none
// divides (q^m-1)/e, and q^m = 1 mod 4 when 4 | t. When it applies, f(x^t)
// is irreducible.
PredicateResult thm33_predicate(const Poly& f, std::uint64_t t);

// Root-of-unity substitution criterion: f(0) is not a p-th power (and for
// p = 2, either -1 is a square or deg f is even). When it applies, f(x^(p^k))
// is irreducible for every k.
PredicateResult prop41_predicate(const Poly& f, std::uint64_t p);

struct QuadraticIteration {
    Felt gamma;
    Felt shift;
    Poly f;                           // (x - gamma)^2 + gamma + shift
    unsigned k = 0;                   // iteration count, >= 2
    std::vector<Felt> trace_values;   // {-f(gamma), f_2(gamma), ..., f_k(gamma)}
};

QuadraticIteration make_quadratic_iteration(const FieldCtx& ctx, const Felt& gamma, const Felt& shift, unsigned k);

// k-fold composition f_k with f_0 = x.
Poly iterate_poly(const Poly& f, unsigned k);

// True iff no element of trace_values is a square; equivalent to f_k being
// irreducible (odd characteristic only).
bool quadratic_iteration_check(const QuadraticIteration& qi);

// Number of monic irreducibles of degree m (necklace formula).
std::uint64_t count_monic_irreducibles(const FieldCtx& ctx, unsigned m);

// Mark-composites sieve over the index space of monic degree-d polynomials.
// Independent of the Rabin test: composites are generated as explicit
// products. Indices encode coefficients below the leading 1, highest degree
// most significant.
class IrreducibleSieve {
  public:
    explicit IrreducibleSieve(const FieldCtx& ctx, std::uint64_t index_budget = std::uint64_t(1) << 31);

    std::uint64_t count(unsigned degree);
    void for_each(unsigned degree, const std::function<void(const Poly&)>& fn);
    std::vector<Poly> list(unsigned degree);

    Poly decode(unsigned degree, std::uint64_t index) const;
    std::uint64_t encode(const Poly& f) const;  // f monic

  private:
    const std::vector<std::uint64_t>& composite_bits(unsigned degree);

    const FieldCtx& ctx_;
    std::uint64_t budget_;
    std::vector<std::vector<std::uint64_t>> bitmaps_;        // per degree
    std::vector<std::vector<std::uint64_t>> index_lists_;    // low degrees only
};

// All monic irreducibles of degree <= max_deg in canonical order.
std::vector<Poly> enumerate_monic_irreducibles(const FieldCtx& ctx, unsigned max_deg,
                                               std::uint64_t index_budget = std::uint64_t(1) << 31);

}  // namespace fset

#endif
