#ifndef FSET_FAMILIES_HPP
#define FSET_FAMILIES_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "fset/fsets.hpp"
#include "fset/gf.hpp"
#include "fset/poly.hpp"

// Constructors and membership oracles for the explicit F-set families, plus
// the parameter searches behind them (prime selection, non-l-power pairs,
// successor quadratics) and the S(q, l) counting certificate.

namespace fset {

enum class FamilyKind { Width1, Q3Iterated, Width2, Cyclo2, FullIq };

std::string family_kind_name(FamilyKind k);

struct AnalyticWidth {
    enum class Tag { Finite, Infinite, NotApplicable } tag = Tag::NotApplicable;
    unsigned value = 0;

    static AnalyticWidth finite(unsigned w) { return {Tag::Finite, w}; }
    static AnalyticWidth infinite() { return {Tag::Infinite, 0}; }
    static AnalyticWidth na() { return {Tag::NotApplicable, 0}; }
    std::string str() const;
};

struct FamilySpec {
    FamilyKind kind;
    const FieldCtx* ctx = nullptr;
    std::optional<std::uint64_t> l;
    std::optional<Felt> alpha;
    std::optional<Felt> beta;
    AnalyticWidth analytic_width;

    FSetView view() const;
    bool membership(const Poly& g) const;
    PolySet enumerate(unsigned max_deg) const;
};

// Prime selection for the width-2 construction: 2 when q = 1 mod 4, the
// smallest odd prime of q-1 when q = 3 mod 4, 3 when q = 4, and the smallest
// prime >= 5 dividing q-1 when q = 2^n, n >= 3 (such a prime always exists;
// its absence would contradict Mihailescu's theorem, so we hard-fail).
std::uint64_t choose_l(const FieldCtx& ctx);

// First pair (alpha, beta) in canonical scan order with both non-l-powers and
// x^2 + alpha*x + beta irreducible.
std::pair<Felt, Felt> find_alpha_beta(const FieldCtx& ctx, std::uint64_t l);

struct SCertificate {
    std::uint64_t q = 0;
    std::uint64_t l = 0;
    // A, B, C with denominator 2: A(l) = (l^2-4l+2)/2 etc.
    std::int64_t a_num2 = 0;
    std::int64_t b_num2 = 0;
    std::int64_t c_num2 = 0;
    std::int64_t s_value = 0;  // S(q, l), always an integer
    // direct counting comparison, defined when l | q-1:
    std::optional<std::uint64_t> count_lhs;  // (q^2-q)/2 + (q-1-(q-1)/l)^2
    std::optional<std::uint64_t> count_rhs;  // q^2 - 1
};

SCertificate s_certificate(std::uint64_t q, std::uint64_t l);

// {x} u {x^(l^k) - alpha}: alpha a generator, l a prime of q-1 (odd when
// q = 3 mod 4). Width 1.
FamilySpec build_width1(const FieldCtx& ctx);

// {x} u {x^(l^k) + alpha} u {f(x^(l^k))} with f = x^2 + alpha*x + beta.
// Width 2.
FamilySpec build_width2(const FieldCtx& ctx);

// {f in I_q : f | x^(2^k) - a}; requires q = 3 mod 4. Infinite width.
FamilySpec build_cyclo2(const FieldCtx& ctx);

// Iterated-quadratic family {x, x+2, x-2} u {f_k}, f = x^2 - 2, over any
// field where 2 is a non-square. Infinite width.
FamilySpec build_width1_infinite_case(const FieldCtx& ctx);

// All of I_q as a family view.
FamilySpec build_full_iq(const FieldCtx& ctx);

// Explicit truncation {x, x+2, x-2, f_1, ..., f_K} of the iterated-quadratic
// family over GF(3); verified closed and irreducible.
FSetView build_q3_iterated(unsigned K);

// Order criterion: g (monic irreducible, or x by convention) divides some
// x^(2^k) - a iff the odd part of its order divides q-1.
bool cyclo2_membership(const Poly& g);

// Direct divisor search g | x^(2^k) - a for k <= k_max; the oracle the order
// criterion is checked against.
bool cyclo2_membership_bruteforce(const Poly& g, unsigned k_max);

// Every irreducible factor of x^(2^k) - a has degree 1 or looks like
// x^(2^(t+1)) + b*x^(2^t) + c. Odd q only.
bool factor_shape_check(const FieldCtx& ctx, const Felt& a, unsigned k);

struct SuccessorWitness {
    unsigned s = 0;
    Felt d;
    Felt e;
    Poly h;  // x^(2^(s+1)) + d*x^(2^s) + e
};

// For a cyclo2 member f != x: a member h with f | h - h(0). Built from an
// order-2^r element of GF(q^2) via trace and norm; all claimed properties
// are asserted before returning.
SuccessorWitness find_successor_quadratic(const Poly& f);

}  // namespace fset

#endif
