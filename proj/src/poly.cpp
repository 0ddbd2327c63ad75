#include "fset/poly.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace fset {

namespace {

void trim(std::vector<std::uint32_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// q^m with overflow / desk-scale guard
std::uint64_t checked_pow_u64(std::uint64_t q, unsigned m, const char* what) {
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < m; ++i) {
        r *= q;
        if (r > ~std::uint64_t(0)) throw DeskScaleError(std::string(what) + ": q^m exceeds 64-bit bound");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

Poly Poly::from_indices(const FieldCtx& f, std::vector<std::uint32_t> coeffs) {
    for (auto v : coeffs)
        if (v >= f.q()) throw DomainError("Poly: coefficient index out of range");
    trim(coeffs);
    return Poly{&f, std::move(coeffs)};
}

Poly Poly::from_ints(const FieldCtx& f, const std::vector<std::int64_t>& coeffs) {
    std::vector<std::uint32_t> c;
    c.reserve(coeffs.size());
    const std::int64_t p = static_cast<std::int64_t>(f.p());
    for (auto v : coeffs) c.push_back(static_cast<std::uint32_t>(((v % p) + p) % p));
    trim(c);
    return Poly{&f, std::move(c)};
}

void require_same_ctx(const Poly& a, const Poly& b) {
    if (a.ctx != b.ctx) throw DomainError("polynomials from different contexts");
}

Poly poly_add(const Poly& a, const Poly& b) {
    require_same_ctx(a, b);
    const FieldCtx& F = *a.ctx;
    std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = F.add(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
    trim(c);
    return Poly{&F, std::move(c)};
}

Poly poly_neg(const Poly& a) {
    std::vector<std::uint32_t> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.ctx->neg(a.c[i]);
    return Poly{a.ctx, std::move(c)};
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

Poly poly_mul(const Poly& a, const Poly& b) {
    require_same_ctx(a, b);
    const FieldCtx& F = *a.ctx;
    if (a.is_zero() || b.is_zero()) return Poly::zero(F);
    std::vector<std::uint32_t> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return Poly{&F, std::move(c)};
}

Poly poly_scale(const Poly& a, const Felt& s) {
    if (a.ctx != s.ctx) throw DomainError("polynomials from different contexts");
    if (s.idx == 0) return Poly::zero(*a.ctx);
    std::vector<std::uint32_t> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.ctx->mul(a.c[i], s.idx);
    return Poly{a.ctx, std::move(c)};
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    require_same_ctx(a, b);
    const FieldCtx& F = *a.ctx;
    if (b.is_zero()) throw DomainError("poly_divmod: division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly::zero(F), a};
    std::vector<std::uint32_t> rem = a.c;
    std::vector<std::uint32_t> quo(a.c.size() - b.c.size() + 1, 0);
    const std::uint32_t linv = F.inv(b.c.back());
    for (std::size_t i = rem.size(); i-- > b.c.size() - 1;) {
        if (i + 1 < b.c.size()) break;
        std::size_t shift = i - (b.c.size() - 1);
        std::uint32_t coef = F.mul(rem[i], linv);
        if (coef == 0) continue;
        quo[shift] = coef;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            rem[shift + j] = F.sub(rem[shift + j], F.mul(coef, b.c[j]));
    }
    trim(rem);
    trim(quo);
    return {Poly{&F, std::move(quo)}, Poly{&F, std::move(rem)}};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

bool poly_divides(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero();
    return poly_mod(b, a).is_zero();
}

Poly monic_normalized(const Poly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return poly_scale(a, Felt{a.ctx, a.ctx->inv(a.c.back())});
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    require_same_ctx(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic_normalized(x);
}

Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
    require_same_ctx(base, mod);
    Poly r = Poly::one(*base.ctx);
    Poly b = poly_mod(base, mod);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, b), mod);
        b = poly_mod(poly_mul(b, b), mod);
        e >>= 1;
    }
    return r;
}

Poly poly_derivative(const Poly& a) {
    const FieldCtx& F = *a.ctx;
    if (a.c.size() <= 1) return Poly::zero(F);
    std::vector<std::uint32_t> c(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        // i as a prime-field scalar; prime-subfield elements sit at indices 0..p-1
        c[i - 1] = F.mul(a.c[i], static_cast<std::uint32_t>(i % F.p()));
    }
    trim(c);
    return Poly{&F, std::move(c)};
}

Felt poly_eval(const Poly& f, const Felt& a) {
    if (f.ctx != a.ctx) throw DomainError("poly_eval: mixed contexts");
    std::uint32_t r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = f.ctx->add(f.ctx->mul(r, a.idx), f.c[i]);
    return Felt{f.ctx, r};
}

Poly poly_compose(const Poly& f, const Poly& g) {
    require_same_ctx(f, g);
    Poly r = Poly::zero(*f.ctx);
    for (std::size_t i = f.c.size(); i-- > 0;) {
        r = poly_mul(r, g);
        r = poly_add(r, Poly::constant(Felt{f.ctx, f.c[i]}));
    }
    return r;
}

Poly shifted_by_constant(const Poly& f) {
    Poly r = f;
    if (!r.c.empty()) {
        r.c[0] = 0;
        trim(r.c);
    }
    return r;
}

Poly substitute_power(const Poly& f, std::uint64_t t) {
    if (t == 0) throw DomainError("substitute_power: t must be >= 1");
    if (t == 1 || f.is_zero()) return f;
    std::vector<std::uint32_t> c((f.c.size() - 1) * t + 1, 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) c[i * t] = f.c[i];
    return Poly{f.ctx, std::move(c)};
}

bool canonical_less(const Poly& a, const Poly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (std::size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    }
    return false;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) throw DomainError("is_irreducible: constant input");
    const FieldCtx& F = *f.ctx;
    const unsigned m = static_cast<unsigned>(f.degree());
    if (m == 1) return true;
    Poly g = monic_normalized(f);
    const Poly x = Poly::x(F);
    auto fac = factor_integer(m);
    std::vector<unsigned> checkpoints;
    for (auto& [r, e] : fac.factors) checkpoints.push_back(m / static_cast<unsigned>(r));
    Poly cur = x;
    for (unsigned k = 1; k <= m; ++k) {
        cur = poly_powmod(cur, F.q(), g);  // x^(q^k) mod g
        if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
            if (poly_gcd(poly_sub(cur, x), g).degree() != 0) return false;
        }
    }
    return poly_sub(cur, x).is_zero();
}

// --- factorization ----------------------------------------------------------

namespace {

// p-th root of a polynomial whose exponents are all multiples of p.
Poly pth_root(const Poly& f) {
    const FieldCtx& F = *f.ctx;
    const std::uint64_t p = F.p();
    std::uint64_t root_exp = 1;  // p^(n-1): c^(p^(n-1)) is the p-th root of c
    for (unsigned i = 1; i < F.n(); ++i) root_exp *= p;
    std::vector<std::uint32_t> c(f.c.size() / p + 1, 0);
    for (std::size_t i = 0; i < f.c.size(); i += p) c[i / p] = F.pow(f.c[i], root_exp);
    trim(c);
    return Poly{&F, std::move(c)};
}

Poly random_poly_below(const FieldCtx& F, int deg_bound, std::mt19937_64& rng) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(deg_bound));
    std::uniform_int_distribution<std::uint32_t> dist(0, F.q() - 1);
    for (auto& v : c) v = dist(rng);
    trim(c);
    return Poly{&F, std::move(c)};
}

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void edf(const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const FieldCtx& F = *f.ctx;
    if (static_cast<unsigned>(f.degree()) == d) {
        out.push_back(f);
        return;
    }
    const std::uint64_t q = F.q();
    Poly split = Poly::one(F);
    while (split.degree() == 0 || split.degree() == f.degree()) {
        Poly h = random_poly_below(F, f.degree(), rng);
        if (h.degree() < 1) continue;
        Poly t;
        if (F.p() == 2) {
            // trace map to GF(2): sum of h^(2^i) over the degree of GF(q^d)/GF(2)
            Poly acc = poly_mod(h, f);
            Poly cur = acc;
            const unsigned steps = F.n() * d;
            for (unsigned i = 1; i < steps; ++i) {
                cur = poly_powmod(cur, 2, f);
                acc = poly_add(acc, cur);
            }
            t = acc;
        } else {
            // norm to GF(q), then the quadratic character
            Poly nrm = poly_mod(h, f);
            Poly cur = nrm;
            for (unsigned i = 1; i < d; ++i) {
                cur = poly_powmod(cur, q, f);
                nrm = poly_mod(poly_mul(nrm, cur), f);
            }
            t = poly_sub(poly_powmod(nrm, (q - 1) / 2, f), Poly::one(F));
        }
        split = poly_gcd(t, f);
    }
    Poly other = poly_divmod(f, split).first;
    edf(split, d, rng, out);
    edf(other, d, rng, out);
}

// Distinct-degree split, then equal-degree split, of a monic squarefree poly.
void factor_squarefree(const Poly& f, std::mt19937_64& rng, std::vector<Poly>& out) {
    const FieldCtx& F = *f.ctx;
    Poly g = f;
    const Poly x = Poly::x(F);
    Poly h = poly_mod(x, g);
    unsigned d = 0;
    while (g.degree() > 0 && g.degree() >= 2 * static_cast<int>(d + 1)) {
        ++d;
        h = poly_powmod(h, F.q(), g);
        Poly gd = poly_gcd(poly_sub(h, x), g);
        if (gd.degree() > 0) {
            edf(gd, d, rng, out);
            g = poly_divmod(g, gd).first;
            h = poly_mod(h, g);
        }
    }
    if (g.degree() > 0) out.push_back(g);
}

void sff(const Poly& f, int mult, std::mt19937_64& rng, std::vector<std::pair<Poly, int>>& out) {
    const FieldCtx& F = *f.ctx;
    if (f.degree() < 1) return;
    Poly d = poly_derivative(f);
    if (d.is_zero()) {
        sff(pth_root(f), mult * static_cast<int>(F.p()), rng, out);
        return;
    }
    Poly c = poly_gcd(f, d);
    Poly w = poly_divmod(f, c).first;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, c);
        Poly z = poly_divmod(w, y).first;
        if (z.degree() > 0) {
            std::vector<Poly> irr;
            factor_squarefree(z, rng, irr);
            for (auto& g : irr) out.emplace_back(g, i * mult);
        }
        w = std::move(y);
        c = poly_divmod(c, w).first;
        ++i;
    }
    if (c.degree() > 0) sff(pth_root(c), mult * static_cast<int>(F.p()), rng, out);
}

}  // namespace

Poly Factorization::product() const {
    if (factors.empty()) return Poly::constant(unit);
    Poly r = Poly::constant(unit);
    for (auto& [g, e] : factors)
        for (int i = 0; i < e; ++i) r = poly_mul(r, g);
    return r;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw DomainError("factor: zero polynomial");
    const FieldCtx& F = *f.ctx;
    Factorization fac{f.leading(), {}};
    if (f.degree() < 1) return fac;
    std::mt19937_64 rng(seed);
    sff(monic_normalized(f), 1, rng, fac.factors);
    std::sort(fac.factors.begin(), fac.factors.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return fac;
}

PolyOrder poly_order(const Poly& f) {
    const FieldCtx& F = *f.ctx;
    if (f.degree() < 1) throw DomainError("poly_order: constant input");
    if (f.constant_term().idx == 0) throw DomainError("poly_order: f(0) = 0");
    if (!is_irreducible(f)) throw DomainError("poly_order: input is not irreducible");
    Poly g = monic_normalized(f);
    const unsigned m = static_cast<unsigned>(g.degree());
    const std::uint64_t group = checked_pow_u64(F.q(), m, "poly_order") - 1;
    auto fac = factor_integer(group);
    const Poly x = Poly::x(F);
    std::uint64_t e = group;
    for (auto& [r, exp] : fac.factors) {
        while (e % r == 0 && poly_sub(poly_powmod(x, e / r, g), Poly::one(F)).is_zero()) e /= r;
    }
    if (!poly_sub(poly_powmod(x, e, g), Poly::one(F)).is_zero())
        throw Error("poly_order: internal verification failed");
    PolyOrder ord;
    ord.e = e;
    ord.s = std::countr_zero(e);
    ord.m = e >> ord.s;
    return ord;
}

PredicateResult thm33_predicate(const Poly& f, std::uint64_t t) {
    if (t == 0) throw DomainError("thm33_predicate: t must be positive");
    const FieldCtx& F = *f.ctx;
    PolyOrder ord = poly_order(f);
    const unsigned m = static_cast<unsigned>(f.degree());
    const std::uint64_t group = checked_pow_u64(F.q(), m, "thm33_predicate") - 1;
    const std::uint64_t cofactor = group / ord.e;
    for (auto& [r, e] : factor_integer(t).factors) {
        if (ord.e % r != 0) return {false, "prime " + std::to_string(r) + " of t does not divide the order"};
        if (cofactor % r == 0) return {false, "prime " + std::to_string(r) + " of t divides (q^m-1)/e"};
    }
    if (t % 4 == 0 && (group % 4) != 0) return {false, "4 | t but q^m is not 1 mod 4"};
    return {true, ""};
}

PredicateResult prop41_predicate(const Poly& f, std::uint64_t p) {
    if (!is_prime_u64(p)) throw DomainError("prop41_predicate: p must be prime");
    const FieldCtx& F = *f.ctx;
    const std::uint64_t q = F.q();
    const bool has_root_of_unity = (p == 2) ? (q % 2 == 1) : ((q - 1) % p == 0);
    if (!has_root_of_unity) throw DomainError("prop41_predicate: field has no primitive p-th root of unity");
    if (!f.is_monic() || !is_irreducible(f)) throw DomainError("prop41_predicate: f must be monic irreducible");
    if (is_lth_power(f.constant_term(), p)) return {false, "f(0) is a p-th power"};
    if (p == 2 && q % 4 != 1 && f.degree() % 2 != 0)
        return {false, "p = 2 but -1 is not a square and deg f is odd"};
    return {true, ""};
}

QuadraticIteration make_quadratic_iteration(const FieldCtx& ctx, const Felt& gamma, const Felt& shift, unsigned k) {
    if (ctx.p() == 2) throw DomainError("quadratic iteration requires odd characteristic");
    if (k < 2) throw DomainError("quadratic iteration requires k >= 2");
    QuadraticIteration qi;
    qi.gamma = gamma;
    qi.shift = shift;
    qi.k = k;
    Poly xg = poly_sub(Poly::x(ctx), Poly::constant(gamma));
    qi.f = poly_add(poly_mul(xg, xg), Poly::constant(gamma + shift));
    // adjusted critical orbit: -f(gamma), f_2(gamma), ..., f_k(gamma)
    Felt c = poly_eval(qi.f, gamma);  // f_1(gamma)
    qi.trace_values.push_back(-c);
    for (unsigned j = 2; j <= k; ++j) {
        c = poly_eval(qi.f, c);  // f_j(gamma)
        qi.trace_values.push_back(c);
    }
    return qi;
}

Poly iterate_poly(const Poly& f, unsigned k) {
    Poly r = Poly::x(*f.ctx);
    for (unsigned i = 0; i < k; ++i) r = poly_compose(f, r);
    return r;
}

bool quadratic_iteration_check(const QuadraticIteration& qi) {
    for (auto& v : qi.trace_values) {
        if (is_lth_power(v, 2)) return false;
    }
    return true;
}

std::uint64_t count_monic_irreducibles(const FieldCtx& ctx, unsigned m) {
    if (m < 1) throw DomainError("count_monic_irreducibles: m must be >= 1");
    // (1/m) sum_{d | m} mu(d) q^(m/d)
    auto mobius = [](std::uint64_t d) -> int {
        int mu = 1;
        for (auto& [p, e] : factor_integer(d).factors) {
            if (e > 1) return 0;
            mu = -mu;
        }
        return mu;
    };
    std::int64_t total = 0;
    for (std::uint64_t d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        std::uint64_t term = checked_pow_u64(ctx.q(), m / static_cast<unsigned>(d), "count_monic_irreducibles");
        total += mu * static_cast<std::int64_t>(term);
    }
    return static_cast<std::uint64_t>(total / m);
}

// --- sieve -------------------------------------------------------------------

IrreducibleSieve::IrreducibleSieve(const FieldCtx& ctx, std::uint64_t index_budget)
    : ctx_(ctx), budget_(index_budget) {
    if (ctx.q() > 256) throw DeskScaleError("IrreducibleSieve: q > 256 is outside the enumeration envelope");
}

Poly IrreducibleSieve::decode(unsigned degree, std::uint64_t index) const {
    std::vector<std::uint32_t> c(degree + 1);
    c[degree] = 1;
    for (unsigned i = 0; i < degree; ++i) {
        c[i] = static_cast<std::uint32_t>(index % ctx_.q());
        index /= ctx_.q();
    }
    return Poly{&ctx_, std::move(c)};
}

std::uint64_t IrreducibleSieve::encode(const Poly& f) const {
    if (!f.is_monic()) throw DomainError("IrreducibleSieve::encode: polynomial must be monic");
    std::uint64_t idx = 0;
    for (std::size_t i = f.c.size() - 1; i-- > 0;) idx = idx * ctx_.q() + f.c[i];
    return idx;
}

const std::vector<std::uint64_t>& IrreducibleSieve::composite_bits(unsigned degree) {
    if (degree == 0) throw DomainError("IrreducibleSieve: degree must be >= 1");
    if (bitmaps_.size() <= degree) bitmaps_.resize(degree + 1);
    if (index_lists_.size() <= degree) index_lists_.resize(degree + 1);
    auto& bits = bitmaps_[degree];
    if (!bits.empty() || degree == 1) return bits;  // degree 1: nothing composite

    const std::uint32_t q = ctx_.q();
    std::uint64_t space = 1;
    for (unsigned i = 0; i < degree; ++i) {
        space *= q;
        if (space > budget_) throw DeskScaleError("IrreducibleSieve: q^degree exceeds index budget");
    }
    bits.assign((space + 63) / 64, 0);

    const std::uint16_t* mul = ctx_.mul_table();
    const std::uint16_t* addt = ctx_.add_table();
    std::vector<std::uint32_t> prod(degree + 1);
    std::vector<std::uint32_t> h;
    for (unsigned a = 1; 2 * a <= degree; ++a) {
        // irreducibles of degree a, as index lists
        if (index_lists_[a].empty()) {
            composite_bits(a);
            std::uint64_t sub_space = 1;
            for (unsigned i = 0; i < a; ++i) sub_space *= q;
            auto& lst = index_lists_[a];
            const auto& sub_bits = bitmaps_[a];
            for (std::uint64_t i = 0; i < sub_space; ++i) {
                bool composite = a > 1 && ((sub_bits[i >> 6] >> (i & 63)) & 1);
                if (!composite) lst.push_back(i);
            }
        }
        const unsigned b = degree - a;
        std::uint64_t hcount = 1;
        for (unsigned i = 0; i < b; ++i) hcount *= q;
        for (std::uint64_t gidx : index_lists_[a]) {
            std::vector<std::uint32_t> g(a + 1);
            g[a] = 1;
            std::uint64_t t = gidx;
            for (unsigned i = 0; i < a; ++i) {
                g[i] = static_cast<std::uint32_t>(t % q);
                t /= q;
            }
            h.assign(b + 1, 0);
            h[b] = 1;
            for (std::uint64_t hi = 0;; ++hi) {
                // prod = g * h
                std::fill(prod.begin(), prod.end(), 0);
                for (unsigned i = 0; i <= a; ++i) {
                    const std::uint32_t gi = g[i];
                    if (!gi) continue;
                    const std::uint16_t* mrow = mul + std::size_t(gi) * q;
                    for (unsigned j = 0; j <= b; ++j) {
                        if (!h[j]) continue;
                        std::uint32_t& slot = prod[i + j];
                        slot = addt[std::size_t(slot) * q + mrow[h[j]]];
                    }
                }
                std::uint64_t pidx = 0;
                for (unsigned i = degree; i-- > 0;) pidx = pidx * q + prod[i];
                bits[pidx >> 6] |= std::uint64_t(1) << (pidx & 63);
                if (hi + 1 >= hcount) break;
                // odometer increment of h below the leading 1
                for (unsigned d = 0;; ++d) {
                    if (++h[d] < q) break;
                    h[d] = 0;
                }
            }
        }
    }
    return bits;
}

std::uint64_t IrreducibleSieve::count(unsigned degree) {
    const auto& bits = composite_bits(degree);
    std::uint64_t space = 1;
    for (unsigned i = 0; i < degree; ++i) space *= ctx_.q();
    if (degree == 1) return space;
    std::uint64_t marked = 0;
    for (auto w : bits) marked += static_cast<std::uint64_t>(std::popcount(w));
    return space - marked;
}

void IrreducibleSieve::for_each(unsigned degree, const std::function<void(const Poly&)>& fn) {
    const auto& bits = composite_bits(degree);
    std::uint64_t space = 1;
    for (unsigned i = 0; i < degree; ++i) space *= ctx_.q();
    for (std::uint64_t i = 0; i < space; ++i) {
        bool composite = degree > 1 && ((bits[i >> 6] >> (i & 63)) & 1);
        if (!composite) fn(decode(degree, i));
    }
}

std::vector<Poly> IrreducibleSieve::list(unsigned degree) {
    std::vector<Poly> out;
    for_each(degree, [&](const Poly& f) { out.push_back(f); });
    return out;
}

std::vector<Poly> enumerate_monic_irreducibles(const FieldCtx& ctx, unsigned max_deg, std::uint64_t index_budget) {
    IrreducibleSieve sieve(ctx, index_budget);
    std::vector<Poly> out;
    for (unsigned d = 1; d <= max_deg; ++d) sieve.for_each(d, [&](const Poly& f) { out.push_back(f); });
    return out;
}

}  // namespace fset
