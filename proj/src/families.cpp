#include "fset/families.hpp"

#include <algorithm>
#include <bit>

#include "fset/textio.hpp"

namespace fset {

std::string family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Width1: return "width1";
        case FamilyKind::Q3Iterated: return "q3-iterated";
        case FamilyKind::Width2: return "width2";
        case FamilyKind::Cyclo2: return "cyclo2";
        case FamilyKind::FullIq: return "full-iq";
    }
    return "?";
}

std::string AnalyticWidth::str() const {
    switch (tag) {
        case Tag::Finite: return std::to_string(value);
        case Tag::Infinite: return "inf";
        case Tag::NotApplicable: return "n/a";
    }
    return "?";
}

namespace {

// x^t + c
Poly power_plus_const(const FieldCtx& F, std::uint64_t t, const Felt& c) {
    std::vector<std::uint32_t> v(t + 1, 0);
    v[0] = c.idx;
    v[t] = 1;
    return Poly{&F, std::move(v)};
}

bool is_power_of(std::uint64_t v, std::uint64_t l, unsigned& k_out) {
    unsigned k = 0;
    while (v > 1) {
        if (v % l != 0) return false;
        v /= l;
        ++k;
    }
    k_out = k;
    return v == 1;
}

std::uint64_t smallest_prime_of(std::uint64_t n, std::uint64_t at_least) {
    for (auto& [p, e] : factor_integer(n).factors) {
        if (p >= at_least) return p;
    }
    return 0;
}

Poly iterated_quadratic(const FieldCtx& F, unsigned k) {
    // f = x^2 - 2, composed k times; verified irreducible on the way out
    Poly f = poly_sub(poly_mul(Poly::x(F), Poly::x(F)), Poly::constant(F.from_int(2)));
    Poly fk = iterate_poly(f, k);
    if (k == 1) {
        if (!is_irreducible(fk)) throw Error("iterated quadratic: x^2 - 2 is reducible here");
    } else if (k >= 2) {
        auto qi = make_quadratic_iteration(F, F.zero(), -F.from_int(2), k);
        if (!quadratic_iteration_check(qi)) throw Error("iterated quadratic: criterion rejects f_k");
    }
    return fk;
}

}  // namespace

std::uint64_t choose_l(const FieldCtx& ctx) {
    const std::uint64_t q = ctx.q();
    if (q == 2 || q == 3) throw DomainError("choose_l: q must differ from 2 and 3");
    if (q % 4 == 1) return 2;
    if (q % 4 == 3) return smallest_prime_of(q - 1, 3);
    if (q == 4) return 3;
    // q = 2^n, n >= 3
    std::uint64_t l = smallest_prime_of(q - 1, 5);
    if (l == 0) throw Error("choose_l: no prime >= 5 divides q-1 (contradicts Mihailescu)");
    return l;
}

std::pair<Felt, Felt> find_alpha_beta(const FieldCtx& ctx, std::uint64_t l) {
    const Poly x = Poly::x(ctx);
    for (std::uint32_t ai = 1; ai < ctx.q(); ++ai) {
        Felt alpha = ctx.elt(ai);
        if (is_lth_power(alpha, l)) continue;
        for (std::uint32_t bi = 1; bi < ctx.q(); ++bi) {
            Felt beta = ctx.elt(bi);
            if (is_lth_power(beta, l)) continue;
            Poly f = poly_add(poly_add(poly_mul(x, x), poly_scale(x, alpha)), Poly::constant(beta));
            if (is_irreducible(f)) return {alpha, beta};
        }
    }
    throw Error("find_alpha_beta: exhaustive scan failed (contradicts the counting argument)");
}

SCertificate s_certificate(std::uint64_t q, std::uint64_t l) {
    SCertificate cert;
    cert.q = q;
    cert.l = l;
    const std::int64_t li = static_cast<std::int64_t>(l);
    cert.a_num2 = li * li - 4 * li + 2;
    cert.b_num2 = -5 * li * li + 8 * li - 4;
    cert.c_num2 = 2 * ((li - 1) * (li - 1) + li * li);
    const __int128 qi = static_cast<__int128>(q);
    __int128 s2 = cert.a_num2 * qi * qi + cert.b_num2 * qi + cert.c_num2;
    if (s2 % 2 != 0) throw Error("s_certificate: 2*S(q,l) is odd");
    __int128 s = s2 / 2;
    if (s > INT64_MAX || s < INT64_MIN) throw DeskScaleError("s_certificate: S(q,l) exceeds 64 bits");
    cert.s_value = static_cast<std::int64_t>(s);
    if (l != 0 && (q - 1) % l == 0) {
        const std::uint64_t nonpowers = (q - 1) - (q - 1) / l;
        cert.count_lhs = (q * q - q) / 2 + nonpowers * nonpowers;
        cert.count_rhs = q * q - 1;
    }
    return cert;
}

// --- family specs ------------------------------------------------------------

FSetView FamilySpec::view() const {
    FamilySpec self = *this;
    return FSetView::family(
        *ctx, family_kind_name(kind), [self](const Poly& g) { return self.membership(g); },
        [self](unsigned max_deg) { return self.enumerate(max_deg); });
}

bool FamilySpec::membership(const Poly& g) const {
    if (g.ctx != ctx) throw DomainError("family membership: wrong context");
    const Poly x = Poly::x(*ctx);
    if (!g.is_monic() || g.degree() < 1) return false;
    unsigned k = 0;
    switch (kind) {
        case FamilyKind::Width1:
            if (g == x) return true;
            if (!is_power_of(static_cast<std::uint64_t>(g.degree()), *l, k)) return false;
            return g == power_plus_const(*ctx, static_cast<std::uint64_t>(g.degree()), -*alpha);
        case FamilyKind::Width2: {
            if (g == x) return true;
            const std::uint64_t deg = static_cast<std::uint64_t>(g.degree());
            if (is_power_of(deg, *l, k) && g == power_plus_const(*ctx, deg, *alpha)) return true;
            if (deg % 2 == 0 && is_power_of(deg / 2, *l, k)) {
                std::vector<std::uint32_t> c(deg + 1, 0);
                c[0] = beta->idx;
                c[deg / 2] = alpha->idx;
                c[deg] = 1;
                return g == Poly{ctx, std::move(c)};
            }
            return false;
        }
        case FamilyKind::Q3Iterated: {
            if (g == x) return true;
            Poly two = Poly::constant(ctx->from_int(2));
            if (g == poly_add(x, two) || g == poly_sub(x, two)) return true;
            const std::uint64_t deg = static_cast<std::uint64_t>(g.degree());
            if (!is_power_of(deg, 2, k) || k < 1) return false;
            return g == iterated_quadratic(*ctx, k);
        }
        case FamilyKind::Cyclo2:
            if (!is_irreducible(g)) return false;
            return cyclo2_membership(g);
        case FamilyKind::FullIq:
            return is_irreducible(g);
    }
    return false;
}

PolySet FamilySpec::enumerate(unsigned max_deg) const {
    PolySet out;
    const Poly x = Poly::x(*ctx);
    switch (kind) {
        case FamilyKind::Width1: {
            polyset_insert(out, x);
            const Poly base = poly_sub(x, Poly::constant(*alpha));
            for (std::uint64_t t = 1; t <= max_deg; t *= *l) {
                auto pred = thm33_predicate(base, t);
                if (!pred.applies) throw Error("width1 family: order criterion fails: " + pred.reason);
                polyset_insert(out, substitute_power(base, t));
            }
            break;
        }
        case FamilyKind::Width2: {
            polyset_insert(out, x);
            const Poly lin = poly_add(x, Poly::constant(*alpha));
            const Poly quad =
                poly_add(poly_add(poly_mul(x, x), poly_scale(x, *alpha)), Poly::constant(*beta));
            if (!prop41_predicate(lin, *l).applies || !prop41_predicate(quad, *l).applies)
                throw Error("width2 family: substitution criterion fails");
            for (std::uint64_t t = 1; t <= max_deg; t *= *l) polyset_insert(out, substitute_power(lin, t));
            for (std::uint64_t t = 1; 2 * t <= max_deg; t *= *l) polyset_insert(out, substitute_power(quad, t));
            break;
        }
        case FamilyKind::Q3Iterated: {
            Poly two = Poly::constant(ctx->from_int(2));
            polyset_insert(out, x);
            polyset_insert(out, poly_add(x, two));
            polyset_insert(out, poly_sub(x, two));
            for (unsigned k = 1; (std::uint64_t(1) << k) <= max_deg; ++k)
                polyset_insert(out, iterated_quadratic(*ctx, k));
            break;
        }
        case FamilyKind::Cyclo2: {
            for (auto& g : enumerate_monic_irreducibles(*ctx, max_deg)) {
                if (cyclo2_membership(g)) polyset_insert(out, g);
            }
            break;
        }
        case FamilyKind::FullIq: {
            for (auto& g : enumerate_monic_irreducibles(*ctx, max_deg)) polyset_insert(out, g);
            break;
        }
    }
    return out;
}

FamilySpec build_width1(const FieldCtx& ctx) {
    const std::uint64_t q = ctx.q();
    if (q == 2 || q == 3) throw DomainError("build_width1: q must differ from 2 and 3");
    FamilySpec spec;
    spec.kind = FamilyKind::Width1;
    spec.ctx = &ctx;
    spec.alpha = find_generator(ctx);
    spec.l = (q % 4 == 3) ? smallest_prime_of(q - 1, 3) : smallest_prime_of(q - 1, 2);
    spec.analytic_width = AnalyticWidth::finite(1);
    return spec;
}

FamilySpec build_width2(const FieldCtx& ctx) {
    const std::uint64_t q = ctx.q();
    if (q == 2 || q == 3) throw DomainError("build_width2: q must differ from 2 and 3");
    FamilySpec spec;
    spec.kind = FamilyKind::Width2;
    spec.ctx = &ctx;
    spec.l = choose_l(ctx);
    auto [alpha, beta] = find_alpha_beta(ctx, *spec.l);
    spec.alpha = alpha;
    spec.beta = beta;
    spec.analytic_width = AnalyticWidth::finite(2);
    return spec;
}

FamilySpec build_cyclo2(const FieldCtx& ctx) {
    if (ctx.q() % 4 != 3) throw DomainError("build_cyclo2: requires q = 3 mod 4");
    FamilySpec spec;
    spec.kind = FamilyKind::Cyclo2;
    spec.ctx = &ctx;
    spec.analytic_width = AnalyticWidth::infinite();
    return spec;
}

FamilySpec build_width1_infinite_case(const FieldCtx& ctx) {
    if (ctx.p() == 2) throw DomainError("build_width1_infinite_case: odd characteristic required");
    if (is_lth_power(ctx.from_int(2), 2))
        throw DomainError("build_width1_infinite_case: 2 is a square in this field");
    FamilySpec spec;
    spec.kind = FamilyKind::Q3Iterated;
    spec.ctx = &ctx;
    spec.analytic_width = AnalyticWidth::infinite();
    return spec;
}

FamilySpec build_full_iq(const FieldCtx& ctx) {
    FamilySpec spec;
    spec.kind = FamilyKind::FullIq;
    spec.ctx = &ctx;
    spec.analytic_width = AnalyticWidth::infinite();
    return spec;
}

FSetView build_q3_iterated(unsigned K) {
    if (K < 1) throw DomainError("build_q3_iterated: K must be >= 1");
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    PolySet members;
    const Poly x = Poly::x(F3);
    Poly two = Poly::constant(F3.from_int(2));
    polyset_insert(members, x);
    polyset_insert(members, poly_add(x, two));
    polyset_insert(members, poly_sub(x, two));
    for (unsigned k = 1; k <= K; ++k) polyset_insert(members, iterated_quadratic(F3, k));
    FSetView v = FSetView::explicit_set(F3, std::move(members));
    if (!is_f_set(v)) throw Error("build_q3_iterated: truncation is not closed");
    return v;
}

bool cyclo2_membership(const Poly& g) {
    const FieldCtx& F = *g.ctx;
    if (F.p() == 2) throw DomainError("cyclo2_membership: odd characteristic required");
    if (!g.is_monic() || g.degree() < 1) throw DomainError("cyclo2_membership: monic irreducible expected");
    if (g == Poly::x(F)) return true;  // x | x^(2^0) - 0
    if (g.constant_term().idx == 0) throw DomainError("cyclo2_membership: g(0) = 0 only for g = x");
    PolyOrder ord = poly_order(g);
    return (std::uint64_t(F.q()) - 1) % ord.m == 0;
}

bool cyclo2_membership_bruteforce(const Poly& g, unsigned k_max) {
    const FieldCtx& F = *g.ctx;
    if (g == Poly::x(F)) return true;
    Poly h = poly_mod(Poly::x(F), g);
    for (unsigned k = 0; k <= k_max; ++k) {
        if (h.degree() <= 0) return true;  // g | x^(2^k) - h
        h = poly_mod(poly_mul(h, h), g);
    }
    return false;
}

bool factor_shape_check(const FieldCtx& ctx, const Felt& a, unsigned k) {
    if (ctx.p() == 2) throw DomainError("factor_shape_check: odd characteristic required");
    Poly f = power_plus_const(ctx, std::uint64_t(1) << k, -a);
    for (auto& [g, e] : factor(f).factors) {
        if (g.degree() == 1) continue;
        const std::uint64_t deg = static_cast<std::uint64_t>(g.degree());
        if (!std::has_single_bit(deg) || deg < 2) return false;
        const std::uint64_t half = deg / 2;
        for (std::uint64_t i = 1; i < deg; ++i) {
            if (i != half && g.c[i] != 0) return false;
        }
    }
    return true;
}

SuccessorWitness find_successor_quadratic(const Poly& f) {
    const FieldCtx& F = *f.ctx;
    const std::uint64_t q = F.q();
    if (q % 4 != 3) throw DomainError("find_successor_quadratic: requires q = 3 mod 4");
    if (f == Poly::x(F)) throw DomainError("find_successor_quadratic: f = x has no successor recipe");
    if (!f.is_monic() || !is_irreducible(f) || !cyclo2_membership(f))
        throw DomainError("find_successor_quadratic: f is not a family member");

    PolyOrder ord = poly_order(f);
    const unsigned s = static_cast<unsigned>(ord.s);
    // the root alpha of f satisfies alpha^(2^s) = a in GF(q)
    Poly apoly = poly_powmod(Poly::x(F), std::uint64_t(1) << s, f);
    if (apoly.degree() > 0) throw Error("find_successor_quadratic: x^(2^s) mod f is not constant");
    Felt a = apoly.constant_term();
    Felt d = -a;

    // alpha0 of order 2^r in GF(q^2), r = v2(q^2 - 1) >= 3
    const std::uint64_t group = q * q - 1;
    const unsigned r = static_cast<unsigned>(std::countr_zero(group));
    if (r < 3) throw Error("find_successor_quadratic: v2(q^2-1) < 3");
    Ext2 alpha0 = ext2_pow(ext2_find_generator(F), group >> r);
    if (ext2_element_order(alpha0) != (std::uint64_t(1) << r))
        throw Error("find_successor_quadratic: alpha0 has wrong order");
    auto [u, n0] = trace_norm(alpha0);
    if (u.idx == 0) throw Error("find_successor_quadratic: tr(alpha0) = 0");
    if (is_lth_power(n0, 2)) throw Error("find_successor_quadratic: N(alpha0) is a square");

    Ext2 beta = ext2_mul(ext2_from(field_div(d, u)), alpha0);
    auto [tr_b, e] = trace_norm(beta);
    if (!(tr_b == d)) throw Error("find_successor_quadratic: tr(beta) != d");
    if (is_lth_power(e, 2)) throw Error("find_successor_quadratic: e is a square");

    const Poly x = Poly::x(F);
    Poly h2 = poly_add(poly_add(poly_mul(x, x), poly_scale(x, d)), Poly::constant(e));
    if (!is_irreducible(h2)) throw Error("find_successor_quadratic: x^2 + dx + e is reducible");
    Poly h = substitute_power(h2, std::uint64_t(1) << s);
    if (!is_irreducible(h)) throw Error("find_successor_quadratic: h(x^(2^s)) is reducible");
    if (!poly_divides(f, shifted_by_constant(h))) throw Error("find_successor_quadratic: f does not divide h - h(0)");
    // membership of h, checked by direct divisor search (its order's 2-part
    // is at most 2^(r+s))
    if (!cyclo2_membership_bruteforce(h, r + s + 2))
        throw Error("find_successor_quadratic: h is not a family member");

    return SuccessorWitness{s, d, e, h};
}

}  // namespace fset
