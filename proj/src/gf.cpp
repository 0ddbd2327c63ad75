#include "fset/gf.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fset {

// --- integer machinery ----------------------------------------------------

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = m > 1 ? 1 : 0;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic for all 64-bit inputs with this base set.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    std::uint64_t x0 = 2, c = 1;
    while (true) {
        std::uint64_t x = x0, y = x0, d = 1;
        std::uint64_t q = 1;
        const std::uint64_t m = 128;
        std::uint64_t ys = y;
        for (std::uint64_t r = 1; d == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            for (std::uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
        }
        if (d == n) {
            // backtrack
            do {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
        ++c;
        ++x0;
    }
}

void factor_rec(std::uint64_t n, std::map<std::uint64_t, int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[n]++;
        return;
    }
    std::uint64_t d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

IntFactorization factor_integer(std::uint64_t n) {
    if (n == 0) throw DomainError("factor_integer: input must be positive");
    IntFactorization fac;
    fac.value = n;
    std::map<std::uint64_t, int> m;
    for (std::uint64_t p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            m[p]++;
            n /= p;
        }
    }
    factor_rec(n, m);
    std::uint64_t check = 1;
    for (auto& [p, e] : m) {
        if (!is_prime_u64(p)) throw Error("factor_integer: internal non-prime factor");
        fac.factors.emplace_back(p, e);
        for (int i = 0; i < e; ++i) check *= p;
    }
    if (check != fac.value) throw Error("factor_integer: internal verification failed");
    return fac;
}

// --- polynomials over GF(p), used only for modulus construction ------------

namespace {

using FpPoly = std::vector<std::uint32_t>;  // ascending, no trailing zeros

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint64_t p) {
    std::vector<std::uint64_t> t(a.size() + b.size(), 0);
    if (a.empty() || b.empty()) return {};
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    // reduce by monic mod
    const std::size_t m = mod.size() - 1;
    for (std::size_t i = t.size(); i-- > m;) {
        std::uint64_t c = t[i] % p;
        if (!c) continue;
        t[i] = 0;
        for (std::size_t j = 0; j < m; ++j) t[i - m + j] = (t[i - m + j] + (p - mod[j] % p) * c) % p;
    }
    FpPoly r(t.begin(), t.begin() + std::min(t.size(), m));
    fp_trim(r);
    return r;
}

FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& mod, std::uint64_t p) {
    FpPoly r{1};
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, mod, p);
        base = fp_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    auto modp = [&](FpPoly x, const FpPoly& y) {
        // y nonzero, not necessarily monic
        std::uint64_t linv = powmod_u64(y.back(), p - 2, p);
        while (x.size() >= y.size()) {
            std::uint64_t c = mulmod_u64(x.back(), linv, p);
            std::size_t off = x.size() - y.size();
            for (std::size_t j = 0; j < y.size(); ++j) x[off + j] = (x[off + j] + (p - mulmod_u64(c, y[j], p))) % p;
            fp_trim(x);
            if (x.empty()) break;
        }
        return x;
    };
    while (!b.empty()) {
        FpPoly r = modp(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin criterion over the prime field.
bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    FpPoly x{0, 1};
    FpPoly xp = x;
    auto fac = factor_integer(m);
    // x^(p^k) mod f for k = 1..m, checking the gcd condition at k = m/r.
    std::vector<std::size_t> checkpoints;
    for (auto& [r, e] : fac.factors) checkpoints.push_back(m / r);
    FpPoly cur = x;
    for (std::size_t k = 1; k <= m; ++k) {
        cur = fp_powmod(cur, p, f, p);
        if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
            FpPoly d = cur;
            // d - x
            if (d.size() < 2) d.resize(2, 0);
            d[1] = (d[1] + p - 1) % p;
            fp_trim(d);
            FpPoly g = fp_gcd(f, d, p);
            if (g.size() != 1) return false;
        }
    }
    // x^(p^m) == x
    FpPoly d = cur;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] + p - 1) % p;
    fp_trim(d);
    return d.empty();
}

}  // namespace

// --- FieldCtx ---------------------------------------------------------------

FieldCtx::FieldCtx(std::uint64_t p, unsigned n) {
    if (!is_prime_u64(p)) throw DomainError("FieldCtx: p is not prime");
    if (n < 1) throw DomainError("FieldCtx: extension degree must be >= 1");
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < n; ++i) {
        q *= p;
        if (q > 65536) throw DeskScaleError("FieldCtx: q > 2^16 rejected");
    }
    pp_.p = p;
    pp_.n = n;
    pp_.q = static_cast<std::uint32_t>(q);

    if (n >= 2) {
        // First monic irreducible of degree n in ascending lexicographic order
        // of the coefficient tuple, constant term varying fastest.
        std::uint64_t count = 1;
        for (unsigned i = 0; i < n; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            FpPoly f(n + 1, 0);
            f[n] = 1;
            std::uint64_t t = idx;
            for (unsigned i = 0; i < n; ++i) {
                f[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            if (fp_irreducible(f, p)) {
                modulus_ = f;
                break;
            }
        }
        if (modulus_.empty()) throw Error("FieldCtx: no irreducible modulus found");
    }

    if (pp_.q <= 256) {
        const std::uint32_t q32 = pp_.q;
        add_tab_.resize(std::size_t(q32) * q32);
        mul_tab_.resize(std::size_t(q32) * q32);
        inv_tab_.assign(q32, 0);
        for (std::uint32_t a = 0; a < q32; ++a) {
            auto ca = coeffs(a);
            for (std::uint32_t b = 0; b < q32; ++b) {
                auto cb = coeffs(b);
                // add
                std::vector<std::uint32_t> s(n, 0);
                for (unsigned i = 0; i < n; ++i) s[i] = static_cast<std::uint32_t>((ca[i] + cb[i]) % p);
                add_tab_[std::size_t(a) * q32 + b] = static_cast<std::uint16_t>(from_coeffs(s));
                // mul
                std::vector<std::uint64_t> t(2 * n, 0);
                for (unsigned i = 0; i < n; ++i)
                    for (unsigned j = 0; j < n; ++j) t[i + j] = (t[i + j] + std::uint64_t(ca[i]) * cb[j]) % p;
                if (n >= 2) {
                    for (std::size_t i = t.size(); i-- > n;) {
                        std::uint64_t c = t[i];
                        if (!c) continue;
                        t[i] = 0;
                        for (unsigned j = 0; j < n; ++j) t[i - n + j] = (t[i - n + j] + (p - modulus_[j]) * c) % p;
                    }
                }
                std::vector<std::uint32_t> r(n);
                for (unsigned i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(t[i]);
                mul_tab_[std::size_t(a) * q32 + b] = static_cast<std::uint16_t>(from_coeffs(r));
            }
        }
        for (std::uint32_t a = 1; a < q32; ++a) {
            for (std::uint32_t b = 1; b < q32; ++b) {
                if (mul_tab_[std::size_t(a) * q32 + b] == 1) {
                    inv_tab_[a] = b;
                    break;
                }
            }
        }
    }
}

const FieldCtx& FieldCtx::get(std::uint64_t p, unsigned n) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<FieldCtx>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = registry.find(key);
    if (it == registry.end()) {
        it = registry.emplace(key, std::unique_ptr<FieldCtx>(new FieldCtx(p, n))).first;
    }
    return *it->second;
}

Felt FieldCtx::elt(std::uint32_t idx) const {
    if (idx >= pp_.q) throw DomainError("FieldCtx::elt: index out of range");
    return Felt{this, idx};
}

Felt FieldCtx::from_int(std::uint64_t v) const {
    return Felt{this, static_cast<std::uint32_t>(v % pp_.p)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(std::uint32_t idx) const {
    std::vector<std::uint32_t> c(pp_.n);
    for (unsigned i = 0; i < pp_.n; ++i) {
        c[i] = static_cast<std::uint32_t>(idx % pp_.p);
        idx = static_cast<std::uint32_t>(idx / pp_.p);
    }
    return c;
}

std::uint32_t FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
    std::uint32_t idx = 0;
    for (unsigned i = pp_.n; i-- > 0;) idx = static_cast<std::uint32_t>(idx * pp_.p + c[i] % pp_.p);
    return idx;
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
    if (!add_tab_.empty()) return add_tab_[std::size_t(a) * pp_.q + b];
    auto ca = coeffs(a), cb = coeffs(b);
    for (unsigned i = 0; i < pp_.n; ++i) ca[i] = static_cast<std::uint32_t>((ca[i] + cb[i]) % pp_.p);
    return from_coeffs(ca);
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
    auto ca = coeffs(a);
    for (auto& c : ca) c = static_cast<std::uint32_t>((pp_.p - c) % pp_.p);
    return from_coeffs(ca);
}

std::uint32_t FieldCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::mul(std::uint32_t a, std::uint32_t b) const {
    if (!mul_tab_.empty()) return mul_tab_[std::size_t(a) * pp_.q + b];
    const auto p = pp_.p;
    const auto n = pp_.n;
    auto ca = coeffs(a), cb = coeffs(b);
    std::vector<std::uint64_t> t(2 * n, 0);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) t[i + j] = (t[i + j] + std::uint64_t(ca[i]) * cb[j]) % p;
    if (n >= 2) {
        for (std::size_t i = t.size(); i-- > n;) {
            std::uint64_t c = t[i];
            if (!c) continue;
            t[i] = 0;
            for (unsigned j = 0; j < n; ++j) t[i - n + j] = (t[i - n + j] + (p - modulus_[j]) * c) % p;
        }
    }
    std::vector<std::uint32_t> r(n);
    for (unsigned i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(t[i]);
    return from_coeffs(r);
}

std::uint32_t FieldCtx::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("FieldCtx::inv: division by zero");
    if (!inv_tab_.empty()) return inv_tab_[a];
    return pow(a, std::uint64_t(pp_.q) - 2);
}

std::uint32_t FieldCtx::div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

std::pair<std::uint32_t, std::uint32_t> FieldCtx::ext2_modulus() const {
    std::call_once(ext2_once_, [this] {
        // First (B, C) in canonical order with y^2 + B*y + C root-free over GF(q).
        for (std::uint32_t b = 0; b < pp_.q; ++b) {
            for (std::uint32_t c = 0; c < pp_.q; ++c) {
                bool has_root = false;
                for (std::uint32_t t = 0; t < pp_.q && !has_root; ++t) {
                    std::uint32_t v = add(add(mul(t, t), mul(b, t)), c);
                    if (v == 0) has_root = true;
                }
                if (!has_root) {
                    ext2_b_ = b;
                    ext2_c_ = c;
                    return;
                }
            }
        }
        throw Error("FieldCtx: no irreducible quadratic over GF(q)");
    });
    return {ext2_b_, ext2_c_};
}

// --- element ops ------------------------------------------------------------

void require_same_ctx(const Felt& a, const Felt& b) {
    if (a.ctx != b.ctx) throw DomainError("field elements from different contexts");
}

Felt field_add(const Felt& a, const Felt& b) {
    require_same_ctx(a, b);
    return Felt{a.ctx, a.ctx->add(a.idx, b.idx)};
}

Felt field_sub(const Felt& a, const Felt& b) {
    require_same_ctx(a, b);
    return Felt{a.ctx, a.ctx->sub(a.idx, b.idx)};
}

Felt field_mul(const Felt& a, const Felt& b) {
    require_same_ctx(a, b);
    return Felt{a.ctx, a.ctx->mul(a.idx, b.idx)};
}

Felt field_div(const Felt& a, const Felt& b) {
    require_same_ctx(a, b);
    return Felt{a.ctx, a.ctx->div(a.idx, b.idx)};
}

Felt field_pow(const Felt& a, std::uint64_t e) { return Felt{a.ctx, a.ctx->pow(a.idx, e)}; }

std::uint64_t element_order(const Felt& a) {
    if (a.idx == 0) throw DomainError("element_order: zero input");
    const std::uint64_t group = a.ctx->q() - 1;
    if (group == 0) return 1;
    auto fac = factor_integer(group);
    std::uint64_t e = group;
    for (auto& [r, exp] : fac.factors) {
        while (e % r == 0 && a.ctx->pow(a.idx, e / r) == 1) e /= r;
    }
    return e;
}

Felt find_generator(const FieldCtx& ctx) {
    const std::uint64_t group = ctx.q() - 1;
    if (group == 1) return ctx.one();
    auto fac = factor_integer(group);
    for (std::uint32_t i = 1; i < ctx.q(); ++i) {
        bool ok = true;
        for (auto& [r, exp] : fac.factors) {
            if (ctx.pow(i, group / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return ctx.elt(i);
    }
    throw Error("find_generator: unreachable");
}

bool is_lth_power(const Felt& a, std::uint64_t l) {
    if (!is_prime_u64(l)) throw DomainError("is_lth_power: l must be prime");
    if (a.idx == 0) return true;  // convention: 0 is an l-th power
    const std::uint64_t group = a.ctx->q() - 1;
    const std::uint64_t g = std::gcd(l, group);
    if (g == 1) return true;
    return a.ctx->pow(a.idx, group / g) == 1;
}

// --- GF(q^2) ---------------------------------------------------------------

Ext2 ext2_from(const Felt& a) { return Ext2{a.ctx, a.idx, 0}; }

Ext2 ext2_make(const FieldCtx& ctx, std::uint32_t u, std::uint32_t v) {
    if (u >= ctx.q() || v >= ctx.q()) throw DomainError("ext2_make: component out of range");
    return Ext2{&ctx, u, v};
}

Ext2 ext2_from_index(const FieldCtx& ctx, std::uint64_t idx) {
    return ext2_make(ctx, static_cast<std::uint32_t>(idx % ctx.q()), static_cast<std::uint32_t>(idx / ctx.q()));
}

std::uint64_t ext2_index(const Ext2& a) { return a.u + std::uint64_t(a.v) * a.ctx->q(); }

bool ext2_is_zero(const Ext2& a) { return a.u == 0 && a.v == 0; }

Ext2 ext2_add(const Ext2& a, const Ext2& b) {
    if (a.ctx != b.ctx) throw DomainError("ext2 elements from different contexts");
    return Ext2{a.ctx, a.ctx->add(a.u, b.u), a.ctx->add(a.v, b.v)};
}

Ext2 ext2_sub(const Ext2& a, const Ext2& b) {
    if (a.ctx != b.ctx) throw DomainError("ext2 elements from different contexts");
    return Ext2{a.ctx, a.ctx->sub(a.u, b.u), a.ctx->sub(a.v, b.v)};
}

Ext2 ext2_mul(const Ext2& a, const Ext2& b) {
    if (a.ctx != b.ctx) throw DomainError("ext2 elements from different contexts");
    const FieldCtx& F = *a.ctx;
    auto [B, C] = F.ext2_modulus();
    // (u1 + v1 y)(u2 + v2 y) with y^2 = -B y - C
    std::uint32_t uu = F.mul(a.u, b.u);
    std::uint32_t vv = F.mul(a.v, b.v);
    std::uint32_t cross = F.add(F.mul(a.u, b.v), F.mul(a.v, b.u));
    std::uint32_t u = F.sub(uu, F.mul(vv, C));
    std::uint32_t v = F.sub(cross, F.mul(vv, B));
    return Ext2{&F, u, v};
}

std::pair<Felt, Felt> trace_norm(const Ext2& b) {
    const FieldCtx& F = *b.ctx;
    auto [B, C] = F.ext2_modulus();
    // conjugate of u + v y is (u - vB) - v y
    std::uint32_t tr = F.sub(F.add(b.u, b.u), F.mul(b.v, B));
    std::uint32_t nm = F.add(F.sub(F.mul(b.u, b.u), F.mul(F.mul(b.u, b.v), B)), F.mul(F.mul(b.v, b.v), C));
    return {Felt{&F, tr}, Felt{&F, nm}};
}

Ext2 ext2_pow(const Ext2& a, std::uint64_t e) {
    Ext2 r{a.ctx, 1, 0};
    Ext2 base = a;
    while (e) {
        if (e & 1) r = ext2_mul(r, base);
        base = ext2_mul(base, base);
        e >>= 1;
    }
    return r;
}

Ext2 ext2_inv(const Ext2& a) {
    if (ext2_is_zero(a)) throw DomainError("ext2_inv: division by zero");
    const std::uint64_t q = a.ctx->q();
    return ext2_pow(a, q * q - 2);
}

std::uint64_t ext2_element_order(const Ext2& a) {
    if (ext2_is_zero(a)) throw DomainError("ext2_element_order: zero input");
    const std::uint64_t q = a.ctx->q();
    const std::uint64_t group = q * q - 1;
    auto fac = factor_integer(group);
    std::uint64_t e = group;
    Ext2 one{a.ctx, 1, 0};
    for (auto& [r, exp] : fac.factors) {
        while (e % r == 0 && ext2_pow(a, e / r) == one) e /= r;
    }
    return e;
}

Ext2 ext2_find_generator(const FieldCtx& ctx) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t group = q * q - 1;
    auto fac = factor_integer(group);
    Ext2 one{&ctx, 1, 0};
    for (std::uint64_t i = 1; i < q * q; ++i) {
        Ext2 a = ext2_from_index(ctx, i);
        bool ok = true;
        for (auto& [r, exp] : fac.factors) {
            if (ext2_pow(a, group / r) == one) {
                ok = false;
                break;
            }
        }
        if (ok) return a;
    }
    throw Error("ext2_find_generator: unreachable");
}

}  // namespace fset
