#include "doctest.h"

#include <random>

#include "fset/poly.hpp"
#include "fset/textio.hpp"

using namespace fset;

namespace {

Poly random_poly(const FieldCtx& F, int deg, std::mt19937_64& rng) {
    std::vector<std::uint32_t> c(deg + 1);
    for (int i = 0; i < deg; ++i) c[i] = static_cast<std::uint32_t>(rng() % F.q());
    c[deg] = 1;
    return Poly{&F, std::move(c)};
}

// independent irreducibility oracle: divide by every monic poly of degree
// 1..deg/2, enumerated directly from coefficient tuples
bool irreducible_by_trial(const Poly& f) {
    const FieldCtx& F = *f.ctx;
    int deg = f.degree();
    if (deg <= 0) return false;
    for (int d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= F.q();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint32_t> c(d + 1);
            std::uint64_t t = idx;
            for (int i = 0; i < d; ++i) {
                c[i] = static_cast<std::uint32_t>(t % F.q());
                t /= F.q();
            }
            c[d] = 1;
            Poly g{&F, c};
            if (poly_mod(f, g).degree() < 0) return false;
        }
    }
    return true;
}

// enumerate all monic polys of a given degree, constant digit fastest
template <typename Fn>
void for_each_monic(const FieldCtx& F, int deg, Fn&& fn) {
    std::uint64_t count = 1;
    for (int i = 0; i < deg; ++i) count *= F.q();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(deg + 1);
        std::uint64_t t = idx;
        for (int i = 0; i < deg; ++i) {
            c[i] = static_cast<std::uint32_t>(t % F.q());
            t /= F.q();
        }
        c[deg] = 1;
        fn(Poly{&F, std::move(c)});
    }
}

}  // namespace

TEST_CASE("division algorithm: f = q*g + r with deg r < deg g") {
    std::mt19937_64 rng(7);
    for (auto [p, n] : {std::pair{2u, 1u}, {5u, 1u}, {3u, 2u}, {2u, 3u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        for (int trial = 0; trial < 300; ++trial) {
            Poly f = random_poly(F, 1 + int(rng() % 9), rng);
            Poly g = random_poly(F, 1 + int(rng() % 5), rng);
            auto [q, r] = poly_divmod(f, g);
            CHECK(poly_add(poly_mul(q, g), r) == f);
            CHECK(r.degree() < g.degree());
        }
    }
}

TEST_CASE("gcd divides both arguments and respects common factors") {
    std::mt19937_64 rng(11);
    const FieldCtx& F = FieldCtx::get(5, 1);
    for (int trial = 0; trial < 200; ++trial) {
        Poly a = random_poly(F, 1 + int(rng() % 5), rng);
        Poly b = random_poly(F, 1 + int(rng() % 5), rng);
        Poly c = random_poly(F, 1 + int(rng() % 3), rng);
        Poly g = poly_gcd(poly_mul(a, c), poly_mul(b, c));
        CHECK(poly_divides(c, g));
        CHECK(poly_mod(poly_mul(a, c), g).degree() < 0);
        CHECK(poly_mod(poly_mul(b, c), g).degree() < 0);
    }
}

TEST_CASE("is_irreducible matches trial division on small exhaustive ranges") {
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        for (int d = 1; d <= 4; ++d)
            for_each_monic(F, d, [&](const Poly& f) { CHECK(is_irreducible(f) == irreducible_by_trial(f)); });
    }
}

TEST_CASE("factor round-trips and yields sorted monic irreducible factors") {
    std::mt19937_64 rng(13);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {3u, 2u}, {7u, 1u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        for (int trial = 0; trial < 300; ++trial) {
            Poly f = random_poly(F, 1 + int(rng() % 10), rng);
            auto fac = factor(f);
            CHECK(fac.product() == f);
            for (std::size_t i = 0; i < fac.factors.size(); ++i) {
                CHECK(fac.factors[i].first.is_monic());
                CHECK(irreducible_by_trial(fac.factors[i].first));
                if (i > 0) CHECK(canonical_less(fac.factors[i - 1].first, fac.factors[i].first));
            }
        }
    }
}

TEST_CASE("factorization is deterministic for a fixed seed") {
    std::mt19937_64 rng(17);
    const FieldCtx& F = FieldCtx::get(7, 1);
    for (int trial = 0; trial < 50; ++trial) {
        Poly f = random_poly(F, 8, rng);
        auto a = factor(f);
        auto b = factor(f);
        REQUIRE(a.factors.size() == b.factors.size());
        for (std::size_t i = 0; i < a.factors.size(); ++i) {
            CHECK(a.factors[i].first == b.factors[i].first);
            CHECK(a.factors[i].second == b.factors[i].second);
        }
    }
}

TEST_CASE("poly_order: divisibility, witness, and minimality") {
    for (std::uint64_t q : {3, 5, 7, 9}) {
        const FieldCtx& F = FieldCtx::get(q == 9 ? 3 : q, q == 9 ? 2 : 1);
        for (auto& f : enumerate_monic_irreducibles(F, 3)) {
            if (f.constant_term().idx == 0) continue;
            auto ord = poly_order(f);
            std::uint64_t qm = 1;
            for (int i = 0; i < f.degree(); ++i) qm *= F.q();
            CHECK((qm - 1) % ord.e == 0);
            // f | x^e - 1
            Poly xe = poly_powmod(Poly::x(F), ord.e, f);
            CHECK(xe == poly_mod(Poly::one(F), f));
            // minimality against every maximal proper divisor e/p
            for (auto& [p, exp] : factor_integer(ord.e).factors) {
                Poly xr = poly_powmod(Poly::x(F), ord.e / p, f);
                CHECK_FALSE(xr == poly_mod(Poly::one(F), f));
            }
            // 2-adic split
            std::uint64_t twopart = std::uint64_t(1) << ord.s;
            CHECK(twopart * ord.m == ord.e);
            CHECK(ord.m % 2 == 1);
        }
    }
    const FieldCtx& F7 = FieldCtx::get(7, 1);
    Poly f = poly_sub(Poly::x(F7), Poly::constant(F7.from_int(3)));
    auto ord = poly_order(f);
    CHECK(ord.e == 6);
    CHECK(ord.s == 1);
    CHECK(ord.m == 3);
    CHECK_THROWS_AS(poly_order(Poly::x(F7)), DomainError);
    CHECK_THROWS_AS(poly_order(poly_mul(f, f)), DomainError);
}

TEST_CASE("order-based substitution criterion: pinned examples") {
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    Poly f5 = poly_sub(Poly::x(F5), Poly::constant(F5.from_int(2)));
    CHECK_FALSE(thm33_predicate(f5, 3).applies);  // 3 does not divide e = 4

    const FieldCtx& F7 = FieldCtx::get(7, 1);
    Poly f7 = poly_sub(Poly::x(F7), Poly::constant(F7.from_int(3)));  // generator root, e = 6
    CHECK(thm33_predicate(f7, 2).applies);
    CHECK(is_irreducible(substitute_power(f7, 2)));
}

TEST_CASE("quadratic iteration criterion: pinned examples and equivalence") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    auto qi3 = make_quadratic_iteration(F3, F3.zero(), -F3.from_int(2), 4);
    CHECK(quadratic_iteration_check(qi3));

    const FieldCtx& F5 = FieldCtx::get(5, 1);
    auto qi5 = make_quadratic_iteration(F5, F5.zero(), F5.one(), 2);  // f = x^2 + 1
    CHECK_FALSE(quadratic_iteration_check(qi5));
    CHECK_FALSE(is_irreducible(iterate_poly(qi5.f, 2)));

    // small exhaustive equivalence (the full envelope runs in the acceptance gate)
    for (std::uint32_t g = 0; g < 3; ++g)
        for (std::uint32_t m = 0; m < 3; ++m)
            for (unsigned k = 2; k <= 3; ++k) {
                auto qi = make_quadratic_iteration(F3, F3.elt(g), F3.elt(m), k);
                CHECK(quadratic_iteration_check(qi) == is_irreducible(iterate_poly(qi.f, k)));
            }

    CHECK_THROWS_AS(make_quadratic_iteration(FieldCtx::get(2, 2), FieldCtx::get(2, 2).zero(),
                                             FieldCtx::get(2, 2).one(), 2),
                    DomainError);
}

TEST_CASE("iterate_poly composes from the identity") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    Poly x = Poly::x(F3);
    Poly f = poly_sub(poly_mul(x, x), Poly::constant(F3.from_int(2)));
    CHECK(iterate_poly(f, 0) == x);
    CHECK(iterate_poly(f, 1) == f);
    CHECK(iterate_poly(f, 2) == poly_compose(f, f));
    CHECK(format_poly_body(iterate_poly(f, 2)) == "x^4+2*x^2+2");
}

TEST_CASE("counting formula and sieve agree with pinned values") {
    CHECK(count_monic_irreducibles(FieldCtx::get(2, 1), 3) == 2);
    CHECK(count_monic_irreducibles(FieldCtx::get(2, 3), 2) == 28);
    CHECK(count_monic_irreducibles(FieldCtx::get(5, 1), 1) == 5);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        IrreducibleSieve sieve(F);
        for (unsigned d = 1; d <= 5; ++d) {
            CHECK(sieve.count(d) == count_monic_irreducibles(F, d));
            // the sieve's list equals the filter of all monic polys by the
            // trial-division oracle
            std::vector<Poly> expect;
            for_each_monic(F, int(d), [&](const Poly& f) {
                if (irreducible_by_trial(f)) expect.push_back(f);
            });
            std::sort(expect.begin(), expect.end(), canonical_less);
            CHECK(sieve.list(d) == expect);
        }
    }
}

TEST_CASE("enumerate_monic_irreducibles is canonically sorted and complete") {
    const FieldCtx& F = FieldCtx::get(3, 1);
    auto all = enumerate_monic_irreducibles(F, 4);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(canonical_less(all[i - 1], all[i]));
    std::size_t expect = 0;
    for (unsigned d = 1; d <= 4; ++d) expect += count_monic_irreducibles(F, d);
    CHECK(all.size() == expect);
}

TEST_CASE("substitute_power and shifted_by_constant") {
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    Poly x = Poly::x(F5);
    Poly f = poly_add(poly_add(poly_mul(x, x), poly_scale(x, F5.from_int(2))), Poly::constant(F5.from_int(3)));
    CHECK(format_poly_body(substitute_power(f, 4)) == "x^8+2*x^4+3");
    CHECK(format_poly_body(shifted_by_constant(f)) == "x^2+2*x");
    // convention: x - x(0) = x
    CHECK(shifted_by_constant(x) == x);
}
