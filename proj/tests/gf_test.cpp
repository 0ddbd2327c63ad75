#include "doctest.h"

#include <cstdint>
#include <random>
#include <set>

#include "fset/gf.hpp"
#include "fset/textio.hpp"

using namespace fset;

namespace {

// independent primality oracle: trial division
bool prime_by_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("integer primality matches trial division") {
    for (std::uint64_t n = 0; n < 2000; ++n) CHECK(is_prime_u64(n) == prime_by_trial(n));
    CHECK(is_prime_u64((std::uint64_t(1) << 61) - 1));       // Mersenne prime
    CHECK_FALSE(is_prime_u64((std::uint64_t(1) << 59) - 1)); // 179951 * 3203431780337
}

TEST_CASE("integer factorization round-trips") {
    auto f = factor_integer(728);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].first == 2);
    CHECK(f.factors[0].second == 3);
    CHECK(f.factors[1].first == 7);
    CHECK(f.factors[2].first == 13);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t n = 2 + rng() % 100000000;
        std::uint64_t prod = 1;
        for (auto& [p, e] : factor_integer(n).factors) {
            CHECK(prime_by_trial(p));
            for (unsigned j = 0; j < e; ++j) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("prime field arithmetic matches integer arithmetic mod p") {
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
        const FieldCtx& F = FieldCtx::get(p, 1);
        for (std::uint32_t a = 0; a < p; ++a) {
            for (std::uint32_t b = 0; b < p; ++b) {
                CHECK((F.elt(a) + F.elt(b)).idx == (a + b) % p);
                CHECK((F.elt(a) * F.elt(b)).idx == (a * b) % p);
                CHECK((F.elt(a) - F.elt(b)).idx == (a + p - b) % p);
            }
            if (a != 0) CHECK((F.elt(a) * field_div(F.one(), F.elt(a))).idx == 1);
        }
    }
}

TEST_CASE("extension fields satisfy the field axioms exhaustively") {
    for (auto [p, n] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {2u, 4u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        const std::uint32_t q = static_cast<std::uint32_t>(F.q());
        for (std::uint32_t a = 0; a < q; ++a) {
            Felt ea = F.elt(a);
            CHECK((ea + F.zero()) == ea);
            CHECK((ea * F.one()) == ea);
            if (a != 0) CHECK((ea * field_div(F.one(), ea)) == F.one());
            for (std::uint32_t b = 0; b < q; ++b) {
                Felt eb = F.elt(b);
                CHECK((ea + eb) == (eb + ea));
                CHECK((ea * eb) == (eb * ea));
                // Frobenius is additive: (a+b)^p = a^p + b^p
                CHECK(field_pow(ea + eb, p) == field_pow(ea, p) + field_pow(eb, p));
                for (std::uint32_t c = 0; c < q; ++c) {
                    if ((a + b + c) % 5) continue;  // thinned triple sweep
                    Felt ec = F.elt(c);
                    CHECK(((ea + eb) + ec) == (ea + (eb + ec)));
                    CHECK((ea * (eb + ec)) == (ea * eb + ea * ec));
                }
            }
        }
    }
}

TEST_CASE("canonical moduli are the first irreducibles in index order") {
    // coefficient vectors, constant first, leading 1 last
    CHECK(FieldCtx::get(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(FieldCtx::get(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(FieldCtx::get(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("element order and generators against brute force") {
    for (auto [p, n] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {2u, 3u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        const std::uint64_t q = F.q();
        for (std::uint32_t a = 1; a < q; ++a) {
            // brute-force order: multiply until hitting 1
            Felt x = F.elt(a);
            Felt acc = x;
            std::uint64_t ord = 1;
            while (!(acc == F.one())) {
                acc = acc * x;
                ++ord;
            }
            CHECK(element_order(F.elt(a)) == ord);
        }
        Felt g = find_generator(F);
        CHECK(element_order(g) == q - 1);
        // canonical: no smaller index generates
        for (std::uint32_t a = 1; a < g.idx; ++a) CHECK(element_order(F.elt(a)) != q - 1);
    }
    CHECK(find_generator(FieldCtx::get(5, 1)).idx == 2);
    CHECK(find_generator(FieldCtx::get(7, 1)).idx == 3);
}

TEST_CASE("l-th power test against the brute-force power set") {
    for (auto [p, n] : {std::pair{5u, 1u}, {7u, 1u}, {13u, 1u}, {3u, 2u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        const std::uint64_t q = F.q();
        for (std::uint64_t l : {2, 3, 5}) {
            std::set<std::uint32_t> powers;
            for (std::uint32_t b = 0; b < q; ++b) powers.insert(field_pow(F.elt(b), l).idx);
            for (std::uint32_t a = 0; a < q; ++a)
                CHECK(is_lth_power(F.elt(a), l) == (powers.count(a) > 0));
        }
    }
}

TEST_CASE("quadratic extension: trace and norm match Frobenius") {
    for (auto [p, n] : {std::pair{3u, 1u}, {7u, 1u}, {11u, 1u}, {3u, 2u}, {5u, 1u}}) {
        const FieldCtx& F = FieldCtx::get(p, n);
        const std::uint64_t q = F.q();
        for (std::uint64_t idx = 0; idx < q * q; ++idx) {
            Ext2 b = ext2_from_index(F, idx);
            Ext2 conj = ext2_pow(b, q);  // Frobenius oracle
            auto [tr, nm] = trace_norm(b);
            CHECK(ext2_add(b, conj) == ext2_from(tr));
            CHECK(ext2_mul(b, conj) == ext2_from(nm));
        }
        Ext2 g = ext2_find_generator(F);
        CHECK(ext2_element_order(g) == q * q - 1);
    }
}

TEST_CASE("norm of a non-square in GF(q^2) is a non-square in GF(q), q odd") {
    for (std::uint64_t q : {3, 5, 7, 11}) {
        const FieldCtx& F = FieldCtx::get(q, 1);
        for (std::uint64_t idx = 1; idx < q * q; ++idx) {
            Ext2 b = ext2_from_index(F, idx);
            // b is a square in GF(q^2) iff b^((q^2-1)/2) = 1
            bool b_square = ext2_pow(b, (q * q - 1) / 2) == ext2_from(F.one());
            auto [tr, nm] = trace_norm(b);
            if (!b_square) CHECK_FALSE(is_lth_power(nm, 2));
        }
    }
}

TEST_CASE("desk-scale guards") {
    CHECK_THROWS_AS(FieldCtx::get(2, 17), DeskScaleError);  // q > 2^16
    CHECK_THROWS_AS(FieldCtx::get(4, 1), DomainError);      // p not prime
}
