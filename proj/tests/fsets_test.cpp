#include "doctest.h"

#include <random>

#include "fset/families.hpp"
#include "fset/fsets.hpp"
#include "fset/textio.hpp"

using namespace fset;

namespace {

PolySet parse_set(const FieldCtx& F, std::initializer_list<const char*> texts) {
    PolySet s;
    for (auto* t : texts) polyset_insert(s, parse_poly(F, t));
    return s;
}

}  // namespace

TEST_CASE("is_f_set on pinned examples") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    const FieldCtx& F2 = FieldCtx::get(2, 1);
    CHECK(is_f_set(FSetView::explicit_set(F3, parse_set(F3, {"x"}))));
    CHECK(is_f_set(FSetView::explicit_set(F2, parse_set(F2, {"x", "x+1"}))));
    CHECK_FALSE(is_f_set(FSetView::explicit_set(F3, parse_set(F3, {"x^2+1"}))));  // missing x
}

TEST_CASE("f_closure pinned examples and properties") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    Poly x = Poly::x(F3);
    CHECK(f_closure({x}).members == parse_set(F3, {"x"}));

    Poly f2 = parse_poly(F3, "x^4+2*x^2+2");
    auto A2 = f_closure({f2});
    CHECK(A2.members == parse_set(F3, {"x", "x+1", "x+2", "x^4+2*x^2+2"}));

    // closure of f_3 skips f_2
    Poly f = parse_poly(F3, "x^2+1");  // x^2 - 2
    Poly f3 = iterate_poly(f, 3);
    auto A3 = f_closure({f3});
    PolySet expect = parse_set(F3, {"x", "x+1", "x+2", "x^2+1"});
    polyset_insert(expect, f3);
    CHECK(A3.members == expect);
    CHECK_FALSE(polyset_contains(A3.members, f2));

    // idempotence, monotonicity, degree bound, closedness
    std::mt19937_64 rng(31);
    auto pool = enumerate_monic_irreducibles(F3, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Poly> seed{pool[rng() % pool.size()], pool[rng() % pool.size()]};
        auto A = f_closure(seed);
        CHECK(is_f_set(A));
        CHECK(f_closure(std::vector<Poly>(A.members.begin(), A.members.end())).members == A.members);
        int max_deg = std::max(seed[0].degree(), seed[1].degree());
        for (auto& g : A.members) CHECK(g.degree() <= max_deg);
        std::vector<Poly> bigger = seed;
        bigger.push_back(pool[rng() % pool.size()]);
        auto B = f_closure(bigger);
        for (auto& g : A.members) CHECK(polyset_contains(B.members, g));
    }

    CHECK_THROWS_AS(f_closure({parse_poly(F3, "x^2+2")}), DomainError);  // reducible seed
}

TEST_CASE("nullity: exact on explicit views, horizon-relative on families") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    auto just_x = FSetView::explicit_set(F3, parse_set(F3, {"x"}));
    CHECK(nullity(just_x, 0).members.empty());  // x | x - 0
    CHECK_FALSE(nullity(just_x, 0).horizon_relative);

    const FieldCtx& F5 = FieldCtx::get(5, 1);
    auto w1 = build_width1(F5).view();
    auto n1 = nullity(w1, 16);
    CHECK(n1.horizon_relative);
    // candidates deg <= 8: the shifted powers x^(2^k) - 2, x itself excluded
    CHECK(n1.members == parse_set(F5, {"x+3", "x^2+3", "x^4+3", "x^8+3"}));
}

TEST_CASE("filtration: explicit sets have width 0, families match analysis") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    auto A = f_closure({parse_poly(F3, "x^4+2*x^2+2")});
    auto rep = nullity_filtration(A, 8);
    REQUIRE(rep.stabilized_width.has_value());
    CHECK(*rep.stabilized_width == 0);

    const FieldCtx& F5 = FieldCtx::get(5, 1);
    auto rep1 = nullity_filtration(build_width1(F5).view(), 32);
    REQUIRE(rep1.stabilized_width.has_value());
    CHECK(*rep1.stabilized_width == 1);
    CHECK(rep1.final_level == parse_set(F5, {"x"}));

    auto rep2 = nullity_filtration(build_width2(F5).view(), 32);
    REQUIRE(rep2.stabilized_width.has_value());
    CHECK(*rep2.stabilized_width == 2);
    CHECK(rep2.final_level == parse_set(F5, {"x"}));
    // A_1 = {x} u {x^(2^k)+2} at the level-1 candidate horizon (deg <= 16)
    REQUIRE(rep2.levels.size() >= 2);
    CHECK(rep2.levels[1].members_sample ==
          parse_set(F5, {"x", "x+2", "x^2+2", "x^4+2", "x^8+2", "x^16+2"}));

    // per-level sizes weakly decrease
    for (auto& rep_ref : {rep1, rep2})
        for (std::size_t i = 1; i < rep_ref.levels.size(); ++i)
            CHECK(rep_ref.levels[i].size <= rep_ref.levels[i - 1].size);

    // a truncation of something that never thins out is not decided
    auto rep_iq = nullity_filtration(build_full_iq(F3).view(), 12);
    CHECK_FALSE(rep_iq.stabilized_width.has_value());
}

TEST_CASE("filtration respects A_n = A_(n-1) minus N(A_(n-1)) on explicit sets") {
    const FieldCtx& F2 = FieldCtx::get(2, 1);
    std::mt19937_64 rng(37);
    auto pool = enumerate_monic_irreducibles(F2, 6);
    for (int trial = 0; trial < 30; ++trial) {
        auto A = f_closure({pool[rng() % pool.size()], pool[rng() % pool.size()]});
        PolySet cur = A.members;
        auto rep = nullity_filtration(A, 6);
        for (auto& lvl : rep.levels) {
            CHECK(lvl.size == cur.size());
            auto N = nullity(FSetView::explicit_set(F2, cur), 0).members;
            CHECK(lvl.nullity_size == N.size());
            PolySet next;
            for (auto& g : cur)
                if (!polyset_contains(N, g)) polyset_insert(next, g);
            cur = next;
        }
    }
}

TEST_CASE("monotonicity: nested explicit F-sets have nested filtrations") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    std::mt19937_64 rng(41);
    auto pool = enumerate_monic_irreducibles(F3, 5);
    for (int trial = 0; trial < 30; ++trial) {
        auto A = f_closure({pool[rng() % pool.size()]});
        std::vector<Poly> seedB(A.members.begin(), A.members.end());
        seedB.push_back(pool[rng() % pool.size()]);
        auto B = f_closure(seedB);
        PolySet a = A.members, b = B.members;
        for (int level = 0; level < 6; ++level) {
            for (auto& g : a) CHECK(polyset_contains(b, g));
            auto na = nullity(FSetView::explicit_set(F3, a), 0).members;
            auto nb = nullity(FSetView::explicit_set(F3, b), 0).members;
            PolySet a2, b2;
            for (auto& g : a)
                if (!polyset_contains(na, g)) polyset_insert(a2, g);
            for (auto& g : b)
                if (!polyset_contains(nb, g)) polyset_insert(b2, g);
            a = a2;
            b = b2;
        }
    }
}

TEST_CASE("longest chains on pinned universes") {
    const FieldCtx& F5 = FieldCtx::get(5, 1);
    CHECK(longest_chain(build_width1(F5).view(), 32).polys.size() == 1);
    CHECK(longest_chain(build_width2(F5).view(), 32).polys.size() == 2);

    const FieldCtx& F3 = FieldCtx::get(3, 1);
    auto iq3 = build_full_iq(F3).view();
    auto c = longest_chain(iq3, 6);
    CHECK(c.polys.size() == 4);
    // the chain is valid: f_1 != x, f_i | f_(i+1) - f_(i+1)(0)
    CHECK_FALSE(c.polys[0] == Poly::x(F3));
    for (std::size_t i = 0; i + 1 < c.polys.size(); ++i)
        CHECK(poly_divides(c.polys[i], shifted_by_constant(c.polys[i + 1])));
}

TEST_CASE("dirichlet_witness pinned values and contract") {
    const FieldCtx& F3 = FieldCtx::get(3, 1);
    Poly h3 = dirichlet_witness(parse_poly(F3, "x+1"), F3.one(), 4);
    CHECK(format_poly_body(h3) == "x^3+2*x^2+x+1");

    const FieldCtx& F2 = FieldCtx::get(2, 1);
    Poly h2 = dirichlet_witness(parse_poly(F2, "x+1"), F2.one(), 4);
    CHECK(format_poly_body(h2) == "x^2+x+1");  // g = 1 already works

    for (auto& f : enumerate_monic_irreducibles(F3, 4)) {
        Poly h = dirichlet_witness(f, F3.from_int(2), 6);
        CHECK(is_irreducible(h));
        CHECK(poly_divides(f, shifted_by_constant(h)));
    }
    CHECK_THROWS_AS(dirichlet_witness(parse_poly(F3, "x+1"), F3.zero(), 4), DomainError);
}

TEST_CASE("nullity under union and intersection") {
    const FieldCtx& F2 = FieldCtx::get(2, 1);
    // the orientation witness: x+1 in N(A) but not in N(A u B)
    auto A = FSetView::explicit_set(F2, parse_set(F2, {"x", "x+1"}));
    auto B = FSetView::explicit_set(F2, parse_set(F2, {"x", "x+1", "x^4+x^3+x^2+x+1"}));
    CHECK(is_f_set(A));
    CHECK(is_f_set(B));
    CHECK(polyset_contains(nullity(A, 0).members, parse_poly(F2, "x+1")));
    CHECK_FALSE(polyset_contains(nullity(B, 0).members, parse_poly(F2, "x+1")));
    CHECK(check_prop36_12(A, B));

    const FieldCtx& F3 = FieldCtx::get(3, 1);
    auto A3 = FSetView::explicit_set(F3, parse_set(F3, {"x"}));
    auto B3 = f_closure({parse_poly(F3, "x^4+2*x^2+2")});
    CHECK(check_prop36_12(A3, B3));
    CHECK(check_prop36_12(B3, B3));
}

TEST_CASE("the complement of each infinite family keeps growing") {
    const FieldCtx& F7 = FieldCtx::get(7, 1);
    auto cy = build_cyclo2(F7);
    auto count_excluded = [&](unsigned D) {
        std::size_t k = 0;
        for (auto& g : enumerate_monic_irreducibles(F7, D))
            if (!cy.membership(g)) ++k;
        return k;
    };
    std::size_t e3 = count_excluded(3), e4 = count_excluded(4);
    CHECK(e3 > 0);
    CHECK(e4 > e3);
}
