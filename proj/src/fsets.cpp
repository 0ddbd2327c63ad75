#include "fset/fsets.hpp"

#include <algorithm>

#include "fset/textio.hpp"

namespace fset {

void polyset_insert(PolySet& s, const Poly& f) {
    auto it = std::lower_bound(s.begin(), s.end(), f, canonical_less);
    if (it == s.end() || !(*it == f)) s.insert(it, f);
}

bool polyset_contains(const PolySet& s, const Poly& f) {
    auto it = std::lower_bound(s.begin(), s.end(), f, canonical_less);
    return it != s.end() && *it == f;
}

namespace {

PolySet set_difference(const PolySet& a, const PolySet& b) {
    PolySet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), canonical_less);
    return out;
}

PolySet filter_by_degree(const PolySet& a, unsigned max_deg) {
    PolySet out;
    for (auto& f : a)
        if (f.degree() <= static_cast<int>(max_deg)) out.push_back(f);
    return out;
}

// members of `candidates` dividing some g - g(0), g in `witnesses`
PolySet witnessed_members(const PolySet& candidates, const PolySet& witnesses) {
    PolySet hit;
    for (auto& g : witnesses) {
        for (auto& [p, e] : factor(shifted_by_constant(g)).factors) {
            if (polyset_contains(candidates, p)) polyset_insert(hit, p);
        }
    }
    return hit;
}

}  // namespace

FSetView FSetView::explicit_set(const FieldCtx& ctx, PolySet members) {
    FSetView v;
    v.kind = Kind::Explicit;
    v.ctx = &ctx;
    v.members = std::move(members);
    return v;
}

FSetView FSetView::family(const FieldCtx& ctx, std::string name, std::function<bool(const Poly&)> member,
                          std::function<PolySet(unsigned)> enumerate) {
    FSetView v;
    v.kind = Kind::Family;
    v.ctx = &ctx;
    v.family_name = std::move(name);
    v.member_fn = std::move(member);
    v.enum_fn = std::move(enumerate);
    return v;
}

PolySet FSetView::truncate(unsigned max_deg) const {
    if (kind == Kind::Explicit) return filter_by_degree(members, max_deg);
    return enum_fn(max_deg);
}

bool FSetView::contains(const Poly& f) const {
    if (kind == Kind::Explicit) return polyset_contains(members, f);
    return member_fn(f);
}

bool is_f_set(const FSetView& A) {
    if (A.kind != FSetView::Kind::Explicit) throw DomainError("is_f_set: explicit view required");
    for (auto& f : A.members) {
        for (auto& [p, e] : factor(shifted_by_constant(f)).factors) {
            if (!polyset_contains(A.members, p)) return false;
        }
    }
    return true;
}

FSetView f_closure(const std::vector<Poly>& seed) {
    if (seed.empty()) throw DomainError("f_closure: empty seed");
    const FieldCtx* ctx = seed.front().ctx;
    int max_deg = 0;
    for (auto& f : seed) {
        if (f.ctx != ctx) throw DomainError("f_closure: mixed contexts in seed");
        if (!f.is_monic() || !is_irreducible(f))
            throw DomainError("f_closure: seed member is not monic irreducible: " + format_poly_body(f));
        max_deg = std::max(max_deg, f.degree());
    }
    PolySet closed;
    std::vector<Poly> work(seed.begin(), seed.end());
    while (!work.empty()) {
        Poly f = work.back();
        work.pop_back();
        if (polyset_contains(closed, f)) continue;
        if (f.degree() > max_deg) throw Error("f_closure: member degree exceeded the seed degree");
        polyset_insert(closed, f);
        for (auto& [p, e] : factor(shifted_by_constant(f)).factors) work.push_back(p);
    }
    return FSetView::explicit_set(*ctx, std::move(closed));
}

NullityResult nullity(const FSetView& A, unsigned horizon) {
    NullityResult r;
    if (A.kind == FSetView::Kind::Explicit) {
        PolySet hit = witnessed_members(A.members, A.members);
        r.members = set_difference(A.members, hit);
        return r;
    }
    PolySet witnesses = A.truncate(horizon);
    PolySet candidates = filter_by_degree(witnesses, horizon / 2);
    PolySet hit = witnessed_members(candidates, witnesses);
    r.members = set_difference(candidates, hit);
    r.horizon_relative = true;
    return r;
}

namespace {

struct FiltrationRun {
    std::vector<FiltrationReport::Level> levels;
    std::optional<unsigned> width;
    PolySet final_set;
};

FiltrationRun run_filtration(const FSetView& A, unsigned horizon, unsigned max_levels, std::size_t sample_cap) {
    FiltrationRun run;
    const bool family = A.kind == FSetView::Kind::Family;
    PolySet cur = A.truncate(horizon);
    unsigned h = horizon;
    for (unsigned n = 0; n <= max_levels; ++n) {
        unsigned next_h = family ? h / 2 : h;
        PolySet candidates = family ? filter_by_degree(cur, next_h) : cur;
        PolySet hit = witnessed_members(candidates, cur);
        PolySet null_set = set_difference(candidates, hit);
        FiltrationReport::Level lvl;
        lvl.n = n;
        lvl.size = cur.size();
        lvl.nullity_size = null_set.size();
        lvl.members_sample = cur;
        if (lvl.members_sample.size() > sample_cap) lvl.members_sample.resize(sample_cap);
        run.levels.push_back(std::move(lvl));
        PolySet next = set_difference(candidates, null_set);
        if (next == cur) {
            run.width = n;
            run.final_set = cur;
            return run;
        }
        if (family && next_h == 0) break;
        cur = std::move(next);
        h = next_h;
    }
    return run;  // no stabilization within budget
}

}  // namespace

FiltrationReport nullity_filtration(const FSetView& A, unsigned horizon, unsigned max_levels, std::size_t sample_cap) {
    FiltrationReport rep;
    rep.horizon = horizon;
    rep.family_name = A.kind == FSetView::Kind::Family ? A.family_name : "explicit";
    FiltrationRun main = run_filtration(A, horizon, max_levels, sample_cap);
    rep.levels = main.levels;
    rep.final_level = main.final_set;
    if (A.kind == FSetView::Kind::Explicit) {
        // explicit sets are finite, so the width is 0 by definition
        rep.stabilized_width = 0;
    } else if (main.width) {
        // truncations of infinite-width sets can look stable at a fixed
        // horizon; only report a width both horizons agree on
        FiltrationRun half = run_filtration(A, horizon / 2, max_levels, sample_cap);
        if (half.width && *half.width == *main.width) rep.stabilized_width = main.width;
    }
    Chain c = longest_chain(A, horizon);
    rep.chain_max = static_cast<unsigned>(c.polys.size());
    return rep;
}

Chain longest_chain(const FSetView& A, unsigned horizon) {
    PolySet members = A.truncate(horizon);
    const Poly x = Poly::x(*A.ctx);
    PolySet nodes;
    for (auto& f : members)
        if (!(f == x)) polyset_insert(nodes, f);
    // canonical order is degree-ascending, and every edge strictly increases
    // degree, so a single left-to-right pass is a topological sweep
    std::vector<unsigned> len(nodes.size(), 1);
    std::vector<std::ptrdiff_t> parent(nodes.size(), -1);
    auto index_of = [&](const Poly& f) -> std::ptrdiff_t {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), f, canonical_less);
        if (it == nodes.end() || !(*it == f)) return -1;
        return it - nodes.begin();
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (auto& [p, e] : factor(shifted_by_constant(nodes[i])).factors) {
            if (p == x) continue;
            std::ptrdiff_t j = index_of(p);
            if (j < 0) continue;
            if (p.degree() >= nodes[i].degree())
                throw Error("longest_chain: divisibility edge does not increase degree");
            if (len[j] + 1 > len[i]) {
                len[i] = len[j] + 1;
                parent[i] = j;
            }
        }
    }
    Chain chain;
    if (nodes.empty()) return chain;
    std::size_t best = 0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (len[i] > len[best]) best = i;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(best); i >= 0; i = parent[i])
        chain.polys.push_back(nodes[i]);
    std::reverse(chain.polys.begin(), chain.polys.end());
    return chain;
}

Poly dirichlet_witness(const Poly& f, const Felt& a, unsigned search_bound) {
    if (!f.is_monic() || !is_irreducible(f)) throw DomainError("dirichlet_witness: f must be monic irreducible");
    if (f.ctx != a.ctx) throw DomainError("dirichlet_witness: mixed contexts");
    if (a.idx == 0) throw DomainError("dirichlet_witness: a must be nonzero");
    const FieldCtx& F = *f.ctx;
    const Poly xf = poly_mul(Poly::x(F), f);
    const Poly ca = Poly::constant(a);
    for (unsigned d = 0; d <= search_bound; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= F.q();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint32_t> c(d + 1);
            c[d] = 1;
            std::uint64_t t = idx;
            for (unsigned i = 0; i < d; ++i) {
                c[i] = static_cast<std::uint32_t>(t % F.q());
                t /= F.q();
            }
            Poly g{&F, std::move(c)};
            Poly h = poly_add(poly_mul(g, xf), ca);
            if (is_irreducible(h)) {
                if (!poly_divides(f, shifted_by_constant(h))) throw Error("dirichlet_witness: h - h(0) not divisible by f");
                return h;
            }
        }
    }
    throw DeskScaleError("dirichlet_witness: no witness within bound; increase the bound");
}

bool check_prop36_12(const FSetView& A, const FSetView& B) {
    if (A.kind != FSetView::Kind::Explicit || B.kind != FSetView::Kind::Explicit)
        throw DomainError("check_prop36_12: explicit views required");
    if (A.ctx != B.ctx) throw DomainError("check_prop36_12: mixed contexts");
    PolySet uni = A.members;
    for (auto& f : B.members) polyset_insert(uni, f);
    PolySet inter;
    std::set_intersection(A.members.begin(), A.members.end(), B.members.begin(), B.members.end(),
                          std::back_inserter(inter), canonical_less);
    auto null_of = [&](const PolySet& s) { return nullity(FSetView::explicit_set(*A.ctx, s), 0).members; };
    PolySet na = null_of(A.members), nb = null_of(B.members), nu = null_of(uni), ni = null_of(inter);
    // N(A u B) <= N(A) u N(B): a union only adds witnesses, so nullity shrinks
    for (auto& f : nu)
        if (!polyset_contains(na, f) && !polyset_contains(nb, f)) return false;
    // N(A) n N(B) <= N(A n B): an intersection only removes witnesses
    for (auto& f : na) {
        if (polyset_contains(nb, f) && polyset_contains(inter, f) && !polyset_contains(ni, f)) return false;
    }
    return true;
}

}  // namespace fset
