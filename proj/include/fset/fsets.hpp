#ifndef FSET_FSETS_HPP
#define FSET_FSETS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fset/poly.hpp"

// F-sets: sets of monic irreducibles closed under taking irreducible factors
// of f - f(0). Closure, nullity, the nullity filtration, and chain search.
// Infinite families are handled through degree-truncated views; nullity of a
// truncated view is horizon-relative (candidates up to D/2, witnesses up to D).

namespace fset {

// sorted canonically, no duplicates
using PolySet = std::vector<Poly>;

void polyset_insert(PolySet& s, const Poly& f);
bool polyset_contains(const PolySet& s, const Poly& f);

struct FSetView {
    enum class Kind { Explicit, Family };
    Kind kind = Kind::Explicit;
    const FieldCtx* ctx = nullptr;

    PolySet members;  // explicit kind

    // family kind: membership for any monic irreducible, plus a degree-bounded
    // enumerator yielding members in canonical order
    std::string family_name;
    std::function<bool(const Poly&)> member_fn;
    std::function<PolySet(unsigned max_deg)> enum_fn;

    static FSetView explicit_set(const FieldCtx& ctx, PolySet members);
    static FSetView family(const FieldCtx& ctx, std::string name, std::function<bool(const Poly&)> member,
                           std::function<PolySet(unsigned)> enumerate);

    PolySet truncate(unsigned max_deg) const;  // members of degree <= max_deg
    bool contains(const Poly& f) const;
};

// Every monic irreducible factor of f - f(0), f in A, is again in A.
bool is_f_set(const FSetView& A);

// Least F-set containing the seed; seeds must be monic irreducible. Every new
// member has degree <= the maximal seed degree.
FSetView f_closure(const std::vector<Poly>& seed);

struct NullityResult {
    PolySet members;
    bool horizon_relative = false;  // family views only
};

// N(A) = {f in A : f divides no g - g(0), g in A}. Exact for explicit views;
// for family views, candidates range over degree <= D/2 and witnesses over
// degree <= D.
NullityResult nullity(const FSetView& A, unsigned horizon);

struct FiltrationReport {
    unsigned horizon = 0;
    std::string family_name;
    struct Level {
        unsigned n = 0;
        std::size_t size = 0;
        std::size_t nullity_size = 0;
        PolySet members_sample;
    };
    std::vector<Level> levels;
    std::optional<unsigned> stabilized_width;  // nullopt: not determined at this horizon
    unsigned chain_max = 0;
    PolySet final_level;  // the stabilized set, when one was reached
};

// Iterates A_n = A_{n-1} \ N(A_{n-1}). For family views each level halves the
// candidate horizon; stabilized_width is reported only when runs at D and D/2
// agree.
FiltrationReport nullity_filtration(const FSetView& A, unsigned horizon, unsigned max_levels = 16,
                                    std::size_t sample_cap = 10000);

struct Chain {
    std::vector<Poly> polys;  // f_1 != x, f_i | f_{i+1} - f_{i+1}(0)
};

// Maximum-length chain among members of degree <= horizon (longest path in
// the divisibility DAG with x excluded).
Chain longest_chain(const FSetView& A, unsigned horizon);

// First monic g in canonical order with h = g*x*f + a irreducible, searching
// deg g <= search_bound. By construction f | h - h(0).
Poly dirichlet_witness(const Poly& f, const Felt& a, unsigned search_bound);

// Nullity under union and intersection: N(A u B) is contained in
// N(A) u N(B), and N(A) n N(B) is contained in N(A n B).
bool check_prop36_12(const FSetView& A, const FSetView& B);

}  // namespace fset

#endif
