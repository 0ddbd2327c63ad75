// fset: finite-field F-set toolkit — closures, families, filtrations, and
// verification suites with stable JSON/CSV/text reports.
//
// Exit codes: 0 pass, 1 verification failures, 2 configuration or parse
// error, 3 desk-scale budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fset/families.hpp"
#include "fset/fsets.hpp"
#include "fset/suites.hpp"
#include "fset/textio.hpp"

using json = nlohmann::ordered_json;
using namespace fset;

namespace {

constexpr const char* kSchema = "fset/1";

struct Opts {
    std::string qlist;
    unsigned horizon = 32;
    unsigned kmax = 6;
    std::uint64_t seed = kDefaultFactorSeed;
    std::string format = "text";
    std::string out;
};

void add_common(CLI::App* cmd, Opts& o) {
    cmd->add_option("--q", o.qlist, "field size(s), comma separated prime powers");
    cmd->add_option("--horizon", o.horizon, "degree horizon D")->check(CLI::PositiveNumber);
    cmd->add_option("--kmax", o.kmax, "iteration bound K")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "PRNG seed for randomized checks");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", o.out, "write the report to this path instead of stdout");
}

std::vector<std::uint64_t> parse_qs(const std::string& s) {
    std::vector<std::uint64_t> qs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        std::uint64_t q = std::stoull(item, &pos);
        if (pos != item.size() || q < 2) throw DomainError("bad --q entry '" + item + "'");
        qs.push_back(q);
    }
    return qs;
}

const FieldCtx& ctx_for(std::uint64_t q) {
    std::uint64_t p = q;
    unsigned n = 1;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            n = 0;
            std::uint64_t v = q;
            while (v % d == 0) v /= d, ++n;
            if (v != 1) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
            break;
        }
    }
    return FieldCtx::get(p, n);
}

std::uint64_t single_q(const Opts& o) {
    auto qs = parse_qs(o.qlist);
    if (qs.size() != 1) throw DomainError("this command needs exactly one --q value");
    return qs[0];
}

void emit(const Opts& o, const std::string& body) {
    if (o.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw DomainError("cannot open --out path '" + o.out + "'");
    f << body;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json polyset_json(const PolySet& s) {
    json arr = json::array();
    for (auto& f : s) arr.push_back(format_poly_body(f));
    return arr;
}

json filtration_json(const FiltrationReport& rep, std::uint64_t q) {
    json levels = json::array();
    for (auto& lv : rep.levels) {
        levels.push_back({{"n", lv.n},
                          {"size", lv.size},
                          {"nullity_size", lv.nullity_size},
                          {"members_sample", polyset_json(lv.members_sample)}});
    }
    json j{{"schema", kSchema},     {"q", q},
           {"family", rep.family_name}, {"horizon", rep.horizon},
           {"levels", levels},      {"stabilized_width", nullptr},
           {"chain_max", rep.chain_max}};
    if (rep.stabilized_width)
        j["stabilized_width"] = *rep.stabilized_width;
    else
        j["stabilized_width"] = "not determined at this horizon";
    return j;
}

// --- closure -----------------------------------------------------------------

int cmd_closure(const Opts& o, const std::vector<std::string>& seeds) {
    const FieldCtx& F = ctx_for(single_q(o));
    std::vector<Poly> seed;
    for (auto& s : seeds) {
        Poly f = parse_poly(F, s);
        if (!f.is_monic() || f.degree() < 1 || !is_irreducible(f)) {
            auto fac = factor(f.degree() >= 1 ? f : poly_mul(f, Poly::one(F)));
            std::string shape;
            for (auto& [g, e] : fac.factors)
                shape += (shape.empty() ? "" : " * ") + std::string("(") + format_poly_body(g) + ")" +
                         (e > 1 ? "^" + std::to_string(e) : "");
            throw DomainError("seed '" + s + "' is not monic irreducible; it factors as " + shape);
        }
        seed.push_back(f);
    }
    FSetView A = f_closure(seed);
    bool closed = is_f_set(A);

    if (o.format == "json") {
        json j{{"schema", kSchema},
               {"q", F.q()},
               {"seed", seeds},
               {"size", A.members.size()},
               {"is_f_set", closed},
               {"members", polyset_json(A.members)}};
        emit(o, j.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string body = "member\n";
        for (auto& f : A.members) body += csv_quote(format_poly_body(f)) + "\n";
        emit(o, body);
    } else {
        std::string body = "closure over " + format_field(F) + ": " + std::to_string(A.members.size()) +
                           " members, is_f_set=" + (closed ? "yes" : "no") + "\n";
        for (auto& f : A.members) body += "  " + format_poly_body(f) + "\n";
        emit(o, body);
    }
    return closed ? 0 : 1;
}

// --- family ------------------------------------------------------------------

FamilySpec build_family(const std::string& kind, const FieldCtx& F) {
    if (kind == "width1") return build_width1(F);
    if (kind == "width2") return build_width2(F);
    if (kind == "cyclo2") return build_cyclo2(F);
    if (kind == "q3-iterated") return build_width1_infinite_case(F);
    if (kind == "full-iq") return build_full_iq(F);
    throw DomainError("unknown family kind '" + kind + "'");
}

int cmd_family(const Opts& o, const std::string& kind) {
    const FieldCtx& F = ctx_for(single_q(o));
    FamilySpec spec = build_family(kind, F);
    FSetView view = spec.view();
    PolySet members = view.truncate(o.horizon);
    FiltrationReport rep = nullity_filtration(view, o.horizon);

    json params = json::object();
    if (spec.l) params["l"] = *spec.l;
    if (spec.alpha) params["alpha"] = format_element(*spec.alpha);
    if (spec.beta) params["beta"] = format_element(*spec.beta);
    std::string observed =
        rep.stabilized_width ? std::to_string(*rep.stabilized_width) : "not determined at this horizon";

    if (o.format == "json") {
        json j{{"schema", kSchema},
               {"descriptor",
                {{"kind", family_kind_name(spec.kind)},
                 {"q", F.q()},
                 {"params", params},
                 {"analytic_width", spec.analytic_width.str()}}},
               {"members", polyset_json(members)},
               {"filtration", filtration_json(rep, F.q())},
               {"observed_width", observed},
               {"chain_max", rep.chain_max}};
        emit(o, j.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string body = "n,size,nullity_size\n";
        for (auto& lv : rep.levels)
            body += std::to_string(lv.n) + "," + std::to_string(lv.size) + "," +
                    std::to_string(lv.nullity_size) + "\n";
        emit(o, body);
    } else {
        std::string body = "family " + family_kind_name(spec.kind) + " over " + format_field(F) + "\n";
        body += "  params: " + params.dump() + "\n";
        body += "  analytic width: " + spec.analytic_width.str() + "\n";
        body += "  members (deg <= " + std::to_string(o.horizon) + "): " + std::to_string(members.size()) + "\n";
        for (auto& f : members) body += "    " + format_poly_body(f) + "\n";
        for (auto& lv : rep.levels)
            body += "  level " + std::to_string(lv.n) + ": size " + std::to_string(lv.size) +
                    ", nullity " + std::to_string(lv.nullity_size) + "\n";
        body += "  observed width: " + observed + "\n";
        body += "  chain_max: " + std::to_string(rep.chain_max) + "\n";
        emit(o, body);
    }
    return 0;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const Opts& o, const std::string& suite) {
    RunConfig cfg;
    cfg.qs = parse_qs(o.qlist);
    cfg.horizon = o.horizon;
    cfg.kmax = o.kmax;
    cfg.seed = o.seed;
    if (const char* env = std::getenv("FSET_BUDGET_MS")) cfg.budget_ms = std::strtoull(env, nullptr, 10);

    SuiteResult res = run_suite(suite, cfg);

    if (o.format == "json") {
        json fails = json::array();
        for (auto& f : res.failures) fails.push_back({{"repro", f.repro}, {"detail", f.detail}});
        json j{{"schema", kSchema}, {"suite", res.suite},     {"q", res.qs},
               {"horizon", res.horizon}, {"kmax", res.kmax}, {"seed", res.seed},
               {"cases", res.cases},     {"failures", fails}, {"skipped", res.skipped}};
        emit(o, j.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string body = "suite,cases,failures,skipped\n";
        body += res.suite + "," + std::to_string(res.cases) + "," + std::to_string(res.failures.size()) +
                "," + std::to_string(res.skipped.size()) + "\n";
        for (auto& f : res.failures) body += "failure," + csv_quote(f.repro) + "," + csv_quote(f.detail) + "\n";
        emit(o, body);
    } else {
        std::ostringstream body;
        body << "suite " << res.suite << ": " << res.cases << " cases, " << res.failures.size()
             << " failures, " << res.skipped.size() << " skipped (" << static_cast<long>(res.wall_ms)
             << " ms)\n";
        for (auto& f : res.failures) body << "  FAIL " << f.repro << " :: " << f.detail << "\n";
        for (auto& s : res.skipped) body << "  SKIP " << s << "\n";
        emit(o, body.str());
    }
    if (!res.failures.empty()) return 1;
    if (!res.skipped.empty()) return 3;
    return 0;
}

// --- enumerate ---------------------------------------------------------------

int cmd_enumerate(const Opts& o, unsigned max_deg) {
    const FieldCtx& F = ctx_for(single_q(o));
    PolySet polys = enumerate_monic_irreducibles(F, max_deg);
    if (o.format == "json") {
        json j{{"schema", kSchema}, {"q", F.q()}, {"max_degree", max_deg},
               {"count", polys.size()}, {"members", polyset_json(polys)}};
        emit(o, j.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string body = "poly\n";
        for (auto& f : polys) body += csv_quote(format_poly_body(f)) + "\n";
        emit(o, body);
    } else {
        std::string body = std::to_string(polys.size()) + " monic irreducibles of degree <= " +
                           std::to_string(max_deg) + " over " + format_field(F) + "\n";
        for (auto& f : polys) body += "  " + format_poly_body(f) + "\n";
        emit(o, body);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"F-set computations over finite fields"};
    app.require_subcommand(1);

    Opts o_closure, o_family, o_verify, o_enum;
    std::vector<std::string> seeds;
    std::string kind, suite;

    auto* c = app.add_subcommand("closure", "F-closure of seed polynomials");
    add_common(c, o_closure);
    c->add_option("polys", seeds, "seed polynomials in canonical text")->required();

    auto* f = app.add_subcommand("family", "build a named family and report its filtration");
    add_common(f, o_family);
    f->add_option("--kind", kind, "width1 | width2 | cyclo2 | q3-iterated | full-iq")->required();

    auto* v = app.add_subcommand("verify", "run a verification suite");
    add_common(v, o_verify);
    v->add_option("suite", suite, "one of: thm33 thm34 prop41 lemma43 families prop36 iq-example counting")
        ->required()
        ->check(CLI::IsMember(suite_ids()));

    auto* e = app.add_subcommand("enumerate", "list monic irreducibles up to a degree");
    add_common(e, o_enum);
    o_enum.horizon = 4;  // enumeration default: full lists stay small

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c->parsed()) return cmd_closure(o_closure, seeds);
        if (f->parsed()) return cmd_family(o_family, kind);
        if (v->parsed()) return cmd_verify(o_verify, suite);
        if (e->parsed()) return cmd_enumerate(o_enum, o_enum.horizon);
    } catch (const DeskScaleError& err) {
        std::cerr << "desk-scale budget exceeded: " << err.what() << "\n";
        return 3;
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    } catch (const DomainError& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return 2;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
