#include "fset/textio.hpp"

#include <cctype>
#include <sstream>

namespace fset {

namespace {

// element text in the symbol `sym`, coefficients as prime-field integers
std::string format_in_symbol(const FieldCtx& ctx, const std::vector<std::uint32_t>& coeffs, char sym) {
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(coeffs[i]);
        } else {
            if (coeffs[i] != 1) {
                out += std::to_string(coeffs[i]);
                out += '*';
            }
            out += sym;
            if (i >= 2) {
                out += '^';
                out += std::to_string(i);
            }
        }
    }
    return out.empty() ? "0" : out;
}

bool element_text_atomic(const std::string& s) {
    // atomic: a single factor like "2", "a", "a^2" (no '+' and no '*')
    return s.find('+') == std::string::npos && s.find('*') == std::string::npos;
}

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    std::uint64_t number() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected number", pos);
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (v > (std::uint64_t(1) << 62)) throw ParseError("number too large", pos);
            ++pos;
        }
        return v;
    }
};

struct PolyParser {
    const FieldCtx& ctx;
    Lexer lex;

    // atom := number | 'a' ['^' n] | 'x' ['^' n] | '(' sum ')'
    // returns (constant part, power of x)
    std::pair<Felt, std::uint64_t> atom() {
        char c = lex.peek();
        if (c == '(') {
            lex.expect('(');
            Poly inner = sum();
            lex.expect(')');
            if (inner.degree() > 0) throw ParseError("parenthesized coefficient must be constant in x", lex.pos);
            return {inner.constant_term(), 0};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return {ctx.from_int(lex.number()), 0};
        }
        if (c == 'a') {
            ++lex.pos;
            if (ctx.n() < 2) throw ParseError("symbol 'a' needs an extension field", lex.pos);
            std::uint64_t e = 1;
            if (lex.accept('^')) e = lex.number();
            Felt root = ctx.elt(static_cast<std::uint32_t>(ctx.p()));  // coeff vector (0,1,0,...)
            return {field_pow(root, e), 0};
        }
        if (c == 'x') {
            ++lex.pos;
            std::uint64_t e = 1;
            if (lex.accept('^')) e = lex.number();
            return {ctx.one(), e};
        }
        throw ParseError("expected term", lex.pos);
    }

    Poly term() {
        auto [coef, xp] = atom();
        while (lex.accept('*')) {
            auto [c2, x2] = atom();
            coef = coef * c2;
            xp += x2;
        }
        if (xp > 4096) throw ParseError("exponent too large", lex.pos);
        std::vector<std::uint32_t> c(xp + 1, 0);
        c[xp] = coef.idx;
        return Poly::from_indices(ctx, std::move(c));
    }

    Poly sum() {
        bool negate = false;
        if (lex.accept('-'))
            negate = true;
        else
            lex.accept('+');
        Poly result = term();
        if (negate) result = poly_neg(result);
        while (true) {
            char c = lex.peek();
            if (c == '+' || c == '-') {
                ++lex.pos;
                Poly t = term();
                result = (c == '+') ? poly_add(result, t) : poly_sub(result, t);
            } else {
                break;
            }
        }
        return result;
    }
};

Poly parse_poly_impl(const FieldCtx& ctx, const std::string& s) {
    PolyParser p{ctx, Lexer{s}};
    Poly r = p.sum();
    if (!p.lex.eof()) throw ParseError("trailing input", p.lex.pos);
    return r;
}

}  // namespace

std::string format_field(const FieldCtx& ctx) {
    std::ostringstream os;
    if (ctx.n() == 1) {
        os << "GF(" << ctx.p() << ")";
    } else {
        os << "GF(" << ctx.p() << "^" << ctx.n() << "; modulus=";
        os << format_in_symbol(ctx, ctx.modulus(), 'x') << ")";
    }
    return os.str();
}

const FieldCtx& parse_field(const std::string& s) {
    Lexer lex{s};
    for (const char* kw = "GF"; *kw; ++kw)
        if (!lex.accept(*kw)) throw ParseError("expected 'GF('", lex.pos);
    lex.expect('(');
    std::uint64_t p = lex.number();
    unsigned n = 1;
    if (lex.accept('^')) n = static_cast<unsigned>(lex.number());
    const FieldCtx& ctx = FieldCtx::get(p, n);
    if (lex.accept(';')) {
        for (const char* kw = "modulus"; *kw; ++kw)
            if (!lex.accept(*kw)) throw ParseError("expected 'modulus='", lex.pos);
        lex.expect('=');
        std::size_t start = lex.pos;
        int depth = 0;
        std::size_t end = start;
        while (end < s.size() && (s[end] != ')' || depth > 0)) {
            if (s[end] == '(') ++depth;
            if (s[end] == ')') --depth;
            ++end;
        }
        const FieldCtx& prime = FieldCtx::get(p, 1);
        Poly given = parse_poly_impl(prime, s.substr(start, end - start));
        Poly canonical = Poly{&prime, {ctx.modulus().begin(), ctx.modulus().end()}};
        if (!(given == canonical))
            throw ParseError("modulus differs from the canonical modulus " +
                                 format_in_symbol(ctx, ctx.modulus(), 'x'),
                             start);
        lex.pos = end;
    }
    lex.expect(')');
    if (!lex.eof()) throw ParseError("trailing input after field", lex.pos);
    return ctx;
}

std::string format_element(const Felt& a) { return format_in_symbol(*a.ctx, a.ctx->coeffs(a.idx), 'a'); }

Felt parse_element(const FieldCtx& ctx, const std::string& s) {
    Poly p = parse_poly_impl(ctx, s);
    if (p.degree() > 0) throw ParseError("expected a field element, got a polynomial in x", 0);
    return p.constant_term();
}

std::string format_poly_body(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = f.c.size(); i-- > 0;) {
        if (f.c[i] == 0) continue;
        if (!out.empty()) out += '+';
        std::string coef = format_element(Felt{f.ctx, f.c[i]});
        if (i == 0) {
            out += element_text_atomic(coef) ? coef : "(" + coef + ")";
        } else {
            if (coef != "1") {
                out += element_text_atomic(coef) ? coef : "(" + coef + ")";
                out += '*';
            }
            out += 'x';
            if (i >= 2) {
                out += '^';
                out += std::to_string(i);
            }
        }
    }
    return out;
}

std::string format_poly(const Poly& f) { return format_poly_body(f) + " over " + format_field(*f.ctx); }

Poly parse_poly(const FieldCtx& ctx, const std::string& s) { return parse_poly_impl(ctx, s); }

Poly parse_poly_full(const std::string& s) {
    const std::string marker = " over ";
    auto pos = s.rfind(marker);
    if (pos == std::string::npos) throw ParseError("expected '<poly> over <field>'", s.size());
    const FieldCtx& ctx = parse_field(s.substr(pos + marker.size()));
    return parse_poly_impl(ctx, s.substr(0, pos));
}

}  // namespace fset
