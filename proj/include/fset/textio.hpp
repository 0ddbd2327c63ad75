#ifndef FSET_TEXTIO_HPP
#define FSET_TEXTIO_HPP

#include <string>

#include "fset/gf.hpp"
#include "fset/poly.hpp"

// Canonical text forms. Fields: "GF(p)" or "GF(p^n; modulus=<poly>)".
// Elements: polynomial in "a" over the prime field, e.g. "2*a+1". Polynomials:
// terms descending, "^" for powers, non-atomic coefficients parenthesized,
// e.g. "x^4+2*x^2+3 over GF(5)". The parser accepts this grammar (plus '-')
// and the formatter re-emits it exactly.

namespace fset {

std::string format_field(const FieldCtx& ctx);
const FieldCtx& parse_field(const std::string& s);

std::string format_element(const Felt& a);
Felt parse_element(const FieldCtx& ctx, const std::string& s);

std::string format_poly_body(const Poly& f);                  // without the field suffix
std::string format_poly(const Poly& f);                       // "<body> over <field>"
Poly parse_poly(const FieldCtx& ctx, const std::string& s);   // body only
Poly parse_poly_full(const std::string& s);                   // "<body> over <field>"

}  // namespace fset

#endif
