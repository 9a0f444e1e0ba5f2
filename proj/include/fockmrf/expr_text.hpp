#pragma once

#include <string>
#include <string_view>

#include "fockmrf/operator_expr.hpp"

namespace fockmrf {

// Text form of an operator expression: terms joined by " + ", each term
// "c * A'[s,i]^p A[s,j]^q ..." with A' = create, A = annihilate, s = node,
// i = bin. A term with no factors renders as the bare coefficient; the zero
// expression renders as "0". Rendering is deterministic for canonical input.
std::string render_expr(const OperatorExpr& expr);

// Inverse of render_expr; also accepts '-' as a term separator, omitted
// "c *" coefficients and fractional coefficients "a/b".
OperatorExpr parse_expr(std::string_view text);

}  // namespace fockmrf
