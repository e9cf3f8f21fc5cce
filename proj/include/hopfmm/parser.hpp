#pragma once

// Expression grammar:
//   expr   := [+|-] tterm { (+|-) tterm }
//   tterm  := term { "(x)" term }          one term per tensor slot
//   term   := factor { [*|/] factor }      juxtaposition multiplies
//   factor := atom [ ^ [-]int ]
//   atom   := name | int | q | hbar | ( expr )
// Division and negative powers apply only to scalar values.

#include <string>
#include <variant>
#include <vector>

#include "hopfmm/algebra.hpp"

namespace hopfmm {

using Parsed = std::variant<Element, TensorElement>;

// Every slot is read in `p`; the arity is whatever the text uses.
Parsed parse_expression(const std::string& text, const Presentation& p, int line = 1);
// The text must use exactly slots.size() slots.
Parsed parse_expression(const std::string& text, const std::vector<const Presentation*>& slots, int line = 1);

Element parse_element(const std::string& text, const Presentation& p, int line = 1);
TensorElement parse_tensor(const std::string& text, const std::vector<const Presentation*>& slots, int line = 1);
Scalar parse_scalar(const std::string& text, Ring ring, int line = 1);

bool is_reserved_name(const std::string& name);

}  // namespace hopfmm
