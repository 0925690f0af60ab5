#include "hothand/exact_dist.hpp"

namespace hothand {

std::string_view to_string(ArithmeticMode mode) {
    return mode == ArithmeticMode::rational ? "rational" : "double";
}

ArithmeticMode parse_arithmetic_mode(std::string_view text) {
    if (text == "rational") return ArithmeticMode::rational;
    if (text == "double") return ArithmeticMode::floating;
    throw InvalidArgument("arithmetic mode must be 'rational' or 'double', got '" + std::string(text) + "'");
}

} // namespace hothand
