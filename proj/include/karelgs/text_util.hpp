#pragma once

#include <sstream>
#include <string>

namespace karelgs {

// "0.0", "0.5", "0.46875": shortest decimal form, always with a decimal point.
inline std::string format_reward(double value) {
    std::ostringstream out;
    out << value;
    std::string s = out.str();
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

} // namespace karelgs
