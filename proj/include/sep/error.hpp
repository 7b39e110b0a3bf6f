#pragma once

#include <stdexcept>
#include <string>

namespace sep {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input rejection with a human-readable location (line number or field path).
struct parse_error : error {
    parse_error(const std::string& where, const std::string& what)
        : error(where + ": " + what), location(where) {}
    std::string location;
};

// Exact operation refused because the class is too large.
struct cap_exceeded : error {
    cap_exceeded(std::uint64_t size, std::uint64_t cap, const std::string& what_for)
        : error(what_for + ": class size " + std::to_string(size) + " exceeds cap " +
                std::to_string(cap) + "; use the simulator for graphs of this scale") {}
};

} // namespace sep
