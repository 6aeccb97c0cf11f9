#pragma once
#include <stdexcept>
#include <string>

namespace raag {

// Error taxonomy mirrored by CLI exit codes:
//   parse_error -> 2, domain_error -> 3, resource_error -> 4, theorem_error -> 5.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& m) : std::runtime_error(m) {}
};

// A stored claim failed re-verification, or a guaranteed construction could
// not be completed: either the input is tampered or an invariant is broken.
struct theorem_error : std::runtime_error {
    explicit theorem_error(const std::string& m) : std::runtime_error(m) {}
};

} // namespace raag
