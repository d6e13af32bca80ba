#pragma once

#include <stdexcept>
#include <string>

namespace orbitzeta {

// Failure categories surfaced through the CLI exit code.
enum class errc {
    invalid_algebra = 1,
    not_perfect = 2,
    resource_cap = 3,
    hypothesis_violation = 4,
};

class spec_error : public std::runtime_error {
public:
    spec_error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Two independent derivations disagreeing is a bug, not a bad input.
[[noreturn]] inline void internal_check_failed(const std::string& what) {
    throw std::logic_error("internal consistency check failed: " + what);
}

} // namespace orbitzeta
