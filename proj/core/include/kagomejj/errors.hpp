#pragma once

#include <stdexcept>
#include <string>

namespace kagomejj {

/// Requested computation exceeds what the chosen engine can handle
/// (e.g. exact enumeration past the 2^N state-space bound). Carries a
/// remediation hint so the CLI can point at the right alternative.
class CapabilityError : public std::runtime_error {
public:
    CapabilityError(const std::string& what, std::string hint)
        : std::runtime_error(what), hint_(std::move(hint)) {}

    const std::string& hint() const noexcept { return hint_; }

private:
    std::string hint_;
};

} // namespace kagomejj
