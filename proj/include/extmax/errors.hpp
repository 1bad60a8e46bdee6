#pragma once

#include <stdexcept>
#include <string>

namespace extmax {

/// A search or enumeration would exceed its configured size guard, or a
/// candidate pool is too small to hold a complete root assignment.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace extmax
