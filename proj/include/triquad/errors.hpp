#pragma once

#include <stdexcept>

namespace triquad {

// A configured search or enumeration cap was hit; the answer is unknown,
// not negative.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace triquad
