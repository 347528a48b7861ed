#pragma once

#include <stdexcept>
#include <string>

namespace ssred {

/// Input outside the range the implemented theorems cover (p = 2, bad weight,
/// or a normalization step whose unit hypothesis is not certified).
class OutOfRangeError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class UnsupportedBasisError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The descent was asked to run with uncertified hypotheses and no override.
class DescentRefusedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ssred
