#pragma once

#include <stdexcept>
#include <string>

namespace extlab {

// Shape or basis mismatch between operands.
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// A perturbation whose range/weight functions do not lie in the required kernels.
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(const std::string& what, int function_index)
        : std::runtime_error(what), index(function_index) {}
    int index;
};

// An operation asked for a closed form that the operand does not carry.
class UnsupportedRepresentationError : public std::runtime_error {
public:
    explicit UnsupportedRepresentationError(const std::string& what) : std::runtime_error(what) {}
};

// Breakdown inside a dense factorization or root search.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace extlab
