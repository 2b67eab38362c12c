#pragma once

#include <stdexcept>
#include <string>

namespace qamnet {

// Operands disagree on the number of neurons/qubits.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An exact (dense) method was asked for more qubits than it supports.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qamnet
