#include "pauli/errors.hpp"

namespace pauli {

DivergenceError::DivergenceError(std::size_t step, const std::string& what)
    : std::runtime_error(what), step_(step) {}

}  // namespace pauli
