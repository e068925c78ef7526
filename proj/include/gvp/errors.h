#pragma once

#include <stdexcept>
#include <string>

namespace gvp {

// Invalid parameters or violated preconditions (CLI exit code 2).
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Kernel rejected by the K1 exponent conditions (CLI exit code 3).
struct admissibility_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Series/quadrature/solver breakdown (CLI exit code 4).
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct convergence_error : numerical_error {
  using numerical_error::numerical_error;
};

}  // namespace gvp
