#pragma once

#include <stdexcept>
#include <string>

namespace wgbh {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (mesh files, config values).
struct ParseError : Error {
  using Error::Error;
};

/// Structurally invalid mesh: inverted or duplicate triangles, edges shared
/// by more than two triangles, hanging nodes, broken Euler relation.
struct TopologyError : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

/// Factorization failure or residual above the contract threshold.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace wgbh
