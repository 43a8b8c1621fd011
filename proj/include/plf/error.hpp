#pragma once

#include <stdexcept>
#include <string>

namespace plf {

// Malformed input, unknown ids, rank mismatches. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A derived object (e.g. a dualized coproduct table) failed its own axioms.
class ConstructionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace plf
