#pragma once

#include <stdexcept>
#include <string>

namespace tssdn {

/// A violated model invariant: the simulation itself is wrong, not its input.
class ModelError : public std::logic_error {
 public:
  explicit ModelError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tssdn
