#pragma once

#include <stdexcept>
#include <string>

namespace mpx {

/// Base of every library error. `module()` names the subsystem that raised
/// it (graph-core, data-io, metrics, perturb, synthgen, experiment) so the
/// CLI can report provenance.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class GraphError : public Error {
 public:
  explicit GraphError(const std::string& message) : Error("graph-core", message) {}
};

}  // namespace mpx
