#ifndef WFT_ERROR_HPP
#define WFT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wft {

// Precondition/domain violations: caller bugs.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Mesh construction failed (gap bounds unattainable at this level).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment configuration or input file.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed (taxonomy bug, bound violation, event cascade
// overflow). Carries a state dump when the engine raised it.
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace wft

#endif
