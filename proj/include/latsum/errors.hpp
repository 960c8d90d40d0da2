#ifndef LATSUM_ERRORS_HPP
#define LATSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latsum {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI's JSON error field.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct InvalidLattice : Error {
  explicit InvalidLattice(const std::string& w) : Error("invalid_lattice", w) {}
};
struct PoleError : Error {
  explicit PoleError(const std::string& w) : Error("pole", w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct DivergenceError : Error {
  explicit DivergenceError(const std::string& w) : Error("divergence", w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error("non_convergence", w) {}
};
struct OrderExceeded : Error {
  explicit OrderExceeded(const std::string& w) : Error("order_exceeded", w) {}
};
struct GuardExceeded : Error {
  explicit GuardExceeded(const std::string& w) : Error("guard_exceeded", w) {}
};
struct NoInteriorMinimum : Error {
  explicit NoInteriorMinimum(const std::string& w) : Error("no_interior_minimum", w) {}
};

}  // namespace latsum

#endif  // LATSUM_ERRORS_HPP
