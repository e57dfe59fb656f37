#ifndef BREGMAN_ERRORS_HPP
#define BREGMAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bregman {

// All library failures derive from std::runtime_error; the concrete type
// identifies the failure class.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Margin outside the domain of the loss gradient (m >= 2|c_alpha|).
struct GradDomainError : DomainError {
  using DomainError::DomainError;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedAlpha : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidScale : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LabelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidPlan : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotRescaled : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SelectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingCellError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NameCollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bregman

#endif
