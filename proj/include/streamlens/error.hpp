#ifndef STREAMLENS_ERROR_HPP
#define STREAMLENS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace streamlens {

/// Raised for invalid inputs and degenerate data. The message is meant for
/// end users and carries row/column context where there is one.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace streamlens

#endif
