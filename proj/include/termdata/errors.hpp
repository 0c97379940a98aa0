#ifndef TERMDATA_ERRORS_HPP
#define TERMDATA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace termdata {

// Violation of an input contract (bad file, mismatched counts, malformed
// row). The CLI maps this to exit code 2; everything else exits 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace termdata

#endif  // TERMDATA_ERRORS_HPP
