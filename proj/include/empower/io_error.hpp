#pragma once

#include <stdexcept>

namespace empower {

/// File-system failures (open, read, write) with the offending path in what().
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace empower
