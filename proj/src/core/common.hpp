#pragma once

#include <stdexcept>
#include <string>

namespace ssou {

// Failure categories shared between the C++ core and the C API status codes.
enum class errc {
  domain,
  no_root,
  bracket,
  zero_denominator,
  truncation,
  product_divergence,
  quadrature,
  non_finite,
  branch,
  unsupported,
  grid_exhausted,
  insufficient_hits,
  meaningless,
  config,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

const char* errc_name(errc code) noexcept;

// Compensated accumulator. Used where long sums of small corrections feed
// tolerances near machine precision (series tails, infinite products).
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace ssou
