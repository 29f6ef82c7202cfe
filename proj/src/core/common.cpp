#include "core/common.hpp"

namespace ssou {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::domain: return "domain";
    case errc::no_root: return "no_root";
    case errc::bracket: return "bracket";
    case errc::zero_denominator: return "zero_denominator";
    case errc::truncation: return "truncation";
    case errc::product_divergence: return "product_divergence";
    case errc::quadrature: return "quadrature";
    case errc::non_finite: return "non_finite";
    case errc::branch: return "branch";
    case errc::unsupported: return "unsupported";
    case errc::grid_exhausted: return "grid_exhausted";
    case errc::insufficient_hits: return "insufficient_hits";
    case errc::meaningless: return "meaningless";
    case errc::config: return "config";
  }
  return "unknown";
}

}  // namespace ssou
