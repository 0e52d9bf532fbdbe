#ifndef PQC_JSON_UTIL_HPP
#define PQC_JSON_UTIL_HPP

#include <cstdio>
#include <cstdlib>

namespace pqc {

/// Round to 12 significant decimal digits (the file-format precision) so
/// serialized numbers come out as stable decimals rather than 17-digit dumps.
inline double round_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

} // namespace pqc

#endif
