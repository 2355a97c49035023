/* Copyright 2026 The credal-bounds Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace credal::format {

/// Truncates (toward zero) to 5 decimal places. Table cells use this, not
/// rounding, so emitted values agree with the reference result tables.
inline double trunc5(double v) { return std::trunc(v * 1e5) / 1e5; }

/// Fixed 5-decimal rendering of trunc5(v), integer arithmetic after scaling.
inline std::string fixed5(double v) {
    long long scaled = static_cast<long long>(std::trunc(v * 1e5));
    long long mag = scaled < 0 ? -scaled : scaled;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%lld.%05lld", scaled < 0 ? "-" : "", mag / 100000,
                  mag % 100000);
    return buf;
}

/// FNV-1a 64-bit, used for config audit hashes.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace credal::format
