// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace vgb {

/// Library version, also used as the reference-cache invalidation tag.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace vgb
