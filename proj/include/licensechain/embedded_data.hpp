// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

namespace licensechain::embedded {

/// Contents of a shipped data file, keyed by its path relative to data/.
std::optional<std::string_view> file(std::string_view relative_path);

}  // namespace licensechain::embedded
