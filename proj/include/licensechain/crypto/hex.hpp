// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace licensechain::crypto {

std::string to_hex(std::span<const std::uint8_t> bytes);

/// True iff `text` is exactly `length` characters of [0-9a-f].
bool is_lower_hex(std::string_view text, std::size_t length) noexcept;

}  // namespace licensechain::crypto
