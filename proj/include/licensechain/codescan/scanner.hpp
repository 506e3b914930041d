// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "licensechain/codescan/extractor.hpp"
#include "licensechain/codescan/function_hash.hpp"

namespace licensechain::codescan {

struct ScanLimits {
  std::size_t max_files = 10'000;
  std::uint64_t max_file_bytes = 10ull << 20;
  std::uint64_t max_total_bytes = 512ull << 20;
};

struct SourceFile {
  std::string path;  // relative, forward slashes
  std::string content;
};

struct ProjectScan {
  std::vector<FunctionSpan> spans;        // sorted by (file_path, offset)
  std::vector<FunctionHash> span_hashes;  // parallel to spans
  std::vector<FunctionHash> hashes;       // sorted, unique
  std::size_t files_scanned = 0;
  std::size_t files_skipped = 0;
  std::map<Language, std::size_t> language_files;
};

/// Extracts and fingerprints every function in `files`. Files whose
/// extension maps to no language are counted as skipped. The result does not
/// depend on the order of `files`.
ProjectScan scan_sources(std::vector<SourceFile> files, const Extractor& extractor = Extractor::shipped(),
                         const ScanLimits& limits = {});

/// Scans a directory tree or a .zip file. Symlinks are not followed and
/// count as skipped. Throws Error(io) for unreadable input and
/// Error(resource_limit) past the file-count or file-size limits.
ProjectScan scan_project(const std::filesystem::path& dir_or_zip,
                         const Extractor& extractor = Extractor::shipped(), const ScanLimits& limits = {});

/// Scans an in-memory ZIP archive.
ProjectScan scan_archive(std::string_view zip_bytes, const Extractor& extractor = Extractor::shipped(),
                         const ScanLimits& limits = {});

}  // namespace licensechain::codescan
