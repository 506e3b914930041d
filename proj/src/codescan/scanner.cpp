// SPDX-License-Identifier: Apache-2.0
#include "licensechain/codescan/scanner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "licensechain/codescan/zip_archive.hpp"
#include "licensechain/crypto/hex.hpp"
#include "licensechain/crypto/sha256.hpp"
#include "licensechain/error.hpp"

namespace licensechain::codescan {

namespace fs = std::filesystem;

namespace {

void check_file_count(std::size_t count, const ScanLimits& limits) {
  if (count > limits.max_files) {
    throw Error(Errc::resource_limit,
                "project has more than " + std::to_string(limits.max_files) + " files");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read '" + path.string() + "'");
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw Error(Errc::io, "error reading '" + path.string() + "'");
  return out.str();
}

}  // namespace

ProjectScan scan_sources(std::vector<SourceFile> files, const Extractor& extractor,
                         const ScanLimits& limits) {
  check_file_count(files.size(), limits);
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });

  ProjectScan scan;
  std::uint64_t total = 0;
  for (const auto& file : files) {
    if (file.content.size() > limits.max_file_bytes) {
      throw Error(Errc::resource_limit, "file '" + file.path + "' exceeds the per-file size limit");
    }
    total += file.content.size();
    if (total > limits.max_total_bytes) {
      throw Error(Errc::resource_limit, "project exceeds the total size limit");
    }
    const auto language = extractor.language_for(file.path);
    if (!language) {
      ++scan.files_skipped;
      continue;
    }
    ++scan.files_scanned;
    ++scan.language_files[*language];
    auto spans = extractor.extract(file.content, *language, file.path);
    std::move(spans.begin(), spans.end(), std::back_inserter(scan.spans));
  }

  // Paths are unique, so (path, offset) order is the file order above.
  std::vector<std::string> normalized;
  normalized.reserve(scan.spans.size());
  for (const auto& span : scan.spans) normalized.push_back(normalize_line_endings(span.matched_text));
  std::vector<std::string_view> views(normalized.begin(), normalized.end());
  std::vector<crypto::Digest> digests(views.size());
  crypto::sha256_many(views, digests);

  scan.span_hashes.reserve(digests.size());
  for (const auto& d : digests) scan.span_hashes.push_back(FunctionHash::from_hex(crypto::to_hex(d)));
  scan.hashes = scan.span_hashes;
  std::sort(scan.hashes.begin(), scan.hashes.end());
  scan.hashes.erase(std::unique(scan.hashes.begin(), scan.hashes.end()), scan.hashes.end());
  return scan;
}

ProjectScan scan_archive(std::string_view zip_bytes, const Extractor& extractor, const ScanLimits& limits) {
  const ZipLimits zip_limits{limits.max_files, limits.max_file_bytes, limits.max_total_bytes};
  std::vector<SourceFile> files;
  for (auto& entry : read_zip(zip_bytes, zip_limits)) {
    files.push_back(SourceFile{std::move(entry.path), std::move(entry.data)});
  }
  return scan_sources(std::move(files), extractor, limits);
}

ProjectScan scan_project(const fs::path& dir_or_zip, const Extractor& extractor, const ScanLimits& limits) {
  std::error_code ec;
  const auto status = fs::status(dir_or_zip, ec);
  if (ec || !fs::exists(status)) throw Error(Errc::io, "cannot access '" + dir_or_zip.string() + "'");

  if (fs::is_regular_file(status)) {
    if (fs::file_size(dir_or_zip) > limits.max_total_bytes) {
      throw Error(Errc::resource_limit, "archive exceeds the total size limit");
    }
    return scan_archive(read_file(dir_or_zip), extractor, limits);
  }
  if (!fs::is_directory(status)) {
    throw Error(Errc::io, "'" + dir_or_zip.string() + "' is neither a directory nor a ZIP file");
  }

  std::vector<SourceFile> files;
  std::size_t symlinks = 0;
  fs::recursive_directory_iterator it(dir_or_zip, fs::directory_options::none, ec);
  if (ec) throw Error(Errc::io, "cannot list '" + dir_or_zip.string() + "': " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw Error(Errc::io, "cannot list '" + dir_or_zip.string() + "': " + ec.message());
    const auto entry_status = it->symlink_status();
    if (fs::is_symlink(entry_status)) {
      ++symlinks;
      continue;
    }
    if (!fs::is_regular_file(entry_status)) continue;
    check_file_count(files.size() + symlinks + 1, limits);
    if (it->file_size() > limits.max_file_bytes) {
      throw Error(Errc::resource_limit, "file '" + it->path().string() + "' exceeds the per-file size limit");
    }
    files.push_back(SourceFile{fs::relative(it->path(), dir_or_zip).generic_string(), read_file(it->path())});
  }
  ProjectScan scan = scan_sources(std::move(files), extractor, limits);
  scan.files_skipped += symlinks;
  return scan;
}

}  // namespace licensechain::codescan
