// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "licensechain/codescan/function_hash.hpp"

namespace licensechain::codescan {

enum class Language { c, java, python };

inline constexpr std::array<Language, 3> kLanguages = {Language::c, Language::java, Language::python};

/// "C", "Java", "Python".
std::string_view to_string(Language language) noexcept;
/// Case-insensitive; throws Error(unsupported_language).
Language parse_language(std::string_view name);

struct FunctionSpan {
  std::string file_path;  // relative, forward slashes
  Language language = Language::c;
  std::string name;
  std::string matched_text;
  std::size_t offset = 0;  // byte offset of matched_text in the LF-normalized source

  friend bool operator==(const FunctionSpan&, const FunctionSpan&) = default;
};

/// CRLF and lone CR become LF.
std::string normalize_line_endings(std::string_view text);

/// Regex-driven function extractor. One pattern per language, loaded from
/// the JSON files under data/patterns (fields: language, extensions,
/// pattern, name_group, text_group). Patterns use Perl syntax and are
/// applied with global (non-overlapping, left-to-right) matching.
class Extractor {
 public:
  /// Patterns shipped with the library.
  static const Extractor& shipped();
  /// Reads c.json, java.json and python.json from `patterns_dir`.
  static Extractor load(const std::filesystem::path& patterns_dir);
  /// Builds from pattern documents; every language must be covered once.
  static Extractor from_documents(const std::vector<std::string>& json_documents);

  Extractor(Extractor&&) noexcept;
  Extractor& operator=(Extractor&&) noexcept;
  ~Extractor();

  /// Spans in source order. `source` is LF-normalized first.
  std::vector<FunctionSpan> extract(std::string_view source, Language language,
                                    std::string_view file_path = {}) const;

  /// Language for a file name by extension, if any pattern claims it.
  std::optional<Language> language_for(const std::filesystem::path& file) const;

  const std::string& pattern(Language language) const;

 private:
  struct Impl;
  explicit Extractor(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

/// Shipped extractor.
std::vector<FunctionSpan> extract_functions(std::string_view source_text, Language language);
/// As above with a language name; throws Error(unsupported_language).
std::vector<FunctionSpan> extract_functions(std::string_view source_text, std::string_view language);

/// SHA-256 of the LF-normalized matched_text.
FunctionHash hash_function(const FunctionSpan& span);

}  // namespace licensechain::codescan
