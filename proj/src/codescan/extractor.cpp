// SPDX-License-Identifier: Apache-2.0
#include "licensechain/codescan/extractor.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/regex.hpp>
#include <json.hpp>

#include "licensechain/crypto/hex.hpp"
#include "licensechain/crypto/sha256.hpp"
#include "licensechain/embedded_data.hpp"
#include "licensechain/error.hpp"

namespace licensechain::codescan {

namespace {

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

}  // namespace

std::string_view to_string(Language language) noexcept {
  switch (language) {
    case Language::c: return "C";
    case Language::java: return "Java";
    case Language::python: return "Python";
  }
  return "unknown";
}

Language parse_language(std::string_view name) {
  const std::string key = lowercase(name);
  for (auto lang : kLanguages) {
    if (key == lowercase(to_string(lang))) return lang;
  }
  throw Error(Errc::unsupported_language,
              "unsupported language '" + std::string(name) + "'; supported: C, Java, Python");
}

std::string normalize_line_endings(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out += '\n';
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out += text[i];
    }
  }
  return out;
}

struct Extractor::Impl {
  struct Pattern {
    std::string source;
    boost::regex regex;
    int name_group = 1;
    int text_group = 0;
    std::vector<std::string> extensions;
  };
  std::map<Language, Pattern> patterns;
};

Extractor::Extractor(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Extractor::Extractor(Extractor&&) noexcept = default;
Extractor& Extractor::operator=(Extractor&&) noexcept = default;
Extractor::~Extractor() = default;

Extractor Extractor::from_documents(const std::vector<std::string>& json_documents) {
  auto impl = std::make_unique<Impl>();
  for (const auto& text : json_documents) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::config, std::string("pattern file does not parse: ") + e.what());
    }
    try {
      const Language lang = parse_language(doc.at("language").get<std::string>());
      Impl::Pattern p;
      p.source = doc.at("pattern").get<std::string>();
      p.name_group = doc.value("name_group", 1);
      p.text_group = doc.value("text_group", 0);
      for (const auto& ext : doc.at("extensions")) p.extensions.push_back(lowercase(ext.get<std::string>()));
      p.regex = boost::regex(p.source, boost::regex::perl);
      if (p.name_group < 0 || static_cast<std::size_t>(p.name_group) > p.regex.mark_count() ||
          p.text_group < 0 || static_cast<std::size_t>(p.text_group) > p.regex.mark_count()) {
        throw Error(Errc::config, "pattern for " + std::string(to_string(lang)) +
                                      " references a capture group it does not have");
      }
      if (!impl->patterns.emplace(lang, std::move(p)).second) {
        throw Error(Errc::config, "duplicate pattern for " + std::string(to_string(lang)));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::config, std::string("malformed pattern file: ") + e.what());
    } catch (const boost::regex_error& e) {
      throw Error(Errc::config, std::string("pattern does not compile: ") + e.what());
    }
  }
  for (auto lang : kLanguages) {
    if (!impl->patterns.count(lang)) {
      throw Error(Errc::config, "no pattern for " + std::string(to_string(lang)));
    }
  }
  return Extractor(std::move(impl));
}

const Extractor& Extractor::shipped() {
  static const Extractor extractor = [] {
    std::vector<std::string> docs;
    for (const char* name : {"patterns/c.json", "patterns/java.json", "patterns/python.json"}) {
      const auto text = embedded::file(name);
      if (!text) throw Error(Errc::config, std::string("missing shipped pattern ") + name);
      docs.emplace_back(*text);
    }
    return from_documents(docs);
  }();
  return extractor;
}

Extractor Extractor::load(const std::filesystem::path& patterns_dir) {
  std::vector<std::string> docs;
  for (const char* name : {"c.json", "java.json", "python.json"}) {
    std::ifstream in(patterns_dir / name, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot read pattern file '" + (patterns_dir / name).string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    docs.push_back(text.str());
  }
  return from_documents(docs);
}

std::vector<FunctionSpan> Extractor::extract(std::string_view source, Language language,
                                             std::string_view file_path) const {
  const auto& p = impl_->patterns.at(language);
  const std::string text = normalize_line_endings(source);
  std::vector<FunctionSpan> spans;
  try {
    boost::sregex_iterator it(text.begin(), text.end(), p.regex);
    for (; it != boost::sregex_iterator(); ++it) {
      const auto& m = *it;
      FunctionSpan span{
          .file_path = std::string(file_path),
          .language = language,
          .name = m.str(p.name_group),
          .matched_text = m.str(p.text_group),
          .offset = static_cast<std::size_t>(m.position(p.text_group)),
      };
      if (span.name.empty() || span.matched_text.empty()) continue;
      spans.push_back(std::move(span));
    }
  } catch (const std::runtime_error& e) {
    // boost raises when a match exceeds its internal complexity bound.
    throw Error(Errc::resource_limit, "function extraction aborted for '" + std::string(file_path) +
                                          "': " + e.what());
  }
  return spans;
}

std::optional<Language> Extractor::language_for(const std::filesystem::path& file) const {
  const std::string ext = lowercase(file.extension().string());
  if (ext.empty()) return std::nullopt;
  for (const auto& [lang, p] : impl_->patterns) {
    if (std::find(p.extensions.begin(), p.extensions.end(), ext) != p.extensions.end()) return lang;
  }
  return std::nullopt;
}

const std::string& Extractor::pattern(Language language) const {
  return impl_->patterns.at(language).source;
}

std::vector<FunctionSpan> extract_functions(std::string_view source_text, Language language) {
  return Extractor::shipped().extract(source_text, language);
}

std::vector<FunctionSpan> extract_functions(std::string_view source_text, std::string_view language) {
  return extract_functions(source_text, parse_language(language));
}

FunctionHash hash_function(const FunctionSpan& span) {
  return FunctionHash::from_hex(crypto::sha256_hex(normalize_line_endings(span.matched_text)));
}

}  // namespace licensechain::codescan
