// SPDX-License-Identifier: Apache-2.0
#include "licensechain/registry/wallet_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "licensechain/error.hpp"

namespace licensechain::registry {

namespace {

using json = nlohmann::json;

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Streams the document, validating a flat object of string -> address.
class WalletSax : public nlohmann::json_sax<json> {
 public:
  WalletSax(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  std::map<std::string, contracts::WalletAddress> entries;
  std::string error;

  bool null() override { return value_error("null"); }
  bool boolean(bool) override { return value_error("a boolean"); }
  bool number_integer(number_integer_t) override { return value_error("a number"); }
  bool number_unsigned(number_unsigned_t) override { return value_error("a number"); }
  bool number_float(number_float_t, const string_t&) override { return value_error("a number"); }
  bool binary(binary_t&) override { return value_error("binary data"); }
  bool start_array(std::size_t) override { return value_error("an array"); }
  bool end_array() override { return true; }

  bool start_object(std::size_t) override {
    if (depth_++ != 0) return value_error("a nested object");
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }

  bool key(string_t& k) override {
    const std::string quoted = json(k).dump();
    const std::size_t pos = text_.find(quoted, cursor_);
    if (pos != std::string_view::npos) {
      key_line_ = line_at(text_, pos);
      cursor_ = pos + quoted.size();
    }
    if (k.empty()) return fail(key_line_, "empty username");
    if (entries.count(k)) return fail(key_line_, "duplicate username '" + k + "'");
    key_ = k;
    return true;
  }

  bool string(string_t& value) override {
    if (depth_ != 1) return value_error("a bare string");
    if (!contracts::WalletAddress::is_valid(value)) {
      return fail(key_line_, "malformed wallet address '" + value + "' for '" + key_ + "'");
    }
    entries.emplace(key_, contracts::WalletAddress::parse(value));
    return true;
  }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    return fail(line_at(text_, position), std::string("parse error: ") + ex.what());
  }

 private:
  bool value_error(std::string_view what) {
    if (depth_ == 0) return fail(1, "top level must be an object mapping usernames to addresses");
    return fail(key_line_, "value for '" + key_ + "' is " + std::string(what) + ", expected an address string");
  }
  bool fail(std::size_t line, const std::string& what) {
    error = std::string(source_) + ":" + std::to_string(line) + ": " + what;
    return false;
  }

  std::string_view text_;
  std::string_view source_;
  std::size_t cursor_ = 0;
  std::size_t key_line_ = 1;
  std::string key_;
  int depth_ = 0;
};

}  // namespace

WalletDirectory WalletDirectory::parse(std::string_view text, std::string_view source) {
  WalletSax sax(text, source);
  const bool ok = json::sax_parse(text, &sax);
  if (!ok || !sax.error.empty()) {
    throw Error(Errc::config, sax.error.empty() ? std::string(source) + ": invalid wallet config" : sax.error);
  }
  WalletDirectory dir;
  dir.entries_ = std::move(sax.entries);
  return dir;
}

WalletDirectory WalletDirectory::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read wallet config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.string());
}

std::optional<contracts::WalletAddress> WalletDirectory::find(const std::string& username) const {
  const auto it = entries_.find(username);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> WalletDirectory::username_for(const contracts::WalletAddress& wallet) const {
  for (const auto& [name, address] : entries_) {
    if (address == wallet) return name;
  }
  return std::nullopt;
}

std::map<std::string, contracts::WalletAddress> load_wallet_config(const std::filesystem::path& path) {
  return WalletDirectory::load(path).entries();
}

std::filesystem::path resolve_wallet_config_path(const std::optional<std::filesystem::path>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kWalletsEnvVar); env && *env) return env;
  throw Error(Errc::config, std::string("no wallet config given (use --wallets or set ") + kWalletsEnvVar + ")");
}

}  // namespace licensechain::registry
