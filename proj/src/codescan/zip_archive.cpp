// SPDX-License-Identifier: Apache-2.0
#include "licensechain/codescan/zip_archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "licensechain/error.hpp"

namespace licensechain::codescan {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::uint16_t kMethodStored = 0;
constexpr std::uint16_t kMethodDeflate = 8;
constexpr std::uint16_t kDosDate1980 = (0 << 9) | (1 << 5) | 1;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(Errc::scan, "malformed ZIP archive: " + what);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint16_t u16(std::size_t at) const {
    need(at, 2);
    return static_cast<std::uint16_t>(bytes_[at] | (bytes_[at + 1] << 8));
  }
  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    return std::uint32_t{bytes_[at]} | (std::uint32_t{bytes_[at + 1]} << 8) |
           (std::uint32_t{bytes_[at + 2]} << 16) | (std::uint32_t{bytes_[at + 3]} << 24);
  }
  std::span<const std::uint8_t> slice(std::size_t at, std::size_t n) const {
    need(at, n);
    return bytes_.subspan(at, n);
  }
  std::size_t size() const { return bytes_.size(); }

 private:
  void need(std::size_t at, std::size_t n) const {
    if (at > bytes_.size() || n > bytes_.size() - at) malformed("truncated record");
  }
  std::span<const std::uint8_t> bytes_;
};

std::string sanitize_path(std::string name) {
  std::replace(name.begin(), name.end(), '\\', '/');
  if (name.empty() || name.front() == '/' || name.find(':') != std::string::npos) {
    malformed("unsafe entry path '" + name + "'");
  }
  std::size_t start = 0;
  while (start <= name.size()) {
    const std::size_t end = std::min(name.find('/', start), name.size());
    if (name.compare(start, end - start, "..") == 0 && end - start == 2) {
      malformed("entry path escapes the archive: '" + name + "'");
    }
    start = end + 1;
  }
  return name;
}

std::string inflate_raw(std::span<const std::uint8_t> in, std::uint64_t expected, std::uint64_t cap) {
  std::string out;
  out.resize(static_cast<std::size_t>(std::min<std::uint64_t>(expected, cap)));
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) malformed("inflate init failed");
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  std::size_t produced = 0;
  int rc = Z_OK;
  char overflow[1];
  while (rc != Z_STREAM_END) {
    if (produced < out.size()) {
      zs.next_out = reinterpret_cast<Bytef*>(out.data() + produced);
      zs.avail_out = static_cast<uInt>(out.size() - produced);
    } else {
      // Probe for data beyond the declared size.
      zs.next_out = reinterpret_cast<Bytef*>(overflow);
      zs.avail_out = 1;
    }
    const std::size_t before = zs.total_out;
    rc = inflate(&zs, Z_NO_FLUSH);
    produced += zs.total_out - before;
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      malformed("corrupt deflate stream");
    }
    if (produced > out.size()) {
      inflateEnd(&zs);
      if (produced > cap) throw Error(Errc::resource_limit, "archive entry exceeds the per-file size limit");
      malformed("entry inflates beyond its declared size");
    }
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      malformed("truncated deflate stream");
    }
  }
  inflateEnd(&zs);
  if (produced != expected) malformed("entry size does not match its header");
  return out;
}

void put16(std::string& out, std::uint16_t v) {
  out += static_cast<char>(v & 0xff);
  out += static_cast<char>(v >> 8);
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

std::string deflate_raw(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(Errc::io, "deflate init failed");
  }
  std::string out;
  out.resize(deflateBound(&zs, static_cast<uLong>(data.size())));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(Errc::io, "deflate failed");
  return out;
}

}  // namespace

bool looks_like_zip(std::span<const std::uint8_t> bytes) noexcept {
  if (bytes.size() < 4) return false;
  const std::uint32_t sig = std::uint32_t{bytes[0]} | (std::uint32_t{bytes[1]} << 8) |
                            (std::uint32_t{bytes[2]} << 16) | (std::uint32_t{bytes[3]} << 24);
  return sig == kLocalHeaderSig || sig == kEndOfCentralDirSig;
}

std::vector<ZipEntry> read_zip(std::string_view bytes, const ZipLimits& limits) {
  return read_zip(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(bytes.data()),
                                                bytes.size()),
                  limits);
}

std::vector<ZipEntry> read_zip(std::span<const std::uint8_t> bytes, const ZipLimits& limits) {
  const Reader r(bytes);
  if (r.size() < 22) malformed("too short");

  std::size_t eocd = std::string::npos;
  const std::size_t lowest = r.size() >= 22 + 0xffff ? r.size() - 22 - 0xffff : 0;
  for (std::size_t at = r.size() - 22 + 1; at-- > lowest;) {
    if (r.u32(at) == kEndOfCentralDirSig) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string::npos) malformed("no end-of-central-directory record");

  const std::uint16_t entry_count = r.u16(eocd + 10);
  const std::uint32_t cd_offset = r.u32(eocd + 16);
  if (r.u16(eocd + 4) != 0 || r.u16(eocd + 6) != 0) malformed("multi-disk archives are unsupported");
  if (cd_offset == 0xffffffffu || entry_count == 0xffff) malformed("ZIP64 archives are unsupported");
  if (entry_count > limits.max_entries) {
    throw Error(Errc::resource_limit, "archive has " + std::to_string(entry_count) +
                                          " entries; limit is " + std::to_string(limits.max_entries));
  }

  std::vector<ZipEntry> entries;
  std::uint64_t total = 0;
  std::size_t at = cd_offset;
  for (std::uint16_t i = 0; i < entry_count; ++i) {
    if (r.u32(at) != kCentralHeaderSig) malformed("bad central directory header");
    const std::uint16_t flags = r.u16(at + 8);
    const std::uint16_t method = r.u16(at + 10);
    const std::uint32_t crc = r.u32(at + 16);
    const std::uint32_t csize = r.u32(at + 20);
    const std::uint32_t usize = r.u32(at + 24);
    const std::uint16_t name_len = r.u16(at + 28);
    const std::uint16_t extra_len = r.u16(at + 30);
    const std::uint16_t comment_len = r.u16(at + 32);
    const std::uint32_t local = r.u32(at + 42);
    const auto name_bytes = r.slice(at + 46, name_len);
    std::string name(name_bytes.begin(), name_bytes.end());
    at += 46u + name_len + extra_len + comment_len;

    if (flags & 0x1) malformed("encrypted entries are unsupported");
    if (csize == 0xffffffffu || usize == 0xffffffffu || local == 0xffffffffu) {
      malformed("ZIP64 entries are unsupported");
    }
    if (!name.empty() && name.back() == '/') continue;
    name = sanitize_path(std::move(name));

    if (usize > limits.max_entry_bytes) {
      throw Error(Errc::resource_limit, "archive entry '" + name + "' exceeds the per-file size limit");
    }
    total += usize;
    if (total > limits.max_total_bytes) {
      throw Error(Errc::resource_limit, "archive exceeds the total uncompressed size limit");
    }

    if (r.u32(local) != kLocalHeaderSig) malformed("bad local header for '" + name + "'");
    const std::size_t data_at = local + 30u + r.u16(local + 26) + r.u16(local + 28);
    const auto compressed = r.slice(data_at, csize);

    std::string data;
    if (method == kMethodStored) {
      if (csize != usize) malformed("stored entry sizes disagree");
      data.assign(compressed.begin(), compressed.end());
    } else if (method == kMethodDeflate) {
      data = inflate_raw(compressed, usize, limits.max_entry_bytes);
    } else {
      malformed("compression method " + std::to_string(method) + " is unsupported");
    }
    const auto actual_crc =
        crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
    if (actual_crc != crc) malformed("CRC mismatch for '" + name + "'");
    entries.push_back(ZipEntry{std::move(name), std::move(data)});
  }
  return entries;
}

std::string write_zip(const std::vector<ZipEntry>& entries) {
  std::string out;
  std::string central;
  for (const auto& entry : entries) {
    const std::string packed = deflate_raw(entry.data);
    const auto crc =
        crc32(0L, reinterpret_cast<const Bytef*>(entry.data.data()), static_cast<uInt>(entry.data.size()));
    const auto offset = static_cast<std::uint32_t>(out.size());

    put32(out, kLocalHeaderSig);
    put16(out, 20);
    put16(out, 0x0800);  // UTF-8 names
    put16(out, kMethodDeflate);
    put16(out, 0);
    put16(out, kDosDate1980);
    put32(out, static_cast<std::uint32_t>(crc));
    put32(out, static_cast<std::uint32_t>(packed.size()));
    put32(out, static_cast<std::uint32_t>(entry.data.size()));
    put16(out, static_cast<std::uint16_t>(entry.path.size()));
    put16(out, 0);
    out += entry.path;
    out += packed;

    put32(central, kCentralHeaderSig);
    put16(central, 20);
    put16(central, 20);
    put16(central, 0x0800);
    put16(central, kMethodDeflate);
    put16(central, 0);
    put16(central, kDosDate1980);
    put32(central, static_cast<std::uint32_t>(crc));
    put32(central, static_cast<std::uint32_t>(packed.size()));
    put32(central, static_cast<std::uint32_t>(entry.data.size()));
    put16(central, static_cast<std::uint16_t>(entry.path.size()));
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put32(central, 0);
    put32(central, offset);
    central += entry.path;
  }
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, kEndOfCentralDirSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

}  // namespace licensechain::codescan
