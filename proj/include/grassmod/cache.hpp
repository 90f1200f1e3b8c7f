#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grassmod/errors.hpp"
#include "grassmod/version.hpp"

namespace grassmod::cache {

// On-disk format, little-endian throughout:
//   magic   "GRSM"                     4 bytes
//   version u32                        (kCacheFormatVersion)
//   kind    u32                        1 = incidence COO, 2 = enumeration
//   key     p,e,n,r0,r1,s  u32 each    (enumeration uses r1 = s = 0)
//   rows, cols  u32                    (enumeration: rows = count, cols = r0*n)
//   count   u64                        number of data records
//   data    incidence: (row u32, col u32) per record, sorted by (row, col)
//           enumeration: cols u32 element codes per record
//   checksum u64                       FNV-1a of every preceding byte

inline constexpr std::uint32_t kKindIncidence = 1;
inline constexpr std::uint32_t kKindEnumeration = 2;

struct CacheKey {
    std::uint32_t kind = 0, p = 0, e = 0, n = 0, r0 = 0, r1 = 0, s = 0;
};

struct CachePayload {
    std::uint32_t rows = 0, cols = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> coo;  // incidence
    std::vector<std::uint32_t> codes;                          // enumeration
};

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

inline bool get_u32(const std::vector<std::uint8_t>& in, std::size_t& pos, std::uint32_t& v) {
    if (pos + 4 > in.size()) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(in[pos + i]) << (8 * i);
    pos += 4;
    return true;
}

inline bool get_u64(const std::vector<std::uint8_t>& in, std::size_t& pos, std::uint64_t& v) {
    if (pos + 8 > in.size()) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(in[pos + i]) << (8 * i);
    pos += 8;
    return true;
}

}  // namespace detail

inline std::vector<std::uint8_t> encode(const CacheKey& key, const CachePayload& payload) {
    std::vector<std::uint8_t> out;
    out.push_back('G');
    out.push_back('R');
    out.push_back('S');
    out.push_back('M');
    detail::put_u32(out, kCacheFormatVersion);
    detail::put_u32(out, key.kind);
    detail::put_u32(out, key.p);
    detail::put_u32(out, key.e);
    detail::put_u32(out, key.n);
    detail::put_u32(out, key.r0);
    detail::put_u32(out, key.r1);
    detail::put_u32(out, key.s);
    detail::put_u32(out, payload.rows);
    detail::put_u32(out, payload.cols);
    if (key.kind == kKindIncidence) {
        detail::put_u64(out, payload.coo.size());
        for (auto [r, c] : payload.coo) {
            detail::put_u32(out, r);
            detail::put_u32(out, c);
        }
    } else {
        detail::put_u64(out, payload.codes.size() / std::max<std::uint32_t>(payload.cols, 1));
        for (auto c : payload.codes) detail::put_u32(out, c);
    }
    detail::put_u64(out, fnv1a64(out.data(), out.size()));
    return out;
}

inline std::optional<CachePayload> decode(const std::vector<std::uint8_t>& in, const CacheKey& want) {
    std::size_t pos = 0;
    if (in.size() < 12 || in[0] != 'G' || in[1] != 'R' || in[2] != 'S' || in[3] != 'M') return std::nullopt;
    pos = 4;
    std::uint32_t version, kind, p, e, n, r0, r1, s, rows, cols;
    std::uint64_t count;
    if (!detail::get_u32(in, pos, version) || version != kCacheFormatVersion) return std::nullopt;
    if (!detail::get_u32(in, pos, kind) || !detail::get_u32(in, pos, p) || !detail::get_u32(in, pos, e) ||
        !detail::get_u32(in, pos, n) || !detail::get_u32(in, pos, r0) || !detail::get_u32(in, pos, r1) ||
        !detail::get_u32(in, pos, s))
        return std::nullopt;
    if (kind != want.kind || p != want.p || e != want.e || n != want.n || r0 != want.r0 ||
        r1 != want.r1 || s != want.s)
        return std::nullopt;
    if (!detail::get_u32(in, pos, rows) || !detail::get_u32(in, pos, cols)) return std::nullopt;
    if (!detail::get_u64(in, pos, count)) return std::nullopt;

    CachePayload payload;
    payload.rows = rows;
    payload.cols = cols;
    if (kind == kKindIncidence) {
        payload.coo.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint32_t r, c;
            if (!detail::get_u32(in, pos, r) || !detail::get_u32(in, pos, c)) return std::nullopt;
            payload.coo.emplace_back(r, c);
        }
    } else {
        payload.codes.reserve(count * cols);
        for (std::uint64_t i = 0; i < count * cols; ++i) {
            std::uint32_t c;
            if (!detail::get_u32(in, pos, c)) return std::nullopt;
            payload.codes.push_back(c);
        }
    }
    std::uint64_t stored;
    std::size_t body_len = pos;
    if (!detail::get_u64(in, pos, stored)) return std::nullopt;
    if (pos != in.size()) return std::nullopt;
    if (stored != fnv1a64(in.data(), body_len)) return std::nullopt;  // treated as a miss
    return payload;
}

inline std::string file_name(const CacheKey& k) {
    std::string kind = k.kind == kKindIncidence ? "eta" : "enum";
    std::string name = kind + "_p" + std::to_string(k.p) + "_e" + std::to_string(k.e) + "_n" +
                       std::to_string(k.n) + "_r" + std::to_string(k.r0);
    if (k.kind == kKindIncidence)
        name += "_r" + std::to_string(k.r1) + "_s" + std::to_string(k.s);
    return name + ".grsm";
}

inline std::filesystem::path path_for(const std::string& dir, const CacheKey& k) {
    return std::filesystem::path(dir) / file_name(k);
}

/// RAII flock on <dir>/.lock; serializes writers while readers stay lock-free.
class WriterLock {
public:
    explicit WriterLock(const std::string& dir) {
        std::filesystem::create_directories(dir);
        path_ = (std::filesystem::path(dir) / ".lock").string();
        fd_ = ::open(path_.c_str(), O_CREAT | O_RDWR, 0644);
        require(fd_ >= 0, Errc::IOFailure, "cannot open lock file " + path_);
        require(::flock(fd_, LOCK_EX) == 0, Errc::IOFailure, "cannot lock " + path_);
    }

    ~WriterLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }

    WriterLock(const WriterLock&) = delete;
    WriterLock& operator=(const WriterLock&) = delete;

private:
    std::string path_;
    int fd_ = -1;
};

/// Atomic publish: write to a unique temp file, fsync, rename into place.
/// Readers concurrently see either the old or the new file, never a torn one.
inline void put(const std::string& dir, const CacheKey& key, const CachePayload& payload) {
    if (dir.empty()) return;
    WriterLock lock(dir);
    auto final_path = path_for(dir, key);
    auto tmp_path = final_path;
    tmp_path += ".tmp" + std::to_string(::getpid());
    auto bytes = encode(key, payload);

    FILE* f = std::fopen(tmp_path.c_str(), "wb");
    require(f != nullptr, Errc::IOFailure, "cannot open " + tmp_path.string());
    std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
    int sync_rc = ::fsync(::fileno(f));
    int close_rc = std::fclose(f);
    if (written != bytes.size() || sync_rc != 0 || close_rc != 0) {
        std::filesystem::remove(tmp_path);
        fail(Errc::IOFailure, "short write to " + tmp_path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp_path, final_path, ec);
    if (ec) {
        std::filesystem::remove(tmp_path);
        fail(Errc::IOFailure, "rename failed: " + ec.message());
    }
}

/// Returns the payload, or nullopt on absence, wrong key, or checksum
/// mismatch (corruption is a miss; callers rebuild and overwrite).
inline std::optional<CachePayload> get(const std::string& dir, const CacheKey& key) {
    if (dir.empty()) return std::nullopt;
    auto path = path_for(dir, key);
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return std::nullopt;
    std::vector<std::uint8_t> bytes;
    std::uint8_t buf[1 << 14];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) bytes.insert(bytes.end(), buf, buf + got);
    std::fclose(f);
    return decode(bytes, key);
}

struct EntryInfo {
    std::string name;
    std::uintmax_t size = 0;
    bool valid = false;
};

inline std::vector<EntryInfo> stat_entries(const std::string& dir) {
    std::vector<EntryInfo> out;
    std::error_code ec;
    for (auto& de : std::filesystem::directory_iterator(dir, ec)) {
        if (de.path().extension() != ".grsm") continue;
        EntryInfo info;
        info.name = de.path().filename().string();
        info.size = de.file_size(ec);
        FILE* f = std::fopen(de.path().c_str(), "rb");
        if (f) {
            std::vector<std::uint8_t> bytes;
            std::uint8_t buf[1 << 14];
            std::size_t got;
            while ((got = std::fread(buf, 1, sizeof buf, f)) > 0)
                bytes.insert(bytes.end(), buf, buf + got);
            std::fclose(f);
            if (bytes.size() > 8) {
                std::uint64_t stored = 0;
                for (int i = 0; i < 8; ++i)
                    stored |= std::uint64_t(bytes[bytes.size() - 8 + i]) << (8 * i);
                info.valid = stored == fnv1a64(bytes.data(), bytes.size() - 8);
            }
        }
        out.push_back(std::move(info));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

/// Removes corrupt entries (and every entry with `all`); returns count removed.
inline std::size_t gc(const std::string& dir, bool all = false) {
    std::size_t removed = 0;
    WriterLock lock(dir);
    for (const auto& info : stat_entries(dir)) {
        if (all || !info.valid) {
            std::filesystem::remove(std::filesystem::path(dir) / info.name);
            ++removed;
        }
    }
    return removed;
}

}  // namespace grassmod::cache
