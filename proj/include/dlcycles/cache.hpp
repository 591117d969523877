#pragma once

// Line-delimited JSON cache of PrimeRecords.
//
//   line 1: {"format":"dlcycles-cache","version":1}
//   line k: one PrimeRecord
//
// Each record goes out in a single write(2) on an O_APPEND descriptor, so an
// interrupted sweep leaves at worst one unterminated last line, which is
// dropped on the next open.

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>

#include "dlcycles/errors.hpp"
#include "dlcycles/records.hpp"

namespace dlc {

inline constexpr const char* kCacheFormat = "dlcycles-cache";

inline nlohmann::json grid_to_json(const Grid& g) {
  auto j = nlohmann::json::array();
  for (const auto& row : g) j.push_back(row);
  return j;
}

inline Grid grid_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw CacheError("grid must be a 4x4 array");
  Grid g{};
  for (int r = 0; r < 4; ++r) {
    if (!j[r].is_array() || j[r].size() != 4) throw CacheError("grid must be a 4x4 array");
    for (int c = 0; c < 4; ++c) g[r][c] = j[r][c].get<u64>();
  }
  return g;
}

inline nlohmann::json to_json(const PrimeRecord& r) {
  nlohmann::json j;
  j["version"] = r.version;
  j["p"] = r.p;
  j["fp"] = grid_to_json(r.fp);
  j["ha_trivial"] = grid_to_json(r.ha_trivial);
  j["ha_nontrivial"] = grid_to_json(r.ha_nontrivial);
  j["tc_trivial"] = grid_to_json(r.tc_trivial);
  j["tc_nontrivial"] = grid_to_json(r.tc_nontrivial);
  j["ord"] = {{"h_rp_trivial", r.ord.h_rp_trivial},
              {"h_rp_nontrivial", r.ord.h_rp_nontrivial},
              {"h_any_trivial", r.ord.h_any_trivial},
              {"h_any_nontrivial", r.ord.h_any_nontrivial}};
  auto spec = nlohmann::json::array();
  for (const auto& s : r.spectrum) spec.push_back({s.e, s.t_e});
  j["spectrum"] = spec;
  j["E"] = r.E;
  j["g"] = {{"g_pr_h_any", r.g.g_pr_h_any}, {"g_any_h_any", r.g.g_any_h_any}};
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

inline PrimeRecord record_from_json(const nlohmann::json& j) {
  PrimeRecord r;
  r.version = j.at("version").get<int>();
  if (r.version != kRecordVersion)
    throw CacheVersionMismatch("record version " + std::to_string(r.version) + ", expected " +
                               std::to_string(kRecordVersion));
  r.p = j.at("p").get<u64>();
  r.fp = grid_from_json(j.at("fp"));
  r.ha_trivial = grid_from_json(j.at("ha_trivial"));
  r.ha_nontrivial = grid_from_json(j.at("ha_nontrivial"));
  r.tc_trivial = grid_from_json(j.at("tc_trivial"));
  r.tc_nontrivial = grid_from_json(j.at("tc_nontrivial"));
  const auto& o = j.at("ord");
  r.ord = {o.at("h_rp_trivial").get<u64>(), o.at("h_rp_nontrivial").get<u64>(),
           o.at("h_any_trivial").get<u64>(), o.at("h_any_nontrivial").get<u64>()};
  for (const auto& s : j.at("spectrum")) {
    const u64 e = s.at(0).get<u64>(), t = s.at(1).get<u64>();
    r.spectrum.push_back({e, t, e * t});
  }
  r.E = j.at("E").get<u64>();
  r.g = {j.at("g").at("g_pr_h_any").get<u64>(), j.at("g").at("g_any_h_any").get<u64>()};
  r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

class Cache {
 public:
  /// Opens (creating if absent) and loads every record.
  explicit Cache(std::filesystem::path path) : path_(std::move(path)) {
    if (!std::filesystem::exists(path_)) {
      write_all(header_line());
      return;
    }
    load();
  }

  const std::filesystem::path& path() const { return path_; }
  const std::map<u64, PrimeRecord>& records() const { return records_; }
  bool contains(u64 p) const { return records_.count(p) != 0; }
  const PrimeRecord& at(u64 p) const { return records_.at(p); }
  /// True when an unterminated last line was found and dropped on open.
  bool recovered_tail() const { return recovered_tail_; }

  void append(const PrimeRecord& r) {
    const std::string line = to_json(r).dump() + "\n";
    const int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND);
    if (fd < 0) throw CacheError(path_.string() + ": " + std::strerror(errno));
    std::size_t done = 0;
    while (done < line.size()) {
      const ssize_t w = ::write(fd, line.data() + done, line.size() - done);
      if (w < 0) {
        if (errno == EINTR) continue;
        const std::string msg = std::strerror(errno);
        ::close(fd);
        throw CacheError(path_.string() + ": " + msg);
      }
      done += static_cast<std::size_t>(w);
    }
    ::close(fd);
    records_[r.p] = r;
  }

 private:
  static std::string header_line() {
    return nlohmann::json{{"format", kCacheFormat}, {"version", kRecordVersion}}.dump() + "\n";
  }

  void write_all(const std::string& text) {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError(path_.string() + ": cannot create");
    out << text;
  }

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw CacheError(path_.string() + ":" + std::to_string(line) + ": " + msg);
  }

  void load() {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw CacheError(path_.string() + ": cannot open");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0, line_no = 0, good_end = 0;
    while (pos < text.size()) {
      const std::size_t nl = text.find('\n', pos);
      ++line_no;
      if (nl == std::string::npos) {
        // Unterminated tail from an interrupted append.
        recovered_tail_ = true;
        break;
      }
      const std::string line = text.substr(pos, nl - pos);
      pos = nl + 1;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        fail(line_no, std::string("malformed JSON: ") + e.what());
      }
      if (line_no == 1) {
        if (!j.is_object() || j.value("format", "") != kCacheFormat) fail(1, "not a dlcycles cache header");
        const int v = j.value("version", -1);
        if (v != kRecordVersion)
          throw CacheVersionMismatch(path_.string() + ":1: cache version " + std::to_string(v) + ", expected " +
                                     std::to_string(kRecordVersion));
      } else {
        PrimeRecord r;
        try {
          r = record_from_json(j);
        } catch (const CacheVersionMismatch& e) {
          throw CacheVersionMismatch(path_.string() + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const std::exception& e) {
          fail(line_no, std::string("bad record: ") + e.what());
        }
        if (auto it = records_.find(r.p); it != records_.end() && !it->second.same_counts(r))
          fail(line_no, "conflicting duplicate record for p = " + std::to_string(r.p));
        records_[r.p] = std::move(r);
      }
      good_end = pos;
    }
    if (good_end == 0) {
      // empty file, or the header itself was cut short
      write_all(header_line());
      recovered_tail_ = !text.empty();
    } else if (recovered_tail_) {
      std::filesystem::resize_file(path_, good_end);
    }
  }

  std::filesystem::path path_;
  std::map<u64, PrimeRecord> records_;
  bool recovered_tail_ = false;
};

}  // namespace dlc
