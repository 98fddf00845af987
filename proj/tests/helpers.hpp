#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace testutil {

/// Minimal SMF byte builder for crafting fixtures in-memory.
struct SmfBuilder {
  std::uint16_t format = 0;
  std::uint16_t division = 480;
  std::vector<std::vector<std::uint8_t>> tracks;
  std::vector<std::uint8_t> track;

  void delta(std::uint32_t v) {
    std::uint8_t digits[5];
    int n = 0;
    do {
      digits[n++] = static_cast<std::uint8_t>(v & 0x7f);
      v >>= 7;
    } while (v != 0);
    while (n > 1) track.push_back(digits[--n] | 0x80);
    track.push_back(digits[0]);
  }
  void on(std::uint32_t d, int pitch, int velocity, int channel = 0) {
    delta(d);
    track.push_back(static_cast<std::uint8_t>(0x90 | channel));
    track.push_back(static_cast<std::uint8_t>(pitch));
    track.push_back(static_cast<std::uint8_t>(velocity));
  }
  void off(std::uint32_t d, int pitch, int channel = 0) {
    delta(d);
    track.push_back(static_cast<std::uint8_t>(0x80 | channel));
    track.push_back(static_cast<std::uint8_t>(pitch));
    track.push_back(0x40);
  }
  void tempo(std::uint32_t d, std::uint32_t microseconds) {
    delta(d);
    track.insert(track.end(), {0xff, 0x51, 0x03});
    track.push_back(static_cast<std::uint8_t>(microseconds >> 16));
    track.push_back(static_cast<std::uint8_t>((microseconds >> 8) & 0xff));
    track.push_back(static_cast<std::uint8_t>(microseconds & 0xff));
  }
  void raw(std::initializer_list<std::uint8_t> bytes) {
    track.insert(track.end(), bytes);
  }
  void end_track() {
    delta(0);
    track.insert(track.end(), {0xff, 0x2f, 0x00});
    tracks.push_back(track);
    track.clear();
  }

  std::vector<std::uint8_t> bytes() const {
    std::vector<std::uint8_t> out{'M', 'T', 'h', 'd', 0, 0, 0, 6};
    const auto u16 = [&out](std::uint16_t v) {
      out.push_back(static_cast<std::uint8_t>(v >> 8));
      out.push_back(static_cast<std::uint8_t>(v & 0xff));
    };
    u16(format);
    u16(static_cast<std::uint16_t>(tracks.size()));
    u16(division);
    for (const auto& t : tracks) {
      out.insert(out.end(), {'M', 'T', 'r', 'k'});
      const auto size = static_cast<std::uint32_t>(t.size());
      out.push_back(static_cast<std::uint8_t>(size >> 24));
      out.push_back(static_cast<std::uint8_t>((size >> 16) & 0xff));
      out.push_back(static_cast<std::uint8_t>((size >> 8) & 0xff));
      out.push_back(static_cast<std::uint8_t>(size & 0xff));
      out.insert(out.end(), t.begin(), t.end());
    }
    return out;
  }
};

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("continuo_test_" + std::to_string(counter.fetch_add(1)) + "_" +
            std::to_string(static_cast<unsigned long>(
                reinterpret_cast<std::uintptr_t>(this) & 0xffff)));
    std::filesystem::create_directories(path);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

inline void write_file(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
