#pragma once

#include <cstdint>
#include <cstring>
#include <string>

#include "armac/util/check.h"

namespace armac {

// Little-endian primitives for the binary file formats.

inline void put_u32(std::string& buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

inline void put_u64(std::string& buf, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

inline void put_f64(std::string& buf, double d) {
  uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(buf, v);
}

// 16-bit length-prefixed byte string.
inline void put_bytes(std::string& buf, const std::string& s) {
  ARMAC_CHECK(s.size() < 0x10000);
  buf.push_back(static_cast<char>(s.size() & 0xff));
  buf.push_back(static_cast<char>((s.size() >> 8) & 0xff));
  buf.append(s);
}

class BufferReader {
 public:
  explicit BufferReader(const std::string& buf) : buf_(buf) {}

  uint8_t byte() {
    if (pos_ >= buf_.size()) throw InputError("truncated record");
    return static_cast<uint8_t>(buf_[pos_++]);
  }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(byte()) << (8 * i);
    return v;
  }
  uint64_t u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(byte()) << (8 * i);
    return v;
  }
  double f64() {
    const uint64_t v = u64();
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  }
  std::string bytes() {
    const size_t n = byte() | (static_cast<size_t>(byte()) << 8);
    if (pos_ + n > buf_.size()) throw InputError("truncated record");
    std::string s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  const std::string& buf_;
  size_t pos_ = 0;
};

}  // namespace armac
