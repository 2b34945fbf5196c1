#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace congest {

// Number of bits needed to hold values in [0, maxval].
inline int bits_for(std::uint64_t maxval) {
  int b = 1;
  while (maxval >> b) ++b;
  return b;
}

// Bit-level payload packing.  CONGEST budgets are tight (c * ceil(log2 n)
// bits per message), so fields are packed at exact widths rather than at
// byte granularity.
class BitWriter {
 public:
  void put(std::uint64_t value, int bits) {
    for (int i = 0; i < bits; ++i) {
      if (pos_ % 8 == 0) buf_.push_back('\0');
      if ((value >> i) & 1)
        buf_[static_cast<std::size_t>(pos_ / 8)] |=
            static_cast<char>(1 << (pos_ % 8));
      ++pos_;
    }
  }

  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
  int pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::string& buf) : buf_(buf) {}

  std::uint64_t get(int bits) {
    std::uint64_t v = 0;
    for (int i = 0; i < bits; ++i) {
      std::size_t byte = static_cast<std::size_t>(pos_ / 8);
      if (byte >= buf_.size()) throw std::runtime_error("payload underflow");
      if ((buf_[byte] >> (pos_ % 8)) & 1) v |= (1ULL << i);
      ++pos_;
    }
    return v;
  }

 private:
  const std::string& buf_;
  int pos_ = 0;
};

}  // namespace congest
