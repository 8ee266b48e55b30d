#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "cqz/error.hpp"

namespace cqz {

// Packs fixed-width codewords most-significant-bit-first into bytes; the
// final byte is zero-padded.
class BitWriter {
 public:
  void write(std::uint32_t value, int bits) {
    while (bits > 0) {
      if (bit_pos_ == 0) {
        bytes_.push_back(0);
      }
      const int take = std::min(8 - bit_pos_, bits);
      const std::uint32_t chunk =
          (value >> (bits - take)) & ((1u << take) - 1u);
      bytes_.back() |= static_cast<std::uint8_t>(chunk << (8 - bit_pos_ - take));
      bit_pos_ = (bit_pos_ + take) & 7;
      bits -= take;
    }
  }

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  int bit_pos_ = 0;  // bits used in the last byte, 0..7
};

// Reads fixed-width codewords packed by BitWriter.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t read(int bits) {
    std::uint32_t value = 0;
    while (bits > 0) {
      const std::size_t byte_index = pos_ >> 3;
      if (byte_index >= bytes_.size()) {
        throw MalformedStream("payload ends before all codewords are read");
      }
      const int bit_in_byte = static_cast<int>(pos_ & 7);
      const int take = std::min(8 - bit_in_byte, bits);
      const std::uint32_t chunk =
          (bytes_[byte_index] >> (8 - bit_in_byte - take)) & ((1u << take) - 1u);
      value = (value << take) | chunk;
      pos_ += static_cast<std::size_t>(take);
      bits -= take;
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;  // bit cursor
};

}  // namespace cqz
