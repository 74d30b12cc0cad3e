// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace rotdet {

// Dense row-major [H, W, C] map. Values are held as double in memory; the
// ARPT file format stores them as 32-bit floats.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int height, int width, int channels)
      : height_(height),
        width_(width),
        channels_(channels),
        data_(static_cast<std::size_t>(height) * width * channels, 0.0) {}

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(const Tensor& o) const {
    return height_ == o.height_ && width_ == o.width_ && channels_ == o.channels_;
  }

  double& at(int y, int x, int c) { return data_[index(y, x, c)]; }
  double at(int y, int x, int c) const { return data_[index(y, x, c)]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t index(int y, int x, int c) const {
    assert(y >= 0 && y < height_ && x >= 0 && x < width_ && c >= 0 && c < channels_);
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// ARPT tensor file: magic "ARPT", version byte 0x01, u8 ndim, ndim little-
// endian u32 dims, then row-major little-endian IEEE-754 f32 values.
void write_arpt(const std::filesystem::path& path, const Tensor& tensor);

// Throws std::runtime_error naming the file on bad magic/version/truncation.
Tensor read_arpt(const std::filesystem::path& path);

}  // namespace rotdet
