// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#include "rotdet/tensor.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace rotdet {

namespace {

constexpr char kMagic[4] = {'A', 'R', 'P', 'T'};
constexpr std::uint8_t kVersion = 0x01;

static_assert(std::endian::native == std::endian::little,
              "ARPT I/O assumes a little-endian host");

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error("ARPT: " + what + ": " + path.string());
}

}  // namespace

void write_arpt(const std::filesystem::path& path, const Tensor& tensor) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");

  out.write(kMagic, 4);
  out.put(static_cast<char>(kVersion));
  out.put(static_cast<char>(3));  // ndim, layout [H, W, C]
  const std::uint32_t dims[3] = {static_cast<std::uint32_t>(tensor.height()),
                                 static_cast<std::uint32_t>(tensor.width()),
                                 static_cast<std::uint32_t>(tensor.channels())};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));

  std::vector<float> values(tensor.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<float>(tensor.data()[i]);
  }
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
  if (!out) fail(path, "write failed");
}

Tensor read_arpt(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");

  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) fail(path, "bad magic");

  const int version = in.get();
  if (version != kVersion) fail(path, "unsupported version " + std::to_string(version));

  const int ndim = in.get();
  if (ndim != 3) fail(path, "expected 3 dims [H, W, C], got " + std::to_string(ndim));

  std::uint32_t dims[3] = {};
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!in) fail(path, "truncated header");

  Tensor tensor(static_cast<int>(dims[0]), static_cast<int>(dims[1]),
                static_cast<int>(dims[2]));
  std::vector<float> values(tensor.size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(float)));
  if (!in || in.gcount() != static_cast<std::streamsize>(values.size() * sizeof(float))) {
    fail(path, "truncated data");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    tensor.data()[i] = static_cast<double>(values[i]);
  }
  return tensor;
}

}  // namespace rotdet
