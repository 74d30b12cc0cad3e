// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "rotdet/eval.hpp"

namespace rotdet {

// Annotation / detection files are JSONL: one image per line, UTF-8, keys
// sorted, angles in radians. Detection records carry a score per box.
//
//   {"boxes":[{"cx":..,"cy":..,"h":..,"theta":..,"w":..}],
//    "height":512,"image_id":"img_00000","width":512}

GroundTruthSet read_annotations(const std::filesystem::path& path);
void write_annotations(const std::filesystem::path& path, const GroundTruthSet& gt);

std::vector<ImageDetections> read_detections(const std::filesystem::path& path);
void write_detections(const std::filesystem::path& path,
                      std::span<const ImageDetections> detections);

// Report JSON: {"ap50":..,"precision":..,"recall":..,"f1":..,"matches":[...]}.
void write_report(const std::filesystem::path& path, const EvalReport& report);

}  // namespace rotdet
