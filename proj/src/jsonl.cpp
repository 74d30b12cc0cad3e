// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#include "rotdet/jsonl.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rotdet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

json box_to_json(const ObbBox& box) {
  return json{{"cx", box.cx}, {"cy", box.cy}, {"w", box.w}, {"h", box.h},
              {"theta", box.theta}};
}

ObbBox box_from_json(const json& j) {
  return ObbBox{j.at("cx").get<double>(), j.at("cy").get<double>(),
                j.at("w").get<double>(), j.at("h").get<double>(),
                j.at("theta").get<double>()};
}

template <typename PerLine>
void for_each_record(const std::filesystem::path& path, PerLine&& fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(path, lineno, e.what());
    }
    try {
      fn(record);
    } catch (const json::exception& e) {
      fail(path, lineno, e.what());
    }
  }
}

}  // namespace

GroundTruthSet read_annotations(const std::filesystem::path& path) {
  GroundTruthSet out;
  for_each_record(path, [&](const json& record) {
    ImageGroundTruth image;
    image.image_id = record.at("image_id").get<std::string>();
    image.width = record.at("width").get<int>();
    image.height = record.at("height").get<int>();
    for (const json& b : record.at("boxes")) image.boxes.push_back(box_from_json(b));
    out.images.push_back(std::move(image));
  });
  return out;
}

void write_annotations(const std::filesystem::path& path, const GroundTruthSet& gt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const ImageGroundTruth& image : gt.images) {
    json boxes = json::array();
    for (const ObbBox& box : image.boxes) boxes.push_back(box_to_json(box));
    const json record{{"image_id", image.image_id},
                      {"width", image.width},
                      {"height", image.height},
                      {"boxes", std::move(boxes)}};
    out << record.dump() << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<ImageDetections> read_detections(const std::filesystem::path& path) {
  std::vector<ImageDetections> out;
  for_each_record(path, [&](const json& record) {
    ImageDetections image;
    image.image_id = record.at("image_id").get<std::string>();
    for (const json& b : record.at("boxes")) {
      image.dets.push_back({box_from_json(b), b.at("score").get<double>()});
    }
    out.push_back(std::move(image));
  });
  return out;
}

void write_detections(const std::filesystem::path& path,
                      std::span<const ImageDetections> detections) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const ImageDetections& image : detections) {
    json boxes = json::array();
    for (const Detection& det : image.dets) {
      json b = box_to_json(det.box);
      b["score"] = det.score;
      boxes.push_back(std::move(b));
    }
    const json record{{"image_id", image.image_id}, {"boxes", std::move(boxes)}};
    out << record.dump() << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_report(const std::filesystem::path& path, const EvalReport& report) {
  json matches = json::array();
  for (const MatchEntry& m : report.matches) {
    matches.push_back(json{{"image_id", m.image_id},
                           {"det_index", m.det_index},
                           {"gt_index", m.gt_index >= 0 ? json(m.gt_index) : json()},
                           {"iou", m.iou},
                           {"score", m.score}});
  }
  const json doc{{"ap50", report.ap50},
                 {"precision", report.precision},
                 {"recall", report.recall},
                 {"f1", report.f1},
                 {"matches", std::move(matches)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace rotdet
