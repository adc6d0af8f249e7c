#include "panoseg/kitti_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <yaml-cpp/yaml.h>

#include "panoseg/errors.hpp"

namespace panoseg::io {
namespace {

std::vector<char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const std::streamoff len = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<char> buf(static_cast<std::size_t>(len));
  if (len > 0 && !in.read(buf.data(), len)) {
    throw IoError("short read on " + path.string());
  }
  return buf;
}

void write_all(const std::filesystem::path& path, const void* data,
               std::size_t len) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (len > 0) out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
  if (!out) throw IoError("short write on " + path.string());
}

}  // namespace

PointCloud read_scan(const std::filesystem::path& path) {
  const std::vector<char> buf = read_all(path);
  if (buf.size() % sizeof(Point) != 0) {
    throw IoError(path.string() + ": length " + std::to_string(buf.size()) +
                  " is not a multiple of 16");
  }
  PointCloud cloud;
  cloud.points.resize(buf.size() / sizeof(Point));
  if (!cloud.points.empty()) {
    std::memcpy(cloud.points.data(), buf.data(), buf.size());
  }
  std::size_t nonfinite = 0;
  for (const Point& p : cloud.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      ++nonfinite;
    }
  }
  if (nonfinite > 0) {
    cloud.warnings.push_back(path.filename().string() + ": " +
                             std::to_string(nonfinite) +
                             " points with non-finite coordinates");
  }
  return cloud;
}

SemanticMap read_labels(const std::filesystem::path& path) {
  const std::vector<char> buf = read_all(path);
  if (buf.size() % 4 != 0) {
    throw IoError(path.string() + ": length " + std::to_string(buf.size()) +
                  " is not a multiple of 4");
  }
  const std::size_t n = buf.size() / 4;
  SemanticMap labels;
  labels.semantic.resize(n);
  labels.instance.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t word;
    std::memcpy(&word, buf.data() + 4 * i, 4);
    labels.semantic[i] = static_cast<std::uint16_t>(word & 0xffffu);
    labels.instance[i] = static_cast<std::uint16_t>(word >> 16);
  }
  return labels;
}

SemanticMap read_labels(const std::filesystem::path& path, std::size_t expected_n) {
  const auto actual = std::filesystem::file_size(path);
  if (actual != 4 * expected_n) {
    throw IoError(path.string() + ": expected " + std::to_string(4 * expected_n) +
                  " bytes for " + std::to_string(expected_n) + " points, got " +
                  std::to_string(actual));
  }
  return read_labels(path);
}

void write_scan(const PointCloud& cloud, const std::filesystem::path& path) {
  write_all(path, cloud.points.data(), cloud.points.size() * sizeof(Point));
}

void write_labels(const SemanticMap& labels, const std::filesystem::path& path) {
  if (labels.semantic.size() != labels.instance.size()) {
    throw IoError("label arrays disagree in length, refusing to write " +
                  path.string());
  }
  std::vector<std::uint32_t> words(labels.semantic.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = static_cast<std::uint32_t>(labels.semantic[i]) |
               (static_cast<std::uint32_t>(labels.instance[i]) << 16);
  }
  write_all(path, words.data(), words.size() * 4);
}

namespace {

double positive_double(const YAML::Node& node, const std::string& key) {
  const double v = node.as<double>();
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
  return v;
}

}  // namespace

ClassConfig read_config(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }

  ClassConfig cfg;
  if (!root["classes"] || !root["classes"].IsSequence()) {
    throw ConfigError(path.string() + ": missing required key `classes`");
  }

  double default_threshold = 0.5;
  if (root["merge_threshold"] && root["merge_threshold"].IsScalar()) {
    default_threshold = root["merge_threshold"].as<double>();
  }

  for (const YAML::Node& row : root["classes"]) {
    ClassSpec spec;
    if (!row["id"]) throw ConfigError("classes[]: missing `id`");
    spec.id = row["id"].as<std::uint16_t>();
    spec.name = row["name"] ? row["name"].as<std::string>() : std::string{};
    spec.is_thing = row["thing"] ? row["thing"].as<bool>() : false;
    if (spec.is_thing) {
      if (!row["r_c"]) {
        throw ConfigError("classes[" + std::to_string(spec.id) +
                          "]: thing class missing `r_c`");
      }
      spec.min_radius =
          positive_double(row["r_c"], "classes[" + std::to_string(spec.id) + "].r_c");
    }
    spec.merge_threshold = default_threshold;
    cfg.classes.push_back(std::move(spec));
  }

  if (root["merge_threshold"] && root["merge_threshold"].IsMap()) {
    for (const auto& kv : root["merge_threshold"]) {
      const std::uint16_t id = kv.first.as<std::uint16_t>();
      bool found = false;
      for (ClassSpec& spec : cfg.classes) {
        if (spec.id == id) {
          spec.merge_threshold = kv.second.as<double>();
          found = true;
        }
      }
      if (!found) {
        throw ConfigError("merge_threshold: unknown class " + std::to_string(id));
      }
    }
  }
  if (root["gap_cutoff"]) {
    if (!root["gap_cutoff"].IsMap()) {
      throw ConfigError("gap_cutoff: expected a per-class map");
    }
    for (const auto& kv : root["gap_cutoff"]) {
      const std::uint16_t id = kv.first.as<std::uint16_t>();
      bool found = false;
      for (ClassSpec& spec : cfg.classes) {
        if (spec.id == id) {
          spec.gap_cutoff = positive_double(kv.second, "gap_cutoff");
          found = true;
        }
      }
      if (!found) {
        throw ConfigError("gap_cutoff: unknown class " + std::to_string(id));
      }
    }
  }

  if (root["L"]) cfg.shift_iterations = root["L"].as<int>();
  if (root["knn"]) cfg.knn_candidates = root["knn"].as<int>();
  if (root["voxel_size"]) {
    const YAML::Node& vs = root["voxel_size"];
    if (!vs.IsSequence() || vs.size() != 3) {
      throw ConfigError("voxel_size: expected [dx, dy, dz]");
    }
    for (int a = 0; a < 3; ++a) {
      cfg.voxel_size[a] = positive_double(vs[a], "voxel_size");
    }
  }
  if (root["extent"]) {
    const YAML::Node& ex = root["extent"];
    if (!ex.IsSequence() || ex.size() != 3) {
      throw ConfigError("extent: expected [[x0,x1],[y0,y1],[z0,z1]]");
    }
    for (int a = 0; a < 3; ++a) {
      if (!ex[a].IsSequence() || ex[a].size() != 2) {
        throw ConfigError("extent: expected [[x0,x1],[y0,y1],[z0,z1]]");
      }
      cfg.extent_min[a] = ex[a][0].as<double>();
      cfg.extent_max[a] = ex[a][1].as<double>();
    }
  }

  cfg.check();
  return cfg;
}

}  // namespace panoseg::io
