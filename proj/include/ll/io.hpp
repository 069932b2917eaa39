#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ll/chain.hpp"

namespace ll {

// Fixed-format float printing so identical runs produce byte-identical files.
std::string format_double(double x);

struct Artifact {
  std::string path;
  std::size_t bytes = 0;
  std::string hash;  // fnv1a-64, hex
};

class ArtifactSink {
 public:
  explicit ArtifactSink(std::string out_dir);
  const std::string& dir() const { return dir_; }
  std::string write_text(const std::string& rel_path, const std::string& content);
  std::string write_json(const std::string& rel_path, const nlohmann::ordered_json& j);
  void write_manifest();  // manifest.json listing every artifact with its hash
  const std::vector<Artifact>& artifacts() const { return artifacts_; }

 private:
  std::string dir_;
  std::vector<Artifact> artifacts_;
};

std::string fnv1a_hex(const std::string& bytes);

// Figure-1 style hull rendering: trace polyline with jump discontinuities as
// dotted connectors, the real axis, and a scale bar. No timestamp metadata.
std::string render_svg(const std::vector<TraceSample>& trace, double jump_gap_threshold = 0.05);

std::string trace_csv_string(const std::vector<TraceSample>& trace);
std::string driver_csv_string(const DriverPath& path);

}  // namespace ll
