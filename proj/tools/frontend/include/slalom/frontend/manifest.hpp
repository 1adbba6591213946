#pragma once

// Run manifests: one JSON record per output file describing how it was made.

#include <string>
#include <vector>

#include "slalom/frontend/serialize.hpp"
#include "slalom/frontend/units.hpp"

namespace slalom::frontend {

struct RunManifest {
    std::string command;
    std::vector<std::string> arguments;
    LabSettings lab;
    FieldParams field{1.0, 1.0, 1.0};
    json settings = json::object();
    std::string output;
    double wall_seconds = 0.0;
    std::size_t masked = 0;
    std::vector<std::string> failures;
};

const char* tool_version() noexcept;

/// Field parameters in both unit systems, with the conversion constants used.
json field_summary(const FieldParams& fp);

json to_json(const RunManifest& m);

/// "<output>.manifest.json".
std::string manifest_path_for(const std::string& output);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace slalom::frontend
