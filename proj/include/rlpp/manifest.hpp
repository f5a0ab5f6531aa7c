#pragma once

#include <string>

#include "rlpp/agent.hpp"

namespace rlpp {

// Everything needed to bit-reproduce a training run.
struct RunManifest {
    TrainConfig config;
    std::string map_file;
    std::string map_hash;  // FNV-1a of the map file bytes, hex
    std::string version;
    std::string started_at;
    std::string finished_at;
};

std::string fnv1a_hex(const std::string& bytes);
std::string file_hash(const std::string& path);

void save_manifest(const std::string& path, const RunManifest& manifest);
RunManifest load_manifest(const std::string& path);

}  // namespace rlpp
