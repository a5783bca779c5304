// run.hpp - executes one run configuration and writes the artifacts
// (spectrum CSV, metadata sidecar, result summary).
#pragma once

#include <string>
#include <vector>

#include "misim/config.hpp"

namespace misim {

inline constexpr const char* kVersion = "1.0.0";

struct RunArtifacts {
    std::vector<std::string> files;
    nlohmann::json summary;
};

// Deterministic: identical config + atomic data produce byte-identical
// files. Throws std::invalid_argument for configuration problems and
// std::runtime_error for solver failures.
RunArtifacts run(const RunConfig& cfg, const AtomicData& data,
                 const std::string& out_dir);

}  // namespace misim
