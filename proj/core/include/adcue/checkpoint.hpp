#pragma once

#include <filesystem>
#include <json.hpp>

#include "adcue/optim.hpp"

namespace adcue {

// "CKP1", u32 LE index length, JSON index
// {"tensors": [{"name", "rows", "cols", "offset"}], "meta": {...}}, then the
// values as f64 LE, row-major; offsets are bytes from the payload start.
// Only parameter values are stored, not optimizer state.
void save_checkpoint(const std::filesystem::path& path, const ParamSet& params,
                     const nlohmann::json& meta = nlohmann::json::object());

struct Checkpoint {
  ParamSet params;
  nlohmann::json meta;
};

Checkpoint load_checkpoint(const std::filesystem::path& path);

// Copies values by name; throws Error(kSchema) on missing names or shape
// mismatches.
void restore_params(ParamSet& target, const ParamSet& source);

}  // namespace adcue
