#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "ardt/methods.hpp"

namespace ardt {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const FittedModel& model);

// Throws ModelFormatError naming the offending field (as a JSON pointer) on
// any missing, mistyped or inconsistent value.
FittedModel model_from_json(const nlohmann::json& doc);

void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace ardt
