// Copyright 2026 The revcirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace revcirc {

enum class Scale { kCi, kFull };

Scale parse_scale(const std::string &text);
const char *to_string(Scale scale);

/// Recipe ids keyed to the figures and tables they regenerate.
const std::vector<std::string> &recipe_ids();

struct RecipeOptions {
    std::string id;
    Scale scale = Scale::kCi;
    uint64_t seed = 1;
    std::filesystem::path out_dir = ".";
    size_t workers = 0;
    /// Overrides the scale's samples per length when non-zero.
    uint64_t samples = 0;
    /// Progress messages; may be null.
    std::ostream *log = nullptr;
};

struct RecipeResult {
    std::vector<std::filesystem::path> files;
    double wall_seconds = 0;
};

/// Runs one recipe, writing its CSVs and a manifest.json into out_dir.
/// Throws std::invalid_argument for an unknown id and std::runtime_error
/// when the output directory cannot be written.
RecipeResult run_recipe(const RecipeOptions &options);

}  // namespace revcirc
