/*
 * Copyright 2026 The vidlabel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VIDLABEL_COMMON_FS_H_
#define VIDLABEL_COMMON_FS_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace vidlabel {

// Reads the whole file; throws IoError if it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);

// Writes `contents` to a sibling temp file and renames it over `path`, so a
// reader never observes a partially written file.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

// Replaces directory `dst` with the fully populated directory `staged`.
void RenameDirAtomic(const std::filesystem::path& staged,
                     const std::filesystem::path& dst);

}  // namespace vidlabel

#endif  // VIDLABEL_COMMON_FS_H_
