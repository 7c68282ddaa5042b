/*
 * Copyright 2026 The FakeWake Authors.
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

// JSON persistence for archives and tree ensembles.

#ifndef FAKEWAKE_SERIALIZE_H_
#define FAKEWAKE_SERIALIZE_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "fakewake/evolve.h"
#include "fakewake/gbdt.h"

namespace fakewake {

// Pretty-printed with two-space indent and a trailing newline. Numbers use the
// shortest representation that parses back to the same double.
std::string ArchiveToJson(const FuzzyArchive& archive);
// Throws kDataError on malformed input.
FuzzyArchive ArchiveFromJson(std::string_view text);

std::string EnsembleToJson(const TreeEnsemble& model);
TreeEnsemble EnsembleFromJson(std::string_view text);

// Whole-file helpers. ReadFile throws kConfigError when the file is missing.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Fixed-point text for reports.
std::string FormatFixed(double value, int digits = 6);

// FNV-1a 64-bit digest as 16 hex digits.
std::string Fingerprint(std::string_view contents);

}  // namespace fakewake

#endif  // FAKEWAKE_SERIALIZE_H_
