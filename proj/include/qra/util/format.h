// Copyright 2026 The QRA Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QRA_UTIL_FORMAT_H_
#define QRA_UTIL_FORMAT_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace qra {

// Rounds half away from zero at `digits` decimals. A relative slack of 1e-9
// absorbs binary representation error, so 1.725 rounds to 1.73.
double RoundHalfUp(double x, int digits);

// RoundHalfUp then fixed notation; never prints "-0.00".
std::string FormatFixed(double x, int digits);

// Shortest decimal string that round-trips ("61", "97.1").
std::string FormatShortest(double x);

std::string Sha256Hex(std::string_view data);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace qra

#endif  // QRA_UTIL_FORMAT_H_
