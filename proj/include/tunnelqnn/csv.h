/* Copyright 2026 The tunnelqnn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TUNNELQNN_CSV_H_
#define TUNNELQNN_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace tunnelqnn {
namespace csv {

// Shortest decimal text that parses back to the identical double.
std::string FormatDouble(double value);
// Throws std::invalid_argument unless the whole field is a number.
double ParseDouble(std::string_view text);
long long ParseInt(std::string_view text);

std::vector<std::string_view> SplitFields(std::string_view line);

// Writes `contents` to `path`, creating parent directories.
void WriteFile(const std::string& path, const std::string& contents);
std::string ReadFile(const std::string& path);

}  // namespace csv
}  // namespace tunnelqnn

#endif  // TUNNELQNN_CSV_H_
