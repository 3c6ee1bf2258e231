// Copyright 2026 The transmonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace tsim {

// Fixed-point text with 12 significant digits, e.g. 0.000123456789012.
std::string fmt12(double x);

// Minimal CSV builder: header row, comma separated, LF endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    CsvWriter& row(const std::vector<std::string>& cells);
    CsvWriter& row(const std::vector<double>& values);
    std::string str() const { return out_; }

private:
    size_t cols_;
    std::string out_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace tsim
