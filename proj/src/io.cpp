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

#include "tsim/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tsim {

std::string fmt12(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    // Round to 12 significant digits first so the decimal count is exact.
    char sci[64];
    std::snprintf(sci, sizeof sci, "%.11e", x);
    double r = std::strtod(sci, nullptr);
    int exp10 = static_cast<int>(std::floor(std::log10(std::abs(r))));
    int decimals = std::clamp(11 - exp10, 0, 60);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, r);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : cols_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ',';
        out_ += header[i];
    }
    out_ += '\n';
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != cols_) throw std::invalid_argument("CsvWriter: row width does not match header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        out_ += cells[i];
    }
    out_ += '\n';
    return *this;
}

CsvWriter& CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(fmt12(v));
    return row(cells);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace tsim
