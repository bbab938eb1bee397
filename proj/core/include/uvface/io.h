// Copyright 2026 The uvface Authors.
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

#ifndef UVFACE_IO_H_
#define UVFACE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "uvface/grid.h"
#include "uvface/mesh.h"
#include "uvface/uv_map.h"

namespace uvface::io {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

// Wavefront OBJ: `v x y z` and `f i j k` (1-based). Texture/normal indices
// in `f a/b/c` are ignored and polygons are fan-triangulated.
FaceMesh parse_obj(std::string_view text);
std::string format_obj(const FaceMesh& mesh);

// One 1-based vertex index per line.
std::vector<int> parse_landmarks(std::string_view text);
std::string format_landmarks(const std::vector<int>& landmarks);

// Whitespace-separated decimal numbers.
std::vector<double> parse_values(std::string_view text);
std::string format_values(const std::vector<double>& values);

// Blocks of points, one point per line, blocks separated by blank lines.
// Every point in the file must have the same number of coordinates.
std::vector<Eigen::MatrixXd> parse_point_blocks(std::string_view text);

// `UVPM`, u32 H, u32 W, H*W*3 float32, H*W validity bytes; little-endian.
std::string encode_uvpm(const UVPositionMap& map);
UVPositionMap decode_uvpm(std::string_view bytes);

// Binary PGM (P5, maxval 255).
std::string encode_pgm(const BinaryGrid& mask);        // 1 -> 255
std::string encode_pgm(const Grid<double>& intensity);  // [0,1] -> 0..255
Grid<double> decode_pgm(std::string_view bytes);        // -> [0,1]

}  // namespace uvface::io

#endif  // UVFACE_IO_H_
