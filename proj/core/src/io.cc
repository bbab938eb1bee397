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

#include "uvface/io.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "uvface/errors.h"

namespace uvface::io {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double to_double(std::string_view s, std::size_t line_no) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                ": not a number: '" + std::string(s) + "'");
  }
  return value;
}

long to_long(std::string_view s, std::size_t line_no) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                ": not an integer: '" + std::string(s) + "'");
  }
  return value;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

std::uint32_t get_u32(std::string_view bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + k]))
         << (8 * k);
  }
  return v;
}

std::string pgm_header(int rows, int cols) {
  return "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIo, "failed reading " + path.string());
  return data;
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      fail(ErrorCode::kIo, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::kIo, "cannot move output into place at " + path.string());
  }
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) fail(ErrorCode::kIo, "cannot format number");
  return std::string(buf, ptr);
}

FaceMesh parse_obj(std::string_view text) {
  std::vector<Eigen::Vector3d> verts;
  FaceMesh mesh;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto tok = split_ws(lines[n]);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "v") {
      if (tok.size() < 4) {
        fail(ErrorCode::kParse, "line " + std::to_string(n + 1) +
                                    ": vertex needs three coordinates");
      }
      verts.emplace_back(to_double(tok[1], n + 1), to_double(tok[2], n + 1),
                         to_double(tok[3], n + 1));
    } else if (tok[0] == "f") {
      if (tok.size() < 4) {
        fail(ErrorCode::kParse, "line " + std::to_string(n + 1) +
                                    ": facet needs at least three vertices");
      }
      std::vector<int> idx;
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const std::string_view head = tok[k].substr(0, tok[k].find('/'));
        long v = to_long(head, n + 1);
        if (v < 0) v += static_cast<long>(verts.size()) + 1;
        if (v < 1) {
          fail(ErrorCode::kParse,
               "line " + std::to_string(n + 1) + ": bad vertex index");
        }
        idx.push_back(static_cast<int>(v - 1));
      }
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
        mesh.facets.push_back({idx[0], idx[k], idx[k + 1]});
      }
    }
  }
  mesh.vertices.resize(3, static_cast<Eigen::Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) {
    mesh.vertices.col(static_cast<Eigen::Index>(i)) = verts[i];
  }
  for (const Facet& f : mesh.facets) {
    for (int i : f) {
      if (i >= mesh.num_vertices()) {
        fail(ErrorCode::kParse, "facet references a missing vertex");
      }
    }
  }
  mesh.edges = facet_edge_set(mesh.facets);
  mesh.edge_source = EdgeSource::kFacets;
  return mesh;
}

std::string format_obj(const FaceMesh& mesh) {
  std::string out;
  out.reserve(static_cast<std::size_t>(mesh.num_vertices()) * 64 +
              mesh.facets.size() * 24);
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    out += "v ";
    out += format_double(mesh.vertices(0, i));
    out += ' ';
    out += format_double(mesh.vertices(1, i));
    out += ' ';
    out += format_double(mesh.vertices(2, i));
    out += '\n';
  }
  for (const Facet& f : mesh.facets) {
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) +
           " " + std::to_string(f[2] + 1) + "\n";
  }
  return out;
}

std::vector<int> parse_landmarks(std::string_view text) {
  std::vector<int> out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto tok = split_ws(lines[n]);
    if (tok.empty() || tok[0].front() == '#') continue;
    const long v = to_long(tok[0], n + 1);
    if (v < 1) {
      fail(ErrorCode::kParse,
           "line " + std::to_string(n + 1) + ": landmark indices are 1-based");
    }
    out.push_back(static_cast<int>(v - 1));
  }
  return out;
}

std::string format_landmarks(const std::vector<int>& landmarks) {
  std::string out;
  for (int i : landmarks) out += std::to_string(i + 1) + "\n";
  return out;
}

std::vector<double> parse_values(std::string_view text) {
  std::vector<double> out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    for (std::string_view tok : split_ws(lines[n])) {
      if (tok.front() == '#') break;
      out.push_back(to_double(tok, n + 1));
    }
  }
  return out;
}

std::string format_values(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += format_double(v) + "\n";
  return out;
}

std::vector<Eigen::MatrixXd> parse_point_blocks(std::string_view text) {
  std::vector<Eigen::MatrixXd> blocks;
  std::vector<std::vector<double>> current;
  long dims = -1;
  auto flush = [&]() {
    if (current.empty()) return;
    Eigen::MatrixXd m(dims, static_cast<Eigen::Index>(current.size()));
    for (std::size_t j = 0; j < current.size(); ++j) {
      for (long d = 0; d < dims; ++d) {
        m(d, static_cast<Eigen::Index>(j)) = current[j][static_cast<std::size_t>(d)];
      }
    }
    blocks.push_back(std::move(m));
    current.clear();
  };
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto tok = split_ws(lines[n]);
    if (tok.empty()) {
      flush();
      continue;
    }
    if (tok[0].front() == '#') continue;
    std::vector<double> p;
    for (std::string_view t : tok) p.push_back(to_double(t, n + 1));
    if (dims < 0) dims = static_cast<long>(p.size());
    if (static_cast<long>(p.size()) != dims) {
      fail(ErrorCode::kParse, "line " + std::to_string(n + 1) +
                                  ": inconsistent point dimension");
    }
    current.push_back(std::move(p));
  }
  flush();
  return blocks;
}

std::string encode_uvpm(const UVPositionMap& map) {
  const auto h = static_cast<std::uint32_t>(map.height());
  const auto w = static_cast<std::uint32_t>(map.width());
  std::string out = "UVPM";
  out.reserve(12 + static_cast<std::size_t>(h) * w * 13);
  put_u32(out, h);
  put_u32(out, w);
  for (std::size_t k = 0; k < map.values.size(); ++k) {
    for (int d = 0; d < 3; ++d) {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(map.values[k](d))));
    }
  }
  for (std::size_t k = 0; k < map.valid.size(); ++k) {
    out.push_back(map.valid[k] ? 1 : 0);
  }
  return out;
}

UVPositionMap decode_uvpm(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != "UVPM") {
    fail(ErrorCode::kParse, "not a UVPM position map");
  }
  const std::uint32_t h = get_u32(bytes, 4);
  const std::uint32_t w = get_u32(bytes, 8);
  const std::size_t cells = static_cast<std::size_t>(h) * w;
  if (h > (1u << 16) || w > (1u << 16) || bytes.size() != 12 + cells * 13) {
    fail(ErrorCode::kParse, "UVPM size does not match its header");
  }
  UVPositionMap map;
  map.values = Grid<Eigen::Vector3d>(static_cast<int>(h), static_cast<int>(w),
                                     Eigen::Vector3d::Zero());
  map.valid = BinaryGrid(static_cast<int>(h), static_cast<int>(w), 0);
  std::size_t at = 12;
  for (std::size_t k = 0; k < cells; ++k) {
    for (int d = 0; d < 3; ++d) {
      map.values[k](d) = std::bit_cast<float>(get_u32(bytes, at));
      at += 4;
    }
  }
  for (std::size_t k = 0; k < cells; ++k) {
    const auto b = static_cast<unsigned char>(bytes[at++]);
    if (b > 1) fail(ErrorCode::kParse, "UVPM validity byte is not 0/1");
    map.valid[k] = b;
  }
  return map;
}

std::string encode_pgm(const BinaryGrid& mask) {
  std::string out = pgm_header(mask.rows(), mask.cols());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    out.push_back(static_cast<char>(mask[k] ? 255 : 0));
  }
  return out;
}

std::string encode_pgm(const Grid<double>& intensity) {
  std::string out = pgm_header(intensity.rows(), intensity.cols());
  for (std::size_t k = 0; k < intensity.size(); ++k) {
    const double v = std::clamp(intensity[k], 0.0, 1.0);
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
  }
  return out;
}

Grid<double> decode_pgm(std::string_view bytes) {
  // Header: magic, width, height, maxval separated by whitespace, with
  // optional comments; exactly one whitespace byte precedes the raster.
  std::size_t at = 0;
  auto next_token = [&]() {
    while (at < bytes.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes[at]))) {
        ++at;
      } else if (bytes[at] == '#') {
        while (at < bytes.size() && bytes[at] != '\n') ++at;
      } else {
        break;
      }
    }
    const std::size_t start = at;
    while (at < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[at]))) ++at;
    return bytes.substr(start, at - start);
  };
  if (next_token() != "P5") fail(ErrorCode::kParse, "not a binary PGM (P5)");
  const long cols = to_long(next_token(), 1);
  const long rows = to_long(next_token(), 1);
  const long maxval = to_long(next_token(), 1);
  if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 255) {
    fail(ErrorCode::kParse, "unsupported PGM header");
  }
  ++at;
  const std::size_t cells = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (bytes.size() < at + cells) fail(ErrorCode::kParse, "truncated PGM raster");
  Grid<double> out(static_cast<int>(rows), static_cast<int>(cols), 0.0);
  for (std::size_t k = 0; k < cells; ++k) {
    out[k] = static_cast<unsigned char>(bytes[at + k]) / static_cast<double>(maxval);
  }
  return out;
}

}  // namespace uvface::io
