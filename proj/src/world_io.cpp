#include "empower/world_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "empower/io_error.hpp"

namespace empower::blockworld {

WorldParseError::WorldParseError(std::size_t line, std::size_t column,
                                 const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

char block_char(Block b) {
  switch (b) {
    case Block::Empty: return '.';
    case Block::Earth: return '#';
    case Block::Lava: return 'L';
    case Block::Agent: return 'A';
  }
  return '?';
}

namespace {

std::optional<Block> block_from_char(char c) {
  switch (c) {
    case '.': return Block::Empty;
    case '#': return Block::Earth;
    case 'L': return Block::Lava;
    case 'A': return Block::Agent;
    default: return std::nullopt;
  }
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    lines.push_back({number, line});
  }
  return lines;
}

// Whitespace-separated fields with their 1-based column.
struct Field {
  std::size_t column;
  std::string_view text;
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    fields.push_back({start + 1, line.substr(start, i - start)});
  }
  return fields;
}

long long parse_int(const Line& line, const Field& f, long long min_value) {
  long long v = 0;
  const char* first = f.text.data();
  const char* last = first + f.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw WorldParseError(line.number, f.column,
                          "expected an integer, got '" + std::string(f.text) + "'");
  }
  if (v < min_value) {
    throw WorldParseError(line.number, f.column,
                          "value " + std::to_string(v) + " is below " +
                              std::to_string(min_value));
  }
  return v;
}

void expect_fields(const Line& line, const std::vector<Field>& fields,
                   std::size_t n, std::string_view usage) {
  if (fields.size() != n) {
    const std::size_t col = fields.size() > n ? fields[n].column : line.text.size() + 1;
    throw WorldParseError(line.number, col,
                          "expected '" + std::string(usage) + "'");
  }
}

}  // namespace

BlockWorld load_world(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw WorldParseError(1, 1, "empty world file");

  std::size_t cursor = 0;
  const Line& header = lines[cursor++];
  const auto hf = split_fields(header.text);
  if (hf.empty() || hf[0].text != "dims") {
    throw WorldParseError(header.number, 1, "expected 'dims X Y Z' header");
  }
  expect_fields(header, hf, 4, "dims X Y Z");
  const Vec3 dims{static_cast<int>(parse_int(header, hf[1], 1)),
                  static_cast<int>(parse_int(header, hf[2], 1)),
                  static_cast<int>(parse_int(header, hf[3], 1))};

  std::vector<Block> cells(static_cast<std::size_t>(dims.x) * dims.y * dims.z);
  std::vector<std::pair<Vec3, std::size_t>> agents;  // position, line number
  for (int z = 0; z < dims.z; ++z) {
    if (cursor >= lines.size()) {
      throw WorldParseError(lines.back().number + 1, 1,
                            "missing 'layer z=" + std::to_string(z) + "'");
    }
    const Line& marker = lines[cursor++];
    const std::string expected = "layer z=" + std::to_string(z);
    if (marker.text != expected) {
      throw WorldParseError(marker.number, 1, "expected '" + expected + "'");
    }
    for (int row = 0; row < dims.y; ++row) {
      if (cursor >= lines.size()) {
        throw WorldParseError(marker.number, 1,
                              "layer z=" + std::to_string(z) + " has too few rows");
      }
      const Line& r = lines[cursor++];
      if (r.text.size() != static_cast<std::size_t>(dims.x)) {
        throw WorldParseError(r.number, std::min(r.text.size(), std::size_t(dims.x)) + 1,
                              "row must have exactly " + std::to_string(dims.x) +
                                  " cells");
      }
      const int y = dims.y - 1 - row;
      for (int x = 0; x < dims.x; ++x) {
        const auto b = block_from_char(r.text[x]);
        if (!b) {
          throw WorldParseError(r.number, x + 1,
                                std::string("unknown cell character '") +
                                    r.text[x] + "'");
        }
        cells[(static_cast<std::size_t>(z) * dims.y + y) * dims.x + x] = *b;
        if (*b == Block::Agent) agents.push_back({{x, y, z}, r.number});
      }
    }
  }

  bool holding = false;
  std::uint64_t tick = 0;
  std::optional<Vec3> dead_at;
  bool seen_inventory = false;
  bool seen_tick = false;
  for (; cursor < lines.size(); ++cursor) {
    const Line& line = lines[cursor];
    const auto f = split_fields(line.text);
    if (f[0].text == "inventory" && !seen_inventory) {
      expect_fields(line, f, 2, "inventory earth|none");
      if (f[1].text == "earth") {
        holding = true;
      } else if (f[1].text != "none") {
        throw WorldParseError(line.number, f[1].column,
                              "inventory must be 'earth' or 'none'");
      }
      seen_inventory = true;
    } else if (f[0].text == "tick" && !seen_tick) {
      expect_fields(line, f, 2, "tick <n>");
      tick = static_cast<std::uint64_t>(parse_int(line, f[1], 0));
      seen_tick = true;
    } else if (f[0].text == "dead" && !dead_at) {
      expect_fields(line, f, 4, "dead X Y Z");
      dead_at = Vec3{static_cast<int>(parse_int(line, f[1], 0)),
                     static_cast<int>(parse_int(line, f[2], 0)),
                     static_cast<int>(parse_int(line, f[3], 0))};
    } else {
      throw WorldParseError(line.number, f[0].column,
                            "unexpected '" + std::string(f[0].text) + "'");
    }
  }

  BlockWorld world(dims, {0, 0, 0});
  for (int z = 0; z < dims.z; ++z) {
    for (int y = 0; y < dims.y; ++y) {
      for (int x = 0; x < dims.x; ++x) {
        world.set({x, y, z}, cells[(static_cast<std::size_t>(z) * dims.y + y) * dims.x + x]);
      }
    }
  }
  if (dead_at) {
    if (!agents.empty()) {
      throw WorldValidationError("dead world must not contain an agent cell (line " +
                                 std::to_string(agents.front().second) + ")");
    }
    if (!world.in_bounds(*dead_at)) {
      throw WorldValidationError("dead position lies outside the grid");
    }
    world.set_dead_at(*dead_at);
  } else {
    if (agents.empty()) throw WorldValidationError("world has no agent cell");
    if (agents.size() > 1) {
      throw WorldValidationError("world has " + std::to_string(agents.size()) +
                                 " agent cells (second on line " +
                                 std::to_string(agents[1].second) + ")");
    }
    world.place_agent(agents.front().first);
  }
  world.set_holding(holding);
  world.set_tick(tick);
  return world;
}

std::string save_world(const BlockWorld& world) {
  const Vec3 d = world.dims();
  std::ostringstream out;
  out << "dims " << d.x << ' ' << d.y << ' ' << d.z << '\n';
  for (int z = 0; z < d.z; ++z) {
    out << "layer z=" << z << '\n';
    for (int y = d.y - 1; y >= 0; --y) {
      for (int x = 0; x < d.x; ++x) out << block_char(world.at({x, y, z}));
      out << '\n';
    }
  }
  out << "inventory " << (world.holding() ? "earth" : "none") << '\n';
  out << "tick " << world.tick() << '\n';
  if (!world.alive()) {
    const Vec3 p = world.agent();
    out << "dead " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  }
  return out.str();
}

BlockWorld load_world_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open world file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_world(buf.str());
}

void save_world_file(const BlockWorld& world, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write world file " + path.string());
  out << save_world(world);
  if (!out) throw IoError("failed writing world file " + path.string());
}

}  // namespace empower::blockworld
