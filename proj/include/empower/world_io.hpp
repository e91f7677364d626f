#pragma once

// Text world files.
//
//   dims X Y Z
//   layer z=0
//   <Y rows of X characters, northmost row (y = Y-1) first>
//   layer z=1
//   ...
//   inventory earth|none        (optional, default none)
//   tick <n>                    (optional, default 0)
//   dead <x> <y> <z>            (optional, agent died at that position)
//
// Cell characters: '.' Empty, '#' Earth, 'L' Lava, 'A' Agent.  Blank lines
// are ignored.  save_world always writes the inventory and tick lines, so
// load_world(save_world(w)) == w and save_world(load_world(t)) == t for any
// text that save_world produced.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "empower/blockworld.hpp"

namespace empower::blockworld {

class WorldParseError : public std::runtime_error {
 public:
  WorldParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class WorldValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BlockWorld load_world(std::string_view text);
std::string save_world(const BlockWorld& world);

BlockWorld load_world_file(const std::filesystem::path& path);
void save_world_file(const BlockWorld& world, const std::filesystem::path& path);

char block_char(Block b);

}  // namespace empower::blockworld
