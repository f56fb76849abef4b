#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace sysrisk::agents {

struct Cell {
  std::size_t x = 0;  // column
  std::size_t y = 0;  // row
  auto operator<=>(const Cell&) const = default;
};

/// Bounded Life board with a dead border (no wraparound).
class LifeGrid {
 public:
  LifeGrid(std::size_t width, std::size_t height);
  LifeGrid(std::size_t width, std::size_t height, const std::vector<Cell>& alive);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  bool alive(std::size_t x, std::size_t y) const { return cells_[y * width_ + x] != 0; }
  /// Throws Error(Validation) for out-of-bounds coordinates.
  void set(std::size_t x, std::size_t y, bool value = true);

  /// Live cells in row-major order.
  std::vector<Cell> alive_cells() const;
  std::size_t population() const;

  bool operator==(const LifeGrid&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> cells_;
};

/// Birth on 3 neighbours, survival on 2 or 3, applied synchronously.
LifeGrid life_step(const LifeGrid& grid);

/// steps+1 grids, starting with the input.
std::vector<LifeGrid> run_life(const LifeGrid& grid, std::size_t steps);

// Plain text: one line per row, '1' alive, '0' dead.
std::string to_text(const LifeGrid& grid);
LifeGrid parse_life_text(const std::string& text);

}  // namespace sysrisk::agents
