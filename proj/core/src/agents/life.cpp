#include "sysrisk/agents/life.hpp"

#include <sstream>

#include "sysrisk/error.hpp"

namespace sysrisk::agents {

LifeGrid::LifeGrid(std::size_t width, std::size_t height)
    : width_(width), height_(height), cells_(width * height, 0) {}

LifeGrid::LifeGrid(std::size_t width, std::size_t height, const std::vector<Cell>& alive)
    : LifeGrid(width, height) {
  for (const auto& c : alive) set(c.x, c.y);
}

void LifeGrid::set(std::size_t x, std::size_t y, bool value) {
  if (x >= width_ || y >= height_)
    fail(ErrorCode::Validation, "cell outside the grid", "alive");
  cells_[y * width_ + x] = value ? 1 : 0;
}

std::vector<Cell> LifeGrid::alive_cells() const {
  std::vector<Cell> out;
  for (std::size_t y = 0; y < height_; ++y)
    for (std::size_t x = 0; x < width_; ++x)
      if (alive(x, y)) out.push_back({x, y});
  return out;
}

std::size_t LifeGrid::population() const {
  std::size_t n = 0;
  for (auto c : cells_) n += c;
  return n;
}

LifeGrid life_step(const LifeGrid& grid) {
  const std::size_t w = grid.width(), h = grid.height();
  LifeGrid next(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t y0 = y == 0 ? 0 : y - 1;
    const std::size_t y1 = y + 1 < h ? y + 1 : y;
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t x0 = x == 0 ? 0 : x - 1;
      const std::size_t x1 = x + 1 < w ? x + 1 : x;
      int n = 0;
      for (std::size_t yy = y0; yy <= y1; ++yy)
        for (std::size_t xx = x0; xx <= x1; ++xx) n += grid.alive(xx, yy);
      const bool self = grid.alive(x, y);
      n -= self;
      if (n == 3 || (self && n == 2)) next.set(x, y);
    }
  }
  return next;
}

std::vector<LifeGrid> run_life(const LifeGrid& grid, std::size_t steps) {
  std::vector<LifeGrid> out;
  out.reserve(steps + 1);
  out.push_back(grid);
  for (std::size_t i = 0; i < steps; ++i) out.push_back(life_step(out.back()));
  return out;
}

std::string to_text(const LifeGrid& grid) {
  std::string s;
  s.reserve((grid.width() + 1) * grid.height());
  for (std::size_t y = 0; y < grid.height(); ++y) {
    for (std::size_t x = 0; x < grid.width(); ++x) s.push_back(grid.alive(x, y) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

LifeGrid parse_life_text(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (char c : line)
      if (c != '0' && c != '1') fail(ErrorCode::Validation, "life rows may only hold 0 and 1", "grid");
    if (!rows.empty() && line.size() != rows.front().size())
      fail(ErrorCode::Validation, "life rows must have equal length", "grid");
    rows.push_back(std::move(line));
  }
  if (rows.empty()) fail(ErrorCode::Validation, "life grid text is empty", "grid");
  LifeGrid grid(rows.front().size(), rows.size());
  for (std::size_t y = 0; y < rows.size(); ++y)
    for (std::size_t x = 0; x < rows[y].size(); ++x)
      if (rows[y][x] == '1') grid.set(x, y);
  return grid;
}

}  // namespace sysrisk::agents
