// kerrshadow RGB image buffer and binary PPM (P6) I/O

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kerr {

struct Rgb
{
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb &, const Rgb &) = default;
};

// Row-major from the top-left pixel
class Image
{
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool contains(int i, int j) const noexcept
  {
    return i >= 0 && j >= 0 && i < width_ && j < height_;
  }

  Rgb &at(int i, int j) { return pixels_[index(i, j)]; }
  const Rgb &at(int i, int j) const { return pixels_[index(i, j)]; }
  const std::vector<Rgb> &pixels() const noexcept { return pixels_; }

  friend bool operator==(const Image &, const Image &) = default;

 private:
  std::size_t index(int i, int j) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

// Header "P6\n<width> <height>\n255\n" followed by RGB triples
void write_ppm(std::ostream &out, const Image &image);
void write_ppm(const std::string &path, const Image &image);
Image read_ppm(std::istream &in);
Image read_ppm(const std::string &path);

}  // namespace kerr
