// kerrshadow RGB image buffer and binary PPM (P6) I/O

#include <fstream>
#include <istream>
#include <ostream>

#include "kerr/errors.hpp"
#include "kerr/ppm.hpp"

namespace kerr {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height)
{
  if (width <= 0 || height <= 0)
    throw DomainError("image dimensions must be positive, got " + std::to_string(width) + "x"
                      + std::to_string(height));
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

std::size_t Image::index(int i, int j) const
{
  if (!contains(i, j))
    throw DomainError("pixel (" + std::to_string(i) + ", " + std::to_string(j)
                      + ") outside the image");
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_)
         + static_cast<std::size_t>(i);
}

void write_ppm(std::ostream &out, const Image &image)
{
  out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
  for (const Rgb &p : image.pixels())
  {
    const char rgb[3] = {static_cast<char>(p.r), static_cast<char>(p.g), static_cast<char>(p.b)};
    out.write(rgb, 3);
  }
  if (!out)
    throw Error("failed writing PPM data");
}

void write_ppm(const std::string &path, const Image &image)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot open " + path + " for writing");
  write_ppm(out, image);
}

Image read_ppm(std::istream &in)
{
  std::string magic;
  int width = 0;
  int height = 0;
  int max_value = 0;
  in >> magic >> width >> height >> max_value;
  if (!in || magic != "P6" || max_value != 255)
    throw Error("not an 8-bit binary PPM");
  in.get();  // single whitespace after the header
  Image image(width, height);
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i)
    {
      char rgb[3];
      if (!in.read(rgb, 3))
        throw Error("truncated PPM data");
      image.at(i, j) = {static_cast<std::uint8_t>(rgb[0]), static_cast<std::uint8_t>(rgb[1]),
                        static_cast<std::uint8_t>(rgb[2])};
    }
  return image;
}

Image read_ppm(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open " + path);
  return read_ppm(in);
}

}  // namespace kerr
