#include "tendency/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace tendency {

namespace {

std::uint8_t to_byte(double v01) {
  const double scaled = std::floor(v01 * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

RasterImage upscaled(const RasterImage& src, std::size_t factor) {
  if (factor <= 1) return src;
  RasterImage out;
  out.width = src.width * factor;
  out.height = src.height * factor;
  out.channels = src.channels;
  out.pixels.resize(out.width * out.height * out.channels);
  for (std::size_t y = 0; y < out.height; ++y)
    for (std::size_t x = 0; x < out.width; ++x)
      for (std::size_t c = 0; c < out.channels; ++c)
        out.pixels[(y * out.width + x) * out.channels + c] =
            src.pixels[((y / factor) * src.width + x / factor) * src.channels + c];
  return out;
}

}  // namespace

RasterImage render_grayscale(const Matrix& m, std::size_t upscale) {
  validate_rect(m, RectKind::generic);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : m.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  RasterImage img;
  img.width = m.cols;
  img.height = m.rows;
  img.channels = 1;
  img.pixels.resize(m.rows * m.cols, 0);
  if (hi > lo) {
    const double span = hi - lo;
    for (std::size_t i = 0; i < m.values.size(); ++i)
      img.pixels[i] = to_byte((m.values[i] - lo) / span);
  }
  return upscaled(img, upscale);
}

RasterImage render_performance(const Matrix& m, std::size_t upscale) {
  RasterImage img;
  img.width = m.cols;
  img.height = m.rows;
  img.channels = 3;
  img.pixels.resize(m.rows * m.cols * 3, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double v = m.at(i, j);
      std::uint8_t* px = &img.pixels[(i * m.cols + j) * 3];
      if (v == -1.0) {
        px[2] = 255;  // blue: no data
      } else if (v >= 0.0 && v <= 0.5) {
        px[0] = to_byte(v * 2.0);  // green -> yellow
        px[1] = 255;
      } else if (v > 0.5 && v <= 1.0) {
        px[0] = 255;  // yellow -> red
        px[1] = to_byte((1.0 - v) * 2.0);
      } else {
        throw DataError("performance cell (" + std::to_string(i) + "," +
                        std::to_string(j) + ") = " + std::to_string(v) +
                        " is outside {-1} U [0,1]");
      }
    }
  }
  return upscaled(img, upscale);
}

void write_pnm(const RasterImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << (img.channels == 3 ? "P6" : "P5") << '\n'
      << img.width << ' ' << img.height << '\n'
      << "255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw DataError("write failed: " + path);
}

RasterImage read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P6") throw DataError(path + ": not a P5/P6 file");
  std::size_t w = 0, h = 0, maxval = 0;
  in >> w >> h >> maxval;
  if (!in || maxval != 255) throw DataError(path + ": unsupported PNM header");
  in.get();  // single whitespace after maxval
  RasterImage img;
  img.width = w;
  img.height = h;
  img.channels = magic == "P6" ? 3 : 1;
  img.pixels.resize(w * h * img.channels);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
    throw DataError(path + ": truncated pixel data");
  return img;
}

}  // namespace tendency
