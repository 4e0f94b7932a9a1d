#ifndef TENDENCY_IMAGING_HPP
#define TENDENCY_IMAGING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tendency/matrix.hpp"

namespace tendency {

struct RasterImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;  // 1 = gray, 3 = rgb
  std::vector<std::uint8_t> pixels;  // row-major, channels interleaved
};

/// Linear grayscale: the minimum entry maps to 0 (black), the maximum to
/// 255 (white); a constant matrix renders all black. One cell per pixel,
/// optionally repeated `upscale` times along both axes.
RasterImage render_grayscale(const Matrix& m, std::size_t upscale = 1);

/// Performance colormap: -1 (no data) is blue; 0..1 ramps linearly from
/// green through yellow (at 0.5) to red. Values outside {-1} U [0,1] are
/// rejected with the offending cell named.
RasterImage render_performance(const Matrix& m, std::size_t upscale = 1);

/// Binary netpbm encoders: P5 for grayscale, P6 for rgb.
/// Header is exactly "P5\n<w> <h>\n255\n" followed by raw samples.
void write_pnm(const RasterImage& img, const std::string& path);
RasterImage read_pnm(const std::string& path);

}  // namespace tendency

#endif
