#ifndef CURVEFACE_PGM_HPP
#define CURVEFACE_PGM_HPP

#include <string>

#include "curveface/image.hpp"

namespace curveface {

// Portable graymap I/O. Writing uses binary P5 at maxval 255 (values rounded
// and clamped); reading accepts P5 and P2. 8-bit P5 round-trips bit-exact.
void write_pgm(const GrayImage& img, const std::string& path);
GrayImage read_pgm(const std::string& path);

}  // namespace curveface

#endif
