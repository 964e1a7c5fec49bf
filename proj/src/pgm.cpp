#include "curveface/pgm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace curveface {

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("write_pgm: cannot open " + path);
    f << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> row(img.width);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double v = std::floor(img.at(x, y) + 0.5);
            row[x] = (unsigned char)(v < 0 ? 0 : (v > 255 ? 255 : v));
        }
        f.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!f) fail("write_pgm: write failed for " + path);
}

namespace {

int next_token(std::istream& in) {
    // skips whitespace and '#' comments, returns the next integer
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value;
    if (!(in >> value)) fail("read_pgm: malformed header");
    return value;
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail("read_pgm: cannot open " + path);
    char m0 = 0, m1 = 0;
    f.get(m0);
    f.get(m1);
    bool binary = (m0 == 'P' && m1 == '5');
    bool ascii = (m0 == 'P' && m1 == '2');
    if (!binary && !ascii) fail("read_pgm: not a P5/P2 file: " + path);
    int w = next_token(f);
    int h = next_token(f);
    int maxval = next_token(f);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        fail("read_pgm: bad dimensions in " + path);
    GrayImage img(w, h);
    if (binary) {
        f.get();  // single whitespace after maxval
        int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(std::size_t(w) * bytes);
        for (int y = 0; y < h; ++y) {
            f.read(reinterpret_cast<char*>(buf.data()), buf.size());
            if (!f) fail("read_pgm: truncated data in " + path);
            for (int x = 0; x < w; ++x) {
                int v = bytes == 1 ? buf[x] : (buf[2 * x] << 8) | buf[2 * x + 1];
                img.at(x, y) = 255.0 * v / maxval;
            }
        }
        if (maxval == 255) {
            // keep 8-bit values exact
            // (the loop above already produced integers; nothing to do)
        }
    } else {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                int v = next_token(f);
                img.at(x, y) = 255.0 * v / maxval;
            }
    }
    return img;
}

}  // namespace curveface
