#include "doctest.h"

#include <cstdio>
#include <random>

#include "curveface/image.hpp"
#include "curveface/pgm.hpp"
#include "oracles.hpp"

using namespace curveface;

TEST_CASE("rgb_to_gray averages channels") {
    RgbImage img(3, 2);
    for (std::size_t i = 0; i < img.r.size(); ++i) {
        img.r[i] = 30;
        img.g[i] = 60;
        img.b[i] = 90;
    }
    GrayImage g = rgb_to_gray(img);
    for (double v : g.data) CHECK(v == doctest::Approx(60.0));

    // equal channels pass through
    img.r[2] = img.g[2] = img.b[2] = 123.5;
    CHECK(rgb_to_gray(img).data[2] == doctest::Approx(123.5));
}

TEST_CASE("rgb_to_gray matches per-pixel oracle on random image") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(0, 255);
    RgbImage img(17, 9);
    for (std::size_t i = 0; i < img.r.size(); ++i) {
        img.r[i] = d(rng);
        img.g[i] = d(rng);
        img.b[i] = d(rng);
    }
    GrayImage g = rgb_to_gray(img);
    for (std::size_t i = 0; i < g.data.size(); ++i)
        CHECK(g.data[i] == doctest::Approx((img.r[i] + img.g[i] + img.b[i]) / 3.0).epsilon(1e-12));
}

TEST_CASE("rgb_to_gray is idempotent through gray") {
    GrayImage g = oracles::random_image(8, 8, 5);
    RgbImage rgb(8, 8);
    for (std::size_t i = 0; i < g.data.size(); ++i) rgb.r[i] = rgb.g[i] = rgb.b[i] = g.data[i];
    GrayImage g2 = rgb_to_gray(rgb);
    for (std::size_t i = 0; i < g.data.size(); ++i) CHECK(g2.data[i] == doctest::Approx(g.data[i]));
}

TEST_CASE("median_filter basics") {
    GrayImage c(6, 6, 42.0);
    GrayImage fc = median_filter(c, 1);
    for (double v : fc.data) CHECK(v == 42.0);

    GrayImage imp(5, 5, 0.0);
    imp.at(2, 2) = 255.0;
    GrayImage fi = median_filter(imp, 1);
    CHECK(fi.at(2, 2) == 0.0);

    // radius 0 is the identity
    GrayImage r = oracles::random_image(4, 4, 3);
    GrayImage f0 = median_filter(r, 0);
    for (std::size_t i = 0; i < r.data.size(); ++i) CHECK(f0.data[i] == r.data[i]);
}

TEST_CASE("median_filter matches sort oracle on random 16x16") {
    GrayImage img = oracles::random_image(16, 16, 77);
    for (int radius : {1, 2}) {
        GrayImage f = median_filter(img, radius);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                CHECK(f.at(x, y) == oracles::median_at(img, x, y, radius));
    }
}

TEST_CASE("median_filter output stays within window min/max") {
    GrayImage img = oracles::random_image(12, 12, 99);
    GrayImage f = median_filter(img, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double lo = 1e300, hi = -1e300;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    double v = img.at(clampi(x + dx, 0, 11), clampi(y + dy, 0, 11));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            CHECK(f.at(x, y) >= lo);
            CHECK(f.at(x, y) <= hi);
        }
}

TEST_CASE("crop identity, single pixel, offsets, composition") {
    GrayImage img = oracles::random_image(10, 7, 21);
    GrayImage all = crop(img, {0, 0, 10, 7});
    for (std::size_t i = 0; i < img.data.size(); ++i) CHECK(all.data[i] == img.data[i]);

    GrayImage one = crop(img, {0, 0, 1, 1});
    CHECK(one.width == 1);
    CHECK(one.at(0, 0) == img.at(0, 0));

    CropRect r{3, 2, 5, 4};
    GrayImage c = crop(img, r);
    for (int y = 0; y < r.h; ++y)
        for (int x = 0; x < r.w; ++x) CHECK(c.at(x, y) == img.at(r.x + x, r.y + y));

    // crop of crop equals composed crop
    GrayImage c2 = crop(c, {1, 1, 3, 2});
    GrayImage composed = crop(img, {4, 3, 3, 2});
    for (std::size_t i = 0; i < c2.data.size(); ++i) CHECK(c2.data[i] == composed.data[i]);

    CHECK_THROWS(crop(img, {8, 0, 5, 3}));
    CHECK_THROWS(crop(img, {-1, 0, 2, 2}));
}

TEST_CASE("resize_to identity, constant, bilinear oracle") {
    GrayImage img = oracles::random_image(9, 6, 31);
    GrayImage same = resize_to(img, 9, 6);
    for (std::size_t i = 0; i < img.data.size(); ++i) CHECK(same.data[i] == img.data[i]);

    GrayImage c(5, 5, 7.25);
    GrayImage cu = resize_to(c, 13, 3);
    for (double v : cu.data) CHECK(v == doctest::Approx(7.25));

    GrayImage checker(2, 2);
    checker.at(0, 0) = 0;
    checker.at(1, 0) = 255;
    checker.at(0, 1) = 255;
    checker.at(1, 1) = 0;
    GrayImage up = resize_to(checker, 4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            CHECK(up.at(x, y) == doctest::Approx(oracles::bilinear_at(checker, x, y, 4, 4)));
}

TEST_CASE("pgm round trip is bit exact for 8-bit data") {
    GrayImage img(23, 11);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> d(0, 255);
    for (auto& v : img.data) v = double(d(rng));
    std::string path = "test_roundtrip.pgm";
    write_pgm(img, path);
    GrayImage back = read_pgm(path);
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) CHECK(back.data[i] == img.data[i]);
    std::remove(path.c_str());
}

TEST_CASE("pgm reads ascii P2") {
    std::string path = "test_ascii.pgm";
    {
        FILE* f = fopen(path.c_str(), "w");
        fprintf(f, "P2\n# comment\n3 2\n255\n0 128 255\n10 20 30\n");
        fclose(f);
    }
    GrayImage img = read_pgm(path);
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.at(1, 0) == 128.0);
    CHECK(img.at(2, 1) == 30.0);
    std::remove(path.c_str());
}

TEST_CASE("normalize_to_gray maps min/max to 0/255") {
    std::vector<double> v{-2.0, 0.0, 2.0};
    GrayImage g = normalize_to_gray(v, 3, 1);
    CHECK(g.at(0, 0) == doctest::Approx(0.0));
    CHECK(g.at(1, 0) == doctest::Approx(127.5));
    CHECK(g.at(2, 0) == doctest::Approx(255.0));
    // constant input maps to zeros
    std::vector<double> c{5.0, 5.0};
    GrayImage gc = normalize_to_gray(c, 2, 1);
    CHECK(gc.at(0, 0) == 0.0);
    CHECK(gc.at(1, 0) == 0.0);
}
