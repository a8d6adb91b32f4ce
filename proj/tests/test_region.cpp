#include <doctest.h>
#include <tflg/region.hpp>

#include <cmath>

using namespace tflg;

namespace {

int brute_disk_count(int L, TFPoint c, double r, bool closed)
{
    int n = 0;
    for (int x = 0; x < L; ++x)
        for (int w = 0; w < L; ++w) {
            int dx = std::abs(x - c.x) % L, dw = std::abs(w - c.w) % L;
            dx = std::min(dx, L - dx);
            dw = std::min(dw, L - dw);
            const double d = std::hypot(dx, dw);
            n += closed ? d <= r : d < r;
        }
    return n;
}

} // namespace

TEST_CASE("disk areas match brute-force lattice counts, strict and closed")
{
    const int L = 96;
    for (double r : {0.5, 1.0, 5.0, 10.0, 20.0, 47.9}) {
        for (TFPoint c : {TFPoint{48, 48}, TFPoint{0, 3}, TFPoint{95, 90}}) {
            CHECK(region_disk(L, c, r).area() == static_cast<std::size_t>(brute_disk_count(L, c, r, false)));
            CHECK(region_disk(L, c, r, Boundary::closed).area() ==
                  static_cast<std::size_t>(brute_disk_count(L, c, r, true)));
        }
    }
    CHECK(region_disk(L, {0, 0}, 1).area() == 1);
    CHECK(region_disk(L, {0, 0}, 1, Boundary::closed).area() == 5);
    CHECK(region_disk(480, {240, 240}, 80).area() == 20069);
    CHECK(region_disk(480, {240, 240}, 80, Boundary::closed).area() == 20081);
}

TEST_CASE("disks wrap around the torus")
{
    const Region d = region_disk(32, {0, 0}, 3);
    CHECK(d(31, 31));
    CHECK(d(-2, 2));
    CHECK_FALSE(d(3, 0));
    CHECK(d == region_disk(32, {32, -32}, 3));
    CHECK(torus_distance({0, 0}, {31, 31}, 32) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rectangles are half open and cyclic")
{
    const Region r = region_rect(20, 18, 23, 0, 4);
    CHECK(r.area() == 20);
    CHECK(r(19, 3));
    CHECK(r(2, 0));
    CHECK_FALSE(r(3, 0));
    CHECK_FALSE(r(18, 4));
    CHECK(region_rect(20, 0, 20, 0, 20) == Region::full(20));
    CHECK(region_rect(20, 5, 5, 0, 20).empty());
}

TEST_CASE("polygons sharing edges partition their cells")
{
    const int L = 40;
    const std::vector<std::array<double, 2>> square{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    const Region sq = region_polygon(L, square);
    CHECK(sq == region_rect(L, 0, 10, 0, 10));

    const Region t1 = region_polygon(L, {{0, 0}, {10, 0}, {10, 10}});
    const Region t2 = region_polygon(L, {{0, 0}, {10, 10}, {0, 10}});
    CHECK((t1 & t2).empty());
    CHECK((t1 | t2) == sq);

    // straddling the seam: unwrapped coordinates beyond L fold back
    const Region a = region_polygon(L, {{35, 0}, {45, 0}, {45, 5}, {35, 5}});
    CHECK(a == region_rect(L, 35, 45, 0, 5));
}

TEST_CASE("dilation, translation and subsets")
{
    const int L = 30;
    const Region r = region_rect(L, 10, 12, 4, 5);
    const Region d = r.dilate(2);
    CHECK(d == region_rect(L, 8, 14, 2, 7));
    CHECK(r.subset_of(d));
    CHECK_FALSE(d.subset_of(r));
    CHECK(r.translated({25, -5}) == region_rect(L, 35, 37, -1, 0));
    CHECK(Region::full(L).dilate(3) == Region::full(L));
}

TEST_CASE("distance field matches brute force")
{
    const int L = 24;
    const Region r = region_disk(L, {3, 20}, 4) | region_rect(L, 14, 16, 5, 9);
    const auto field = distance_field(r);
    for (int x = 0; x < L; ++x)
        for (int w = 0; w < L; ++w) {
            double best = 1e9;
            for (int u = 0; u < L; ++u)
                for (int v = 0; v < L; ++v)
                    if (r(u, v)) best = std::min(best, torus_distance({x, w}, {u, v}, L));
            CHECK(field[static_cast<std::size_t>(x) * L + w] == doctest::Approx(best));
        }
}

TEST_CASE("coverage count sums indicators")
{
    const int L = 10;
    const auto c = coverage_count({region_rect(L, 0, 5, 0, 10), region_rect(L, 3, 10, 0, 10), Region::full(L)});
    CHECK(c[0] == 2);
    CHECK(c[4 * L] == 3);
    CHECK(c[9 * L + 9] == 2);
}

TEST_CASE("RLE and PBM round trips")
{
    const int L = 37;
    const Region r = region_disk(L, {30, 4}, 9) | region_rect(L, 2, 5, 10, 30);
    CHECK(from_rle(to_rle(r)) == r);
    CHECK(from_pbm(to_pbm(r)) == r);
    CHECK(from_rle(to_rle(Region(L))) == Region(L));

    // top row of the image is the highest frequency
    Region one(4);
    one.set(1, 3, true);
    CHECK(to_pbm(one) == "P1\n4 4\n0100000000000000\n");
    CHECK(from_pbm("P1\n# comment\n4 4\n0100\n0000\n0000\n0000\n") == one);
}

TEST_CASE("malformed mask text is rejected")
{
    CHECK_THROWS(from_rle("RLX 4\n"));
    CHECK_THROWS(from_rle("RLE 4\n0 3 5\n"));
    CHECK_THROWS(from_pbm("P2\n2 2\n0 0 0 0\n"));
    CHECK_THROWS(from_pbm("P1\n3 2\n0 0 0 0 0 0\n"));
    CHECK_THROWS(from_pbm("P1\n2 2\n0 0 0\n"));
}
