#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>
#include <tflg/types.hpp>

namespace tflg {

/// Boolean mask on the L x L time-frequency grid, indexed (x, w).
class Region
{
    int _L = 0;
    std::vector<std::uint8_t> _mask;   // row-major: x * L + w
    std::size_t _area = 0;

public:
    Region() = default;
    explicit Region(int L);   // empty region

    static Region full(int L);
    static Region from_mask(int L, std::vector<std::uint8_t> mask);

    int L() const { return _L; }
    std::size_t area() const { return _area; }
    bool empty() const { return _area == 0; }

    bool operator()(int x, int w) const { return _mask[static_cast<std::size_t>(wrap(x, _L)) * _L + wrap(w, _L)] != 0; }
    bool contains(TFPoint z) const { return (*this)(z.x, z.w); }
    void set(int x, int w, bool v);

    const std::vector<std::uint8_t>& mask() const { return _mask; }

    /// Box dilation: every side grows by `amount` cells at each end, cyclically.
    Region dilate(int amount) const;
    Region translated(TFPoint z) const;

    bool subset_of(const Region& other) const;

    friend Region operator|(const Region& a, const Region& b);
    friend Region operator&(const Region& a, const Region& b);
    friend bool operator==(const Region& a, const Region& b) { return a._L == b._L && a._mask == b._mask; }
};

enum class Boundary
{
    strict,   // distance < radius
    closed    // distance <= radius
};

/// Toroidal distance between grid points, symmetric representatives.
double torus_distance(TFPoint a, TFPoint b, int L);

Region region_disk(int L, TFPoint center, double radius, Boundary boundary = Boundary::strict);

/// Cyclic product [x0, x1) x [w0, w1); requires x0 <= x1, w0 <= w1 (any integers).
Region region_rect(int L, int x0, int x1, int w0, int w1);

/**
 * Polygon in unwrapped TF coordinates; integer points inside it are wrapped
 * onto the grid. Crossing-number test with half-open edges, so polygons
 * sharing edges partition the cells they cover.
 */
Region region_polygon(int L, const std::vector<std::array<double, 2>>& vertices);

/// Euclidean toroidal distance from every cell to the nearest cell of r (0 inside).
std::vector<double> distance_field(const Region& r);

/// Pointwise sum of indicator functions.
std::vector<int> coverage_count(const std::vector<Region>& regions);

// Run-length text format:
//   RLE <L>
//   <x> <start> <length> [<start> <length> ...]    one line per non-empty row
std::string to_rle(const Region& r);
Region from_rle(const std::string& text);
void write_rle(const std::string& path, const Region& r);
Region read_rle(const std::string& path);

/// Plain PBM (P1): columns are time, rows are frequency with w = L-1 on top.
std::string to_pbm(const Region& r);
Region from_pbm(const std::string& text);
void write_pbm(const std::string& path, const Region& r);
Region read_pbm(const std::string& path);

} // namespace tflg
