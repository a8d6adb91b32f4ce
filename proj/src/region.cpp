#include <tflg/errors.hpp>
#include <tflg/region.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tflg {

Region::Region(int L)
    : _L(L), _mask(static_cast<std::size_t>(L) * L, 0)
{
    if (L <= 0) throw precondition_error("Region: L must be positive");
}

Region Region::full(int L)
{
    Region r(L);
    std::fill(r._mask.begin(), r._mask.end(), 1);
    r._area = r._mask.size();
    return r;
}

Region Region::from_mask(int L, std::vector<std::uint8_t> mask)
{
    Region r(L);
    if (mask.size() != r._mask.size()) throw precondition_error("Region: mask size must be L*L");
    for (auto& m : mask) m = m ? 1 : 0;
    r._mask = std::move(mask);
    r._area = static_cast<std::size_t>(std::count(r._mask.begin(), r._mask.end(), 1));
    return r;
}

void Region::set(int x, int w, bool v)
{
    auto& m = _mask[static_cast<std::size_t>(wrap(x, _L)) * _L + wrap(w, _L)];
    if (m != v) {
        _area = v ? _area + 1 : _area - 1;
        m = v;
    }
}

Region Region::dilate(int amount) const
{
    if (amount < 0) throw precondition_error("Region::dilate: negative amount");
    if (amount == 0 || empty()) return *this;
    const int L = _L;
    std::vector<std::uint8_t> tmp(_mask.size(), 0), out(_mask.size(), 0);
    // along time
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            if (!_mask[static_cast<std::size_t>(x) * L + w]) continue;
            for (int d = -amount; d <= amount; ++d) tmp[static_cast<std::size_t>(wrap(x + d, L)) * L + w] = 1;
        }
    }
    // along frequency
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            if (!tmp[static_cast<std::size_t>(x) * L + w]) continue;
            for (int d = -amount; d <= amount; ++d) out[static_cast<std::size_t>(x) * L + wrap(w + d, L)] = 1;
        }
    }
    return from_mask(L, std::move(out));
}

Region Region::translated(TFPoint z) const
{
    Region r(_L);
    for (int x = 0; x < _L; ++x) {
        for (int w = 0; w < _L; ++w) {
            if ((*this)(x, w)) r.set(x + z.x, w + z.w, true);
        }
    }
    return r;
}

bool Region::subset_of(const Region& other) const
{
    if (other._L != _L) throw precondition_error("Region: size mismatch");
    for (std::size_t i = 0; i < _mask.size(); ++i) {
        if (_mask[i] && !other._mask[i]) return false;
    }
    return true;
}

Region operator|(const Region& a, const Region& b)
{
    if (a._L != b._L) throw precondition_error("Region: size mismatch");
    std::vector<std::uint8_t> m(a._mask.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = a._mask[i] | b._mask[i];
    return Region::from_mask(a._L, std::move(m));
}

Region operator&(const Region& a, const Region& b)
{
    if (a._L != b._L) throw precondition_error("Region: size mismatch");
    std::vector<std::uint8_t> m(a._mask.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = a._mask[i] & b._mask[i];
    return Region::from_mask(a._L, std::move(m));
}

double torus_distance(TFPoint a, TFPoint b, int L)
{
    const double dx = symmetric_rep(static_cast<long long>(a.x) - b.x, L);
    const double dw = symmetric_rep(static_cast<long long>(a.w) - b.w, L);
    return std::sqrt(dx * dx + dw * dw);
}

Region region_disk(int L, TFPoint center, double radius, Boundary boundary)
{
    if (!(radius >= 0)) throw precondition_error("region_disk: radius must be non-negative");
    Region r(L);
    const double r2 = radius * radius;
    for (int x = 0; x < L; ++x) {
        const double dx = symmetric_rep(static_cast<long long>(x) - center.x, L);
        for (int w = 0; w < L; ++w) {
            const double dw = symmetric_rep(static_cast<long long>(w) - center.w, L);
            const double d2 = dx * dx + dw * dw;
            const bool in = boundary == Boundary::strict ? d2 < r2 : d2 <= r2;
            if (in) r.set(x, w, true);
        }
    }
    return r;
}

Region region_rect(int L, int x0, int x1, int w0, int w1)
{
    if (x1 < x0 || w1 < w0) throw precondition_error("region_rect: expected x0 <= x1 and w0 <= w1");
    Region r(L);
    const int nx = std::min(x1 - x0, L);
    const int nw = std::min(w1 - w0, L);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nw; ++j) r.set(x0 + i, w0 + j, true);
    }
    return r;
}

namespace {

bool inside_polygon(const std::vector<std::array<double, 2>>& v, double px, double py)
{
    bool in = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        // canonical orientation so shared edges evaluate identically
        const auto* lo = &v[i];
        const auto* hi = &v[j];
        if ((*lo)[1] == (*hi)[1]) continue;
        if ((*lo)[1] > (*hi)[1]) std::swap(lo, hi);
        if (!((*lo)[1] <= py && py < (*hi)[1])) continue;
        const double xi = (*lo)[0] + (py - (*lo)[1]) * ((*hi)[0] - (*lo)[0]) / ((*hi)[1] - (*lo)[1]);
        if (px < xi) in = !in;
    }
    return in;
}

} // namespace

Region region_polygon(int L, const std::vector<std::array<double, 2>>& vertices)
{
    if (vertices.size() < 3) throw precondition_error("region_polygon: need at least 3 vertices");
    double xmin = vertices[0][0], xmax = xmin, ymin = vertices[0][1], ymax = ymin;
    for (const auto& p : vertices) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw precondition_error("region_polygon: non-finite vertex");
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    Region r(L);
    for (int x = static_cast<int>(std::floor(xmin)); x <= static_cast<int>(std::ceil(xmax)); ++x) {
        for (int w = static_cast<int>(std::floor(ymin)); w <= static_cast<int>(std::ceil(ymax)); ++w) {
            if (inside_polygon(vertices, x, w)) r.set(x, w, true);
        }
    }
    return r;
}

std::vector<double> distance_field(const Region& r)
{
    const int L = r.L();
    std::vector<double> dist(static_cast<std::size_t>(L) * L, std::numeric_limits<double>::infinity());
    if (r.empty()) return dist;

    std::vector<TFPoint> boundary;
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            if (!r(x, w)) continue;
            if (!r(x - 1, w) || !r(x + 1, w) || !r(x, w - 1) || !r(x, w + 1)) boundary.push_back({x, w});
        }
    }
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            double& d = dist[static_cast<std::size_t>(x) * L + w];
            if (r(x, w)) {
                d = 0;
                continue;
            }
            double best = std::numeric_limits<double>::infinity();
            for (const auto& b : boundary) {
                const double dx = symmetric_rep(static_cast<long long>(x) - b.x, L);
                const double dw = symmetric_rep(static_cast<long long>(w) - b.w, L);
                best = std::min(best, dx * dx + dw * dw);
            }
            d = std::sqrt(best);
        }
    }
    return dist;
}

std::vector<int> coverage_count(const std::vector<Region>& regions)
{
    if (regions.empty()) return {};
    const int L = regions.front().L();
    std::vector<int> sum(static_cast<std::size_t>(L) * L, 0);
    for (const auto& r : regions) {
        if (r.L() != L) throw precondition_error("coverage_count: size mismatch");
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r.mask()[i];
    }
    return sum;
}

std::string to_rle(const Region& r)
{
    std::ostringstream os;
    const int L = r.L();
    os << "RLE " << L << '\n';
    for (int x = 0; x < L; ++x) {
        std::ostringstream row;
        bool any = false;
        int w = 0;
        while (w < L) {
            if (!r(x, w)) {
                ++w;
                continue;
            }
            int len = 0;
            while (w + len < L && r(x, w + len)) ++len;
            row << ' ' << w << ' ' << len;
            any = true;
            w += len;
        }
        if (any) os << x << row.str() << '\n';
    }
    return os.str();
}

Region from_rle(const std::string& text)
{
    std::istringstream is(text);
    std::string tag;
    int L = 0;
    if (!(is >> tag >> L) || tag != "RLE" || L <= 0) throw precondition_error("from_rle: bad header");
    Region r(L);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        int x;
        if (!(ls >> x)) continue;
        if (x < 0 || x >= L) throw precondition_error("from_rle: row out of range");
        int start, len;
        while (ls >> start >> len) {
            if (start < 0 || len < 0 || start + len > L) throw precondition_error("from_rle: run out of range");
            for (int k = 0; k < len; ++k) r.set(x, start + k, true);
        }
    }
    return r;
}

std::string to_pbm(const Region& r)
{
    std::ostringstream os;
    const int L = r.L();
    os << "P1\n" << L << ' ' << L << '\n';
    int col = 0;
    for (int w = L - 1; w >= 0; --w) {
        for (int x = 0; x < L; ++x) {
            os << (r(x, w) ? '1' : '0');
            if (++col == 70) {
                os << '\n';
                col = 0;
            }
        }
    }
    if (col != 0) os << '\n';
    return os.str();
}

Region from_pbm(const std::string& text)
{
    std::istringstream is(text);
    auto next_token = [&]() {
        std::string tok;
        while (is >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(is, rest);
                continue;
            }
            return tok;
        }
        throw precondition_error("from_pbm: truncated header");
    };
    if (next_token() != "P1") throw precondition_error("from_pbm: only plain P1 supported");
    const int width = std::stoi(next_token());
    const int height = std::stoi(next_token());
    if (width != height || width <= 0) throw precondition_error("from_pbm: image must be square");
    const int L = width;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(L) * L, 0);
    std::size_t k = 0;
    const std::size_t total = mask.size();
    char c;
    while (k < total && is.get(c)) {
        if (c == '#') {
            std::string rest;
            std::getline(is, rest);
            continue;
        }
        if (c != '0' && c != '1') continue;
        const int row = static_cast<int>(k / L);
        const int x = static_cast<int>(k % L);
        const int w = L - 1 - row;
        mask[static_cast<std::size_t>(x) * L + w] = c == '1';
        ++k;
    }
    if (k != total) throw precondition_error("from_pbm: truncated raster");
    return Region::from_mask(L, std::move(mask));
}

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw precondition_error("cannot write " + path);
    out << text;
}

} // namespace

void write_rle(const std::string& path, const Region& r) { spit(path, to_rle(r)); }
Region read_rle(const std::string& path) { return from_rle(slurp(path)); }
void write_pbm(const std::string& path, const Region& r) { spit(path, to_pbm(r)); }
Region read_pbm(const std::string& path) { return from_pbm(slurp(path)); }

} // namespace tflg
