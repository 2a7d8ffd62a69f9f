#include "vfdeg/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vfdeg/errors.hpp"
#include "vfdeg/linalg.hpp"

namespace vfdeg {

namespace {

double dist_to(std::span<const double> p, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - c[i]) * (p[i] - c[i]);
    return std::sqrt(s);
}

// Distance from p to an axis-aligned rectangle (a cube face): the face spans
// the cube on every axis except `axis`, where it is pinned.
double face_distance(const BoundaryFace& bf, double h, std::span<const double> p) {
    double s = 0.0;
    for (std::size_t a = 0; a < bf.cube.size(); ++a) {
        double lo = bf.cube[a] * h, hi = (bf.cube[a] + 1) * h;
        if (static_cast<int>(a) == bf.axis) lo = hi = (bf.cube[a] + (bf.sign > 0 ? 1 : 0)) * h;
        double d = p[a] < lo ? lo - p[a] : (p[a] > hi ? p[a] - hi : 0.0);
        s += d * d;
    }
    return std::sqrt(s);
}

std::vector<double> parse_csv(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        std::string item = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (item.empty()) throw input_error("region: empty number in '" + text + "'");
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size())
            throw input_error("region: bad number '" + item + "'");
        out.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string join(const std::vector<double>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

} // namespace

Region Region::ball(std::vector<double> c, double r) {
    if (r <= 0.0) throw input_error("ball radius must be positive");
    Region R;
    R.kind = Kind::Ball;
    R.n = static_cast<int>(c.size());
    R.center = std::move(c);
    R.radius = r;
    return R;
}

Region Region::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size()) throw input_error("box corners must have equal dimension");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw input_error("box needs lo < hi on every axis");
    Region R;
    R.kind = Kind::Box;
    R.n = static_cast<int>(lo.size());
    R.lo = std::move(lo);
    R.hi = std::move(hi);
    return R;
}

Region Region::shell(std::vector<double> c, double rin, double rout) {
    if (!(0.0 < rin && rin < rout)) throw input_error("shell needs 0 < rin < rout");
    Region R;
    R.kind = Kind::Shell;
    R.n = static_cast<int>(c.size());
    R.center = std::move(c);
    R.rin = rin;
    R.rout = rout;
    return R;
}

Region Region::cubeset(CubeSet cs) {
    Region R;
    R.kind = Kind::Cubes;
    R.n = cs.n;
    R.cubes = std::move(cs);
    return R;
}

bool Region::contains(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != n) throw input_error("point dimension does not match region");
    switch (kind) {
        case Kind::Ball: return dist_to(p, center) <= radius;
        case Kind::Shell: {
            double d = dist_to(p, center);
            return rin <= d && d <= rout;
        }
        case Kind::Box:
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] < lo[i] || p[i] > hi[i]) return false;
            return true;
        case Kind::Cubes: {
            std::vector<int> c(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                c[i] = static_cast<int>(std::floor(p[i] / cubes.h));
            return cubes.member(c);
        }
    }
    return false;
}

double Region::boundary_distance(std::span<const double> p) const {
    switch (kind) {
        case Kind::Ball: return radius - dist_to(p, center);
        case Kind::Shell: {
            double d = dist_to(p, center);
            return std::min(d - rin, rout - d);
        }
        case Kind::Box: {
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < p.size(); ++i)
                m = std::min({m, p[i] - lo[i], hi[i] - p[i]});
            return m;
        }
        case Kind::Cubes: {
            double m = std::numeric_limits<double>::infinity();
            for (const auto& bf : boundary_faces(cubes))
                m = std::min(m, face_distance(bf, cubes.h, p));
            return contains(p) ? m : -m;
        }
    }
    return 0.0;
}

int Region::boundary_component_count() const {
    switch (kind) {
        case Kind::Ball: return 1;
        case Kind::Shell: return 2;
        case Kind::Box: return 1;
        case Kind::Cubes: return -1; // derived from the face structure by callers
    }
    return 0;
}

double Region::boundary_component_distance(int component, std::span<const double> p) const {
    switch (kind) {
        case Kind::Ball: return std::abs(dist_to(p, center) - radius);
        case Kind::Shell:
            return component == 0 ? std::abs(dist_to(p, center) - rout)
                                  : std::abs(dist_to(p, center) - rin);
        case Kind::Box: return std::abs(boundary_distance(p));
        case Kind::Cubes: throw input_error("component distance is not defined for cube sets");
    }
    return 0.0;
}

std::pair<std::vector<double>, std::vector<double>> Region::bbox() const {
    std::vector<double> l(static_cast<std::size_t>(n)), h(static_cast<std::size_t>(n));
    switch (kind) {
        case Kind::Ball:
        case Kind::Shell: {
            double r = kind == Kind::Ball ? radius : rout;
            for (int i = 0; i < n; ++i) {
                l[static_cast<std::size_t>(i)] = center[static_cast<std::size_t>(i)] - r;
                h[static_cast<std::size_t>(i)] = center[static_cast<std::size_t>(i)] + r;
            }
            break;
        }
        case Kind::Box:
            l = lo;
            h = hi;
            break;
        case Kind::Cubes: {
            if (cubes.cells.empty()) throw input_error("empty cube set has no bounding box");
            std::vector<int> ilo = *cubes.cells.begin(), ihi = ilo;
            for (const auto& c : cubes.cells)
                for (int a = 0; a < n; ++a) {
                    ilo[static_cast<std::size_t>(a)] = std::min(ilo[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(a)]);
                    ihi[static_cast<std::size_t>(a)] = std::max(ihi[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(a)]);
                }
            for (int a = 0; a < n; ++a) {
                l[static_cast<std::size_t>(a)] = ilo[static_cast<std::size_t>(a)] * cubes.h;
                h[static_cast<std::size_t>(a)] = (ihi[static_cast<std::size_t>(a)] + 1) * cubes.h;
            }
            break;
        }
    }
    return {l, h};
}

double Region::diameter() const {
    auto [l, h] = bbox();
    double s = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) s += (h[i] - l[i]) * (h[i] - l[i]);
    return std::sqrt(s);
}

Region parse_region(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t next = spec.find(':', pos);
        parts.push_back(spec.substr(pos, next == std::string::npos ? next : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.empty()) throw input_error("empty region spec");
    const std::string& kind = parts[0];
    if (kind == "ball") {
        if (parts.size() != 3) throw input_error("ball spec is ball:cx,cy[,cz]:r");
        return Region::ball(parse_csv(parts[1]), parse_csv(parts[2]).at(0));
    }
    if (kind == "box") {
        if (parts.size() != 3) throw input_error("box spec is box:lo1,lo2[,lo3]:hi1,hi2[,hi3]");
        return Region::box(parse_csv(parts[1]), parse_csv(parts[2]));
    }
    if (kind == "shell") {
        if (parts.size() != 4) throw input_error("shell spec is shell:cx,cy[,cz]:rin:rout");
        return Region::shell(parse_csv(parts[1]), parse_csv(parts[2]).at(0),
                             parse_csv(parts[3]).at(0));
    }
    throw input_error("unknown region kind '" + kind + "'");
}

std::string to_string(const Region& R) {
    std::ostringstream os;
    switch (R.kind) {
        case Region::Kind::Ball: os << "ball:" << join(R.center) << ':' << R.radius; break;
        case Region::Kind::Box: os << "box:" << join(R.lo) << ':' << join(R.hi); break;
        case Region::Kind::Shell:
            os << "shell:" << join(R.center) << ':' << R.rin << ':' << R.rout;
            break;
        case Region::Kind::Cubes:
            os << "cubeset(h=" << R.cubes.h << ", cells=" << R.cubes.cells.size() << ')';
            break;
    }
    return os.str();
}

} // namespace vfdeg
