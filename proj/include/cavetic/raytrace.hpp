#pragma once

// Sequential meridional ray tracing through rotationally symmetric refracting
// surfaces, and the wavefront retardance this produces at a cavity mirror.
//
// Points are (z, r) in the meridional plane with r signed; z increases in the
// direction of propagation. Optical path length (OPL) is geometric length
// times refractive index.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "optics.hpp"

namespace cavetic {

struct Vec2
{
    double z = 0.0;
    double r = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.z + b.z, a.r + b.r}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.z - b.z, a.r - b.r}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.z, s * a.r}; }
    [[nodiscard]] double dot(Vec2 o) const { return z * o.z + r * o.r; }
    [[nodiscard]] double norm() const { return std::hypot(z, r); }
    [[nodiscard]] Vec2 normalized() const
    {
        const double n = norm();
        return {z / n, r / n};
    }
};

struct Ray
{
    Vec2 origin;
    Vec2 direction;      ///< unit vector
    double opl = 0.0;    ///< accumulated optical path length
    int id = 0;
    double launch = 0.0; ///< launch height or angle, for error reports
};

struct Plane
{
    double vertex_z = 0.0;
};

/// Spherical cap; the center of curvature sits at vertex_z + roc.
struct Sphere
{
    double roc = 0.0;
    double vertex_z = 0.0;
};

/// Ellipsoid of revolution (1 - (z - vertex_z)/a)^2 + (r/b)^2 = 1; the vertex
/// cap is the half with z - vertex_z <= a.
struct Ellipsoid
{
    double half_axis_a = 0.0;
    double half_axis_b = 0.0;
    double vertex_z = 0.0;
};

struct SurfaceProfile
{
    std::variant<Plane, Sphere, Ellipsoid> shape;
    double aperture = 0.0; ///< clear radius

    void validate() const
    {
        if (!(aperture >= 0.0))
            throw DomainError("surface aperture must be non-negative");
        if (const auto *s = std::get_if<Sphere>(&shape)) {
            if (s->roc == 0.0)
                throw DomainError("sphere radius of curvature must be non-zero");
            if (aperture > std::abs(s->roc))
                throw DomainError("sphere aperture exceeds its radius: sag not single-valued");
        }
        if (const auto *e = std::get_if<Ellipsoid>(&shape)) {
            if (!(e->half_axis_a > 0.0 && e->half_axis_b > 0.0))
                throw DomainError("ellipsoid half-axes must be positive");
            if (aperture > e->half_axis_b)
                throw DomainError("ellipsoid aperture exceeds transverse half-axis");
        }
    }
};

/// Surface z at height r (within the aperture).
inline double sag(const SurfaceProfile &surface, double r)
{
    return std::visit(
        [r](const auto &s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Plane>) {
                return s.vertex_z;
            } else if constexpr (std::is_same_v<S, Sphere>) {
                return s.vertex_z + s.roc - std::copysign(std::sqrt(s.roc * s.roc - r * r), s.roc);
            } else {
                const double q = r / s.half_axis_b;
                return s.vertex_z + s.half_axis_a * (1.0 - std::sqrt(1.0 - q * q));
            }
        },
        surface.shape);
}

struct Hit
{
    Vec2 point;
    Vec2 normal; ///< unit, oriented against the incoming direction
    double distance = 0.0;
};

namespace detail {

inline RayMiss miss(const Ray &ray, const char *why)
{
    std::ostringstream msg;
    msg << "ray " << ray.id << " (launch " << ray.launch << ") missed surface: " << why;
    return RayMiss(msg.str(), ray.id, ray.launch);
}

constexpr double min_step = 1e-12;

// Smallest t > min_step among roots of A t^2 + B t + C = 0 accepted by `ok`.
template <class Accept>
bool forward_root(double A, double B, double C, Accept ok, double &t_out)
{
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0 || A == 0.0)
        return false;
    const double sq = std::sqrt(disc);
    // numerically stable pair
    const double q = -0.5 * (B + std::copysign(sq, B));
    double t1 = q / A;
    double t2 = q != 0.0 ? C / q : t1;
    if (t1 > t2)
        std::swap(t1, t2);
    for (double t : {t1, t2}) {
        if (t > min_step && ok(t)) {
            t_out = t;
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Nearest forward intersection within the clear aperture.
inline Hit intersect(const Ray &ray, const SurfaceProfile &surface)
{
    const Vec2 o = ray.origin;
    const Vec2 d = ray.direction;
    const double ap = surface.aperture * (1.0 + 1e-12);
    Hit hit;
    std::visit(
        [&](const auto &s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Plane>) {
                if (d.z == 0.0)
                    throw detail::miss(ray, "parallel to plane");
                const double t = (s.vertex_z - o.z) / d.z;
                if (!(t > detail::min_step))
                    throw detail::miss(ray, "plane behind ray");
                hit.distance = t;
                hit.point = o + t * d;
                hit.normal = {1.0, 0.0};
            } else if constexpr (std::is_same_v<S, Sphere>) {
                const Vec2 c{s.vertex_z + s.roc, 0.0};
                const Vec2 m = o - c;
                const auto ok = [&](double t) {
                    const Vec2 p = o + t * d;
                    return (p.z - c.z) * s.roc <= 0.0 && std::abs(p.r) <= ap;
                };
                double t = 0.0;
                if (!detail::forward_root(d.dot(d), 2.0 * m.dot(d), m.dot(m) - s.roc * s.roc, ok, t))
                    throw detail::miss(ray, "no real intersection with spherical cap inside aperture");
                hit.distance = t;
                hit.point = o + t * d;
                hit.normal = (1.0 / std::abs(s.roc)) * (hit.point - c);
            } else {
                const double a = s.half_axis_a;
                const double b = s.half_axis_b;
                const double zc = s.vertex_z + a;
                const double oz = (o.z - zc) / a;
                const double dz = d.z / a;
                const double orr = o.r / b;
                const double dr = d.r / b;
                const auto ok = [&](double t) {
                    const Vec2 p = o + t * d;
                    return p.z - s.vertex_z <= a && std::abs(p.r) <= ap;
                };
                double t = 0.0;
                if (!detail::forward_root(dz * dz + dr * dr, 2.0 * (oz * dz + orr * dr), oz * oz + orr * orr - 1.0,
                                          ok, t))
                    throw detail::miss(ray, "no real intersection with ellipsoid cap inside aperture");
                hit.distance = t;
                hit.point = o + t * d;
                hit.normal = Vec2{(hit.point.z - zc) / (a * a), hit.point.r / (b * b)}.normalized();
            }
        },
        surface.shape);
    if (hit.normal.dot(d) > 0.0)
        hit.normal = -1.0 * hit.normal;
    return hit;
}

/// Moves the ray to the hit point, accumulating OPL in a medium of index n.
inline Ray advance(const Ray &ray, const Hit &hit, double n)
{
    Ray out = ray;
    out.origin = hit.point;
    out.opl += n * hit.distance;
    return out;
}

/// Vector Snell's law in the meridional plane.
inline Ray refract(const Ray &ray, Vec2 normal, double n1, double n2)
{
    if (!(n1 > 0.0 && n2 > 0.0))
        throw DomainError("refractive indices must be positive");
    Vec2 nrm = normal.normalized();
    double cos_i = -nrm.dot(ray.direction);
    if (cos_i < 0.0) {
        nrm = -1.0 * nrm;
        cos_i = -cos_i;
    }
    const double eta = n1 / n2;
    const double k = 1.0 - eta * eta * (1.0 - cos_i * cos_i);
    if (k < 0.0) {
        std::ostringstream msg;
        msg << "total internal reflection for ray " << ray.id << " (launch " << ray.launch << ")";
        throw TotalInternalReflection(msg.str(), ray.id, ray.launch);
    }
    Ray out = ray;
    out.direction = (eta * ray.direction + (eta * cos_i - std::sqrt(k)) * nrm).normalized();
    return out;
}

//==============================================================================
// Wavefront retardance at a mirror surface
//==============================================================================

/// phi(r) sampled at increasing radii on the mirror surface; phi(0) = 0.
struct WavefrontProfile
{
    std::vector<double> radius; ///< m
    std::vector<double> phase;  ///< rad

    void validate() const
    {
        if (radius.size() != phase.size() || radius.size() < 2)
            throw DomainError("wavefront profile needs at least two (r, phase) samples");
        if (radius.front() != 0.0 || phase.front() != 0.0)
            throw DomainError("wavefront profile must start at r = 0 with zero phase");
        for (std::size_t i = 1; i < radius.size(); ++i)
            if (!(radius[i] > radius[i - 1]))
                throw DomainError("wavefront profile radii must be strictly increasing");
    }

    [[nodiscard]] double max_abs_phase() const
    {
        double m = 0.0;
        for (double p : phase)
            m = std::max(m, std::abs(p));
        return m;
    }

    /// Zero retardance out to r_max.
    static WavefrontProfile uniform(double r_max)
    {
        return {{0.0, r_max}, {0.0, 0.0}};
    }
};

inline void write_csv(std::ostream &os, const WavefrontProfile &profile)
{
    os << "# r_m [m], phase_rad [rad]\n";
    const auto old = os.precision(12);
    for (std::size_t i = 0; i < profile.radius.size(); ++i)
        os << profile.radius[i] << ',' << profile.phase[i] << '\n';
    os.precision(old);
}

struct TraceResult
{
    Vec2 mirror_point;
    Vec2 direction;
    double opl = 0.0;
};

namespace detail {

// Launch parameters t_i = t_max sin(pi/2 * i/(n-1)): denser toward the edge.
inline std::vector<double> cosine_spacing(double t_max, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = t_max * std::sin(0.5 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    out.back() = t_max;
    return out;
}

// Largest launch parameter in [0, hi] whose mirror hit radius stays <= target.
template <class Tracer>
double launch_for_radius(const Tracer &tracer, double target, double hi)
{
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        bool inside = true;
        try {
            inside = std::abs(tracer.trace(mid).mirror_point.r) <= target;
        } catch (const RayError &) {
            inside = false;
        }
        (inside ? lo : hi) = mid;
    }
    return lo;
}

template <class Tracer>
WavefrontProfile profile_from(const Tracer &tracer, const std::vector<double> &launches,
                              const OpticalConstants &constants)
{
    const double k = constants.wavenumber();
    WavefrontProfile out;
    out.radius.reserve(launches.size());
    out.phase.reserve(launches.size());
    double opl0 = 0.0;
    for (std::size_t i = 0; i < launches.size(); ++i) {
        const TraceResult t = tracer.trace(launches[i], static_cast<int>(i));
        if (i == 0) {
            opl0 = t.opl;
            out.radius.push_back(0.0);
            out.phase.push_back(0.0);
            continue;
        }
        out.radius.push_back(std::abs(t.mirror_point.r));
        out.phase.push_back(k * (t.opl - opl0));
    }
    out.validate();
    return out;
}

} // namespace detail

/// Plano-concave mirror substrate: plane input face, concave reflective
/// sphere facing the cavity. The sphere vertex sits at mirror_vertex_z and
/// its center of curvature at mirror_vertex_z + mirror_roc.
struct PlanoConcaveSubstrate
{
    double mirror_roc = 50e-3;
    double center_thickness = 4.0e-3;
    double refractive_index = 1.5112; // BK-7 near 780 nm
    double aperture = 6.35e-3;
    double mirror_vertex_z = 0.0;

    [[nodiscard]] double plane_z() const { return mirror_vertex_z - center_thickness; }
    [[nodiscard]] Vec2 center_of_curvature() const { return {mirror_vertex_z + mirror_roc, 0.0}; }
    [[nodiscard]] SurfaceProfile plane_face() const { return {Plane{plane_z()}, 1e3 * aperture}; }
    [[nodiscard]] SurfaceProfile mirror() const { return {Sphere{mirror_roc, mirror_vertex_z}, aperture}; }

    void validate() const
    {
        if (!(mirror_roc > 0.0 && center_thickness > 0.0 && aperture > 0.0))
            throw DomainError("plano-concave substrate dimensions must be positive");
        if (!(refractive_index > 1.0))
            throw DomainError("substrate refractive index must exceed 1");
        mirror().validate();
    }
};

/// Traces rays of an ideal converging spherical wave in air, aimed so that its
/// paraxial image behind the plane face falls on `focus_target`, through the
/// plane face to the mirror sphere. Rays are labelled by their convergence
/// angle in air.
class PlanoConcaveTracer
{
public:
    PlanoConcaveTracer(const PlanoConcaveSubstrate &substrate, Vec2 focus_target)
        : substrate_(substrate), plane_(substrate.plane_face()), mirror_(substrate.mirror())
    {
        substrate_.validate();
        const double glass_depth = focus_target.z - substrate_.plane_z();
        if (!(glass_depth > substrate_.center_thickness))
            throw DomainError("focus target must lie beyond the mirror surface");
        aim_ = {substrate_.plane_z() + glass_depth / substrate_.refractive_index, 0.0};
        start_radius_ = 2.0 * (aim_.z - substrate_.plane_z());
    }

    [[nodiscard]] TraceResult trace(double angle, int id = 0) const
    {
        const Vec2 dir{std::cos(angle), -std::sin(angle)};
        Ray ray{aim_ - start_radius_ * dir, dir, 0.0, id, angle};
        ray = advance(ray, intersect(ray, plane_), 1.0);
        ray = refract(ray, Vec2{-1.0, 0.0}, 1.0, substrate_.refractive_index);
        const Hit h = intersect(ray, mirror_);
        ray = advance(ray, h, substrate_.refractive_index);
        return {ray.origin, ray.direction, ray.opl};
    }

    /// Air-side angle whose ray lands at mirror radius r.
    [[nodiscard]] double angle_for_radius(double r) const
    {
        return detail::launch_for_radius(*this, r, 0.5 * std::numbers::pi * 0.99);
    }

    [[nodiscard]] Vec2 aim_point() const { return aim_; }

private:
    PlanoConcaveSubstrate substrate_;
    SurfaceProfile plane_;
    SurfaceProfile mirror_;
    Vec2 aim_;
    double start_radius_ = 0.0;
};

/// phi(r) = k (OPL(r) - OPL(0)) of the converging input wave at the mirror
/// surface, sampled over the full mirror aperture.
inline WavefrontProfile retardance_planoconcave(const PlanoConcaveSubstrate &substrate, Vec2 focus_target,
                                                std::size_t n_samples, const OpticalConstants &constants)
{
    if (n_samples < 16)
        throw DomainError("at least 16 ray samples required");
    const PlanoConcaveTracer tracer(substrate, focus_target);
    const double edge = tracer.angle_for_radius(substrate.aperture);
    return detail::profile_from(tracer, detail::cosine_spacing(edge, n_samples), constants);
}

/// Aspheric cavity lens: refracting front face, then a reflective sphere
/// whose center is the intended focus.
struct AsphericLens
{
    SurfaceProfile front;
    double refractive_index = 1.0;
    Sphere mirror;                  ///< roc > 0, center at mirror.vertex_z + roc
    double mirror_aperture = 0.0;

    [[nodiscard]] SurfaceProfile mirror_surface() const { return {mirror, mirror_aperture}; }
};

/// Collimated rays parallel to the axis, launched from a common plane ahead
/// of the front face and labelled by height.
class AnaclasticTracer
{
public:
    explicit AnaclasticTracer(AsphericLens lens) : lens_(std::move(lens))
    {
        lens_.front.validate();
        lens_.mirror_surface().validate();
        if (!(lens_.refractive_index > 1.0))
            throw DomainError("lens refractive index must exceed 1");
        launch_z_ = sag(lens_.front, 0.0) - 1e-3;
    }

    [[nodiscard]] TraceResult trace(double height, int id = 0) const
    {
        Ray ray{{launch_z_, height}, {1.0, 0.0}, 0.0, id, height};
        const Hit front = intersect(ray, lens_.front);
        ray = advance(ray, front, 1.0);
        ray = refract(ray, front.normal, 1.0, lens_.refractive_index);
        const Hit back = intersect(ray, lens_.mirror_surface());
        ray = advance(ray, back, lens_.refractive_index);
        return {ray.origin, ray.direction, ray.opl};
    }

    /// Ray after refraction at the front face (for focus checks).
    [[nodiscard]] Ray refracted(double height) const
    {
        Ray ray{{launch_z_, height}, {1.0, 0.0}, 0.0, 0, height};
        const Hit front = intersect(ray, lens_.front);
        ray = advance(ray, front, 1.0);
        return refract(ray, front.normal, 1.0, lens_.refractive_index);
    }

    [[nodiscard]] double height_for_radius(double r) const
    {
        return detail::launch_for_radius(*this, r, lens_.front.aperture);
    }

    [[nodiscard]] const AsphericLens &lens() const { return lens_; }

private:
    AsphericLens lens_;
    double launch_z_ = 0.0;
};

/// Retardance at the mirror for input heights 0..launch_aperture.
inline WavefrontProfile retardance_anaclastic(const AsphericLens &lens, double launch_aperture, std::size_t n_samples,
                                              const OpticalConstants &constants)
{
    if (n_samples < 16)
        throw DomainError("at least 16 ray samples required");
    if (!(launch_aperture > 0.0))
        throw DomainError("launch aperture must be positive");
    if (launch_aperture > lens.front.aperture * (1.0 + 1e-12))
        throw DomainError("launch aperture exceeds the front-surface clear aperture");
    const AnaclasticTracer tracer(lens);
    return detail::profile_from(tracer, detail::cosine_spacing(launch_aperture, n_samples), constants);
}

} // namespace cavetic
