#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <cavetic/anaclastic.hpp>
#include <cavetic/raytrace.hpp>

using namespace cavetic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const OpticalConstants k780;
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double deg = std::numbers::pi / 180.0;

Ray ray_at_angle(double theta)
{
    return Ray{{-1.0, 0.0}, {std::cos(theta), std::sin(theta)}};
}

double angle_to_axis(Vec2 d)
{
    return std::atan2(std::abs(d.r), std::abs(d.z));
}

double phase_at(const WavefrontProfile &prof, double r)
{
    const auto it = std::lower_bound(prof.radius.begin(), prof.radius.end(), r);
    const auto i = static_cast<std::size_t>(it - prof.radius.begin());
    const double t = (r - prof.radius[i - 1]) / (prof.radius[i] - prof.radius[i - 1]);
    return prof.phase[i - 1] + t * (prof.phase[i] - prof.phase[i - 1]);
}
} // namespace

TEST_CASE("intersections", "[raytrace]")
{
    SECTION("axial ray meets the sphere at its vertex")
    {
        const SurfaceProfile s{Sphere{5e-3, 2e-3}, 4e-3};
        const Ray ray{{0.0, 0.0}, {1.0, 0.0}};
        const Hit h = intersect(ray, s);
        CHECK_THAT(h.point.z, WithinAbs(2e-3, 1e-15));
        CHECK(h.point.r == 0.0);
        CHECK_THAT(h.normal.z, WithinAbs(-1.0, 1e-15));
    }
    SECTION("parallel ray meets the plane")
    {
        const Ray ray{{0.0, 1.5e-3}, {1.0, 0.0}};
        const Hit h = intersect(ray, SurfaceProfile{Plane{3e-3}, 1.0});
        CHECK(h.point.z == 3e-3);
        CHECK(h.point.r == 1.5e-3);
        CHECK_THAT(h.distance, WithinAbs(3e-3, 1e-18));
    }
    SECTION("ellipsoid point satisfies the surface equation")
    {
        const double a = 6.38444879e-3, b = 5.26203153e-3;
        const SurfaceProfile s{Ellipsoid{a, b, 0.0}, 4e-3};
        const Ray ray{{-1e-3, 2e-3}, {1.0, 0.0}};
        const Hit h = intersect(ray, s);
        CHECK(std::abs(h.point.z - sag(s, 2e-3)) < 1e-12);
        const double q = (1.0 - h.point.z / a);
        CHECK_THAT(q * q + (h.point.r / b) * (h.point.r / b), WithinAbs(1.0, 1e-12));
    }
    SECTION("rays outside the clear aperture miss")
    {
        const SurfaceProfile s{Sphere{5e-3, 0.0}, 2e-3};
        CHECK_THROWS_AS(intersect(Ray{{-1e-3, 3e-3}, {1.0, 0.0}, 0.0, 7, 3e-3}, s), RayMiss);
        CHECK_THROWS_AS(intersect(Ray{{1.0, 0.0}, {1.0, 0.0}}, SurfaceProfile{Plane{0.0}, 1.0}), RayMiss);
        CHECK_THROWS_AS(intersect(Ray{{0.0, 0.0}, {0.0, 1.0}}, SurfaceProfile{Plane{1.0}, 1.0}), RayMiss);
    }
}

TEST_CASE("Snell's law", "[raytrace]")
{
    const Vec2 normal{-1.0, 0.0};
    SECTION("30 degrees into n = 1.5")
    {
        const Ray out = refract(ray_at_angle(30.0 * deg), normal, 1.0, 1.5);
        CHECK_THAT(angle_to_axis(out.direction) / deg, WithinAbs(19.4712206, 1e-6));
        CHECK_THAT(out.direction.norm(), WithinAbs(1.0, 1e-15));
    }
    SECTION("80 degrees into sapphire")
    {
        const Ray out = refract(ray_at_angle(80.0 * deg), normal, 1.0, 1.76583);
        CHECK_THAT(std::sin(angle_to_axis(out.direction)), WithinRel(std::sin(80.0 * deg) / 1.76583, 1e-14));
        CHECK_THAT(angle_to_axis(out.direction) / deg, WithinAbs(33.897, 1e-3));
    }
    SECTION("normal incidence is undeviated")
    {
        const Ray out = refract(ray_at_angle(0.0), normal, 1.0, 1.76583);
        CHECK(out.direction.z == 1.0);
        CHECK(out.direction.r == 0.0);
    }
    SECTION("total internal reflection")
    {
        CHECK_THROWS_AS(refract(ray_at_angle(50.0 * deg), normal, 1.5, 1.0), TotalInternalReflection);
        CHECK_NOTHROW(refract(ray_at_angle(41.0 * deg), normal, 1.5, 1.0));
        CHECK_THROWS_AS(refract(ray_at_angle(0.0), normal, 0.0, 1.0), DomainError);
    }
    SECTION("reversibility")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> angle(-85.0 * deg, 85.0 * deg);
        for (int i = 0; i < 50; ++i) {
            const Ray in = ray_at_angle(angle(rng));
            const Vec2 tilted = Vec2{-1.0, 0.3}.normalized();
            Ray mid = refract(in, tilted, 1.0, 1.76583);
            mid.direction = -1.0 * mid.direction;
            const Ray back = refract(mid, tilted, 1.76583, 1.0);
            CHECK_THAT(back.direction.z, WithinAbs(-in.direction.z, 1e-12));
            CHECK_THAT(back.direction.r, WithinAbs(-in.direction.r, 1e-12));
        }
    }
}

TEST_CASE("collimated light onto a flat mirror has no retardance", "[raytrace]")
{
    const SurfaceProfile face{Plane{0.0}, 1.0};
    const SurfaceProfile mirror{Plane{4e-3}, 1.0};
    double opl0 = 0.0;
    for (double h : {0.0, 1e-3, 2.5e-3, 6e-3}) {
        Ray ray{{-1e-3, h}, {1.0, 0.0}};
        const Hit f = intersect(ray, face);
        ray = refract(advance(ray, f, 1.0), f.normal, 1.0, 1.5112);
        ray = advance(ray, intersect(ray, mirror), 1.5112);
        if (h == 0.0)
            opl0 = ray.opl;
        CHECK(k780.wavenumber() * (ray.opl - opl0) == 0.0);
        CHECK(ray.origin.r == h);
    }
}

TEST_CASE("plano-concave substrate retardance", "[raytrace]")
{
    const PlanoConcaveSubstrate sub;
    const auto prof = retardance_planoconcave(sub, sub.center_of_curvature(), 256, k780);
    CHECK(prof.phase.front() == 0.0);
    CHECK_THAT(prof.radius.back(), WithinRel(sub.aperture, 1e-9));

    SECTION("quartic at small radius")
    {
        // least-squares slope of log|phi| against log r
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 1; i < prof.radius.size(); ++i) {
            const double r = prof.radius[i];
            if (r < 0.2e-3 || r > 0.8e-3)
                continue;
            const double x = std::log(r), y = std::log(std::abs(prof.phase[i]));
            sx += x, sy += y, sxx += x * x, sxy += x * y;
            ++n;
        }
        REQUIRE(n >= 5);
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK_THAT(slope, WithinAbs(4.0, 0.1));
    }
    SECTION("monotone and of order a wave across the mode")
    {
        for (std::size_t i = 1; i < prof.phase.size(); ++i)
            CHECK(std::abs(prof.phase[i]) > std::abs(prof.phase[i - 1]));
        const double at_w = std::abs(phase_at(prof, 2.35e-3)) / two_pi;
        const double at_2w = std::abs(phase_at(prof, 4.7e-3)) / two_pi;
        CHECK(at_w > 0.05);
        CHECK(at_w < 0.15);
        CHECK(at_2w > 0.8);
        CHECK(at_2w < 2.0);
    }
    SECTION("rays from the aim point land on the mirror")
    {
        const PlanoConcaveTracer tracer(sub, sub.center_of_curvature());
        const double r = 3e-3;
        const double angle = tracer.angle_for_radius(r);
        CHECK_THAT(std::abs(tracer.trace(angle).mirror_point.r), WithinRel(r, 1e-9));
    }
    CHECK_THROWS_AS(retardance_planoconcave(sub, sub.center_of_curvature(), 8, k780), DomainError);
    CHECK_THROWS_AS(PlanoConcaveTracer(sub, Vec2{-1e-3, 0.0}), DomainError);
}

TEST_CASE("Fermat: traced paths are stationary", "[raytrace][property]")
{
    // perturb the refraction point along the plane face; the OPL through the
    // traced point must be a stationary value
    const PlanoConcaveSubstrate sub;
    const PlanoConcaveTracer tracer(sub, sub.center_of_curvature());
    const double n = sub.refractive_index;
    for (double r : {0.5e-3, 2e-3, 5e-3}) {
        const double angle = tracer.angle_for_radius(r);
        const Vec2 dir{std::cos(angle), -std::sin(angle)};
        const Vec2 start = tracer.aim_point() - 2.0 * (tracer.aim_point().z - sub.plane_z()) * dir;
        const double t = (sub.plane_z() - start.z) / dir.z;
        const Vec2 p = start + t * dir;
        const Vec2 m = tracer.trace(angle).mirror_point;
        const auto opl = [&](double dr) {
            const Vec2 q{p.z, p.r + dr};
            return (q - start).norm() + n * (m - q).norm();
        };
        const double h = 1e-7;
        const double slope = (opl(h) - opl(-h)) / (2.0 * h);
        CHECK(std::abs(slope) < 1e-7);
        CHECK(opl(h) + opl(-h) - 2.0 * opl(0.0) > 0.0);
    }
}

TEST_CASE("anaclastic lens", "[raytrace]")
{
    const auto pres = design(10e-3, 1.76583, 5.5e-3);

    SECTION("collimated rays refract through the far focus")
    {
        const AnaclasticTracer tracer(anaclastic_lens(pres, 4e-3));
        for (double h : {0.1e-3, 1e-3, 2.5e-3, 4e-3}) {
            const Ray ray = tracer.refracted(h);
            const double t = -ray.origin.r / ray.direction.r;
            CHECK_THAT(ray.origin.z + t * ray.direction.z, WithinAbs(pres.focal_length, 1e-7 * pres.focal_length));
        }
    }
    SECTION("flat wavefront at the mirror")
    {
        const auto prof = retardance_anaclastic(anaclastic_lens(pres, 4e-3), 4e-3, 256, k780);
        CHECK(prof.max_abs_phase() < two_pi / 100.0);
    }
    SECTION("one percent error in b is visible")
    {
        auto wrong = pres;
        wrong.half_axis_b *= 1.01;
        const auto prof = retardance_anaclastic(anaclastic_lens(wrong, 4e-3), 4e-3, 256, k780);
        CHECK(prof.max_abs_phase() > two_pi / 10.0);
    }
    SECTION("meridional symmetry")
    {
        const AnaclasticTracer tracer(spherical_substitute(pres, 4e-3));
        for (double h : {0.3e-3, 1.7e-3, 3.9e-3}) {
            const auto up = tracer.trace(h);
            const auto down = tracer.trace(-h);
            CHECK(up.mirror_point.r == -down.mirror_point.r);
            CHECK(up.mirror_point.z == down.mirror_point.z);
            CHECK(up.opl == down.opl);
        }
    }
    SECTION("launch aperture validation")
    {
        CHECK_THROWS_AS(retardance_anaclastic(anaclastic_lens(pres, 4e-3), 4.5e-3, 64, k780), DomainError);
        CHECK_THROWS_AS(retardance_anaclastic(anaclastic_lens(pres, 4e-3), 0.0, 64, k780), DomainError);
    }
}

TEST_CASE("wavefront profile", "[raytrace]")
{
    const auto flat = WavefrontProfile::uniform(1e-3);
    CHECK_NOTHROW(flat.validate());
    CHECK(flat.max_abs_phase() == 0.0);
    CHECK_THROWS_AS((WavefrontProfile{{0.0, 1e-3}, {0.1, 0.0}}.validate()), DomainError);
    CHECK_THROWS_AS((WavefrontProfile{{0.0, 1e-3, 1e-3}, {0.0, 0.0, 0.0}}.validate()), DomainError);

    std::ostringstream os;
    write_csv(os, WavefrontProfile{{0.0, 1e-3, 2e-3}, {0.0, 0.25, 1.0}});
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "# r_m [m], phase_rad [rad]");
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    CHECK(rows == 3);
    CHECK(os.str().find("0.001,0.25\n") != std::string::npos);
}
