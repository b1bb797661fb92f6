#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <cavetic/optics.hpp>

using namespace cavetic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const OpticalConstants k780;

CavityGeometry cavity(double R, double L)
{
    return {R, L, 6.35e-3, 0.978};
}
} // namespace

TEST_CASE("optical constants", "[optics]")
{
    CHECK(k780.wavelength == 780e-9);
    CHECK(k780.light_speed == 299792458.0);
    CHECK_THROWS_AS((OpticalConstants{0.0}.validate()), DomainError);
}

TEST_CASE("fundamental mode", "[optics]")
{
    SECTION("confocal waist")
    {
        const auto beam = fundamental_mode(cavity(50e-3, 50e-3), k780);
        CHECK_THAT(beam.waist_radius, WithinRel(std::sqrt(780e-9 * 50e-3 / (2.0 * std::numbers::pi)), 1e-12));
        CHECK_THAT(beam.waist_radius, WithinAbs(78.8e-6, 0.05e-6));
        CHECK(beam.waist_position == 0.0);
    }
    SECTION("Rayleigh range consistent with the waist")
    {
        const auto beam = fundamental_mode(cavity(50e-3, 99.9e-3), k780);
        CHECK_THAT(beam.rayleigh_range,
                   WithinRel(std::numbers::pi * beam.waist_radius * beam.waist_radius / 780e-9, 1e-12));
    }
    SECTION("waist shrinks monotonically toward concentric")
    {
        double prev = fundamental_mode(cavity(50e-3, 60e-3), k780).waist_radius;
        for (double L = 65e-3; L < 100e-3; L += 5e-3) {
            const double w0 = fundamental_mode(cavity(50e-3, L), k780).waist_radius;
            CHECK(w0 < prev);
            prev = w0;
        }
        for (double d : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) {
            const double w0 = fundamental_mode(cavity(50e-3, 100e-3 - d), k780).waist_radius;
            CHECK(w0 < prev);
            prev = w0;
        }
    }
    SECTION("2.35 mm mirror spot at R = 50 mm")
    {
        // The Gaussian model gives 5.28 um for this spot; quoted as 5.7 um.
        const double u = focusing_parameter(2.35e-3, 100e-3);
        const auto g = cavity_for_focusing(50e-3, u, 6.35e-3, 0.978, k780);
        const auto beam = fundamental_mode(g, k780);
        CHECK_THAT(mirror_spot_size(g, k780), WithinRel(2.35e-3, 1e-3));
        CHECK_THAT(beam.waist_radius, WithinRel(5.28e-6, 2e-3));
        CHECK_THAT(beam.waist_radius, WithinRel(5.7e-6, 0.1));
    }
    SECTION("unstable geometries")
    {
        CHECK_THROWS_AS(fundamental_mode(cavity(50e-3, 100e-3), k780), DomainError);
        CHECK_THROWS_AS(fundamental_mode(cavity(50e-3, 101e-3), k780), DomainError);
        CHECK_THROWS_AS(fundamental_mode(cavity(50e-3, 0.0), k780), DomainError);
    }
}

TEST_CASE("beam propagation", "[optics]")
{
    const auto beam = BeamGeometry::from_waist(10e-6, 1e-3, k780);
    SECTION("at the waist")
    {
        const auto s = beam_at(beam, 1e-3);
        CHECK(s.radius == beam.waist_radius);
        CHECK(s.gouy_phase == 0.0);
        CHECK(s.flat());
    }
    SECTION("one Rayleigh range out")
    {
        const auto s = beam_at(beam, 1e-3 + beam.rayleigh_range);
        CHECK_THAT(s.radius, WithinRel(beam.waist_radius * std::sqrt(2.0), 1e-14));
        CHECK_THAT(s.gouy_phase, WithinRel(std::numbers::pi / 4.0, 1e-14));
        CHECK_THAT(s.curvature_radius, WithinRel(2.0 * beam.rayleigh_range, 1e-14));
    }
    SECTION("symmetric about the waist")
    {
        for (double dz : {1e-6, 3e-4, 0.02}) {
            const auto a = beam_at(beam, 1e-3 + dz);
            const auto b = beam_at(beam, 1e-3 - dz);
            CHECK(a.radius == b.radius);
            CHECK(a.curvature_radius == -b.curvature_radius);
            CHECK(a.gouy_phase == -b.gouy_phase);
        }
    }
}

TEST_CASE("mirror curvature matches the mode wavefront", "[optics][property]")
{
    for (double R : {5.5e-3, 50e-3, 0.2})
        for (double frac : {0.1, 0.5, 1.0, 1.5, 1.9, 1.999, 1.99999}) {
            const auto g = cavity(R, frac * R);
            const auto s = beam_at(fundamental_mode(g, k780), 0.5 * g.length);
            CHECK_THAT(s.curvature_radius, WithinRel(R, 1e-9));
        }
}

TEST_CASE("focusing parameter", "[optics]")
{
    CHECK_THAT(focusing_parameter(2.35e-3, 100e-3), WithinRel(0.047, 1e-12));
    CHECK(focusing_parameter(0.5, 1.0) == 1.0);
    CHECK_THAT(focusing_parameter(2.0075e-3, 11.0e-3), WithinRel(0.365, 1e-12));
    CHECK_THROWS_AS(focusing_parameter(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(focusing_parameter(1.0, 0.0), DomainError);
}

TEST_CASE("u increases strictly toward concentric", "[optics][property]")
{
    for (double R : {5.5e-3, 50e-3}) {
        double prev = 0.0;
        for (double d = 0.5 * R; d > 1e-12; d *= 0.5) {
            const auto g = cavity(R, 2.0 * R - d);
            const double u = focusing_parameter(mirror_spot_size(g, k780), g.length);
            CHECK(u > prev);
            prev = u;
        }
    }
}

TEST_CASE("gap for a focusing parameter inverts the spot size", "[optics]")
{
    for (double R : {5.5e-3, 50e-3})
        for (double u : {0.02, 0.047, 0.1, 0.365, 0.73}) {
            if (u < min_focusing_parameter(R, k780))
                continue;
            const auto g = cavity_for_focusing(R, u, 4e-3, 0.99, k780);
            CHECK(g.stable());
            CHECK(g.length > 1.5 * R);
            // L = 2R - d holds d only to ~1e-16 * 2R absolute; picometre gaps
            // at large u leave about 1e-7 relative in u.
            CHECK_THAT(focusing_parameter(mirror_spot_size(g, k780), g.length), WithinRel(u, 1e-6));
            CHECK_THAT(focusing_parameter(0.5 * u * g.length, g.length), WithinRel(u, 1e-14));
        }
    CHECK_THROWS_AS(gap_for_focusing(50e-3, 1e-4, k780), DomainError);
    CHECK_THROWS_AS(gap_for_focusing(50e-3, -0.1, k780), DomainError);
}

TEST_CASE("free spectral range", "[optics]")
{
    CHECK_THAT(free_spectral_range(cavity(5.5e-3, 11.0e-3 - 1e-9), k780), WithinRel(13.627e9, 1e-4));
    CHECK_THAT(free_spectral_range(cavity(50e-3, 100e-3 - 1e-9), k780), WithinRel(1.499e9, 1e-3));
    const double f1 = free_spectral_range(cavity(50e-3, 30e-3), k780);
    const double f2 = free_spectral_range(cavity(50e-3, 60e-3), k780);
    CHECK_THAT(f1, WithinRel(2.0 * f2, 1e-15));
}

TEST_CASE("geometry validation", "[optics]")
{
    CHECK_NOTHROW(cavity(50e-3, 99e-3).validate());
    CHECK_THROWS_AS((CavityGeometry{50e-3, 99e-3, 0.0, 0.9}.validate()), DomainError);
    CHECK_THROWS_AS((CavityGeometry{50e-3, 99e-3, 1e-3, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((CavityGeometry{-50e-3, 99e-3, 1e-3, 0.9}.validate()), DomainError);
    CHECK(CavityGeometry::from_gap(50e-3, 2e-6, 1e-3, 0.9).concentric_gap() == Catch::Approx(2e-6).epsilon(1e-6));
}
