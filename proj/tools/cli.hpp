#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <cavetic/family.hpp>

namespace cavetic::cli {

enum exit_code : int { success = 0, computation_failed = 1, usage_error = 2 };

/// Everything a run needs. Unset optionals take the family defaults.
struct RunConfig
{
    std::string command;
    std::string family = "anaclastic";
    double wavelength_nm = 780.0;
    std::optional<double> mirror_roc_mm;
    std::optional<double> gap_um;
    std::optional<double> aperture_mm;
    std::optional<double> reflectivity;
    std::optional<double> substrate_thickness_mm;
    std::optional<double> substrate_index;
    std::optional<double> focal_mm;
    std::optional<double> index;
    std::string u_range;
    std::vector<double> u;
    int p_max = 50;
    int grid_per_fsr = 4096;
    double grid_span_fsr = 4.0;
    double rel_tol = 1e-10;
    int ray_samples = 256;
    double atom_gamma_mhz = 6.067;
    bool aberrations = false;
    std::string format = "csv";
    bool gnuplot = false;
    int jobs = 1;
    std::string out;

    /// Resolved cavity description; throws DomainError on invalid overrides.
    [[nodiscard]] CavitySetup setup() const;
    /// The sweep in input order; empty when none was requested.
    [[nodiscard]] std::vector<double> sweep() const;
    /// Flat key = value text that reproduces this run when passed to --config.
    [[nodiscard]] std::string dump() const;
};

/// Parses "LO:HI:STEP" into lo, lo + step, ... <= hi.
std::vector<double> parse_range(const std::string &spec);

/// Runs the command line `args` (without the program name). Tables go to
/// `out` unless --out is given; diagnostics and warnings go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace cavetic::cli
