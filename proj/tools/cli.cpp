#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <cavetic/cavetic.hpp>

namespace cavetic::cli {
namespace {

using nlohmann::json;

/// Configuration problems found after CLI11 parsing.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

/// Accepts "4", "4mm", "4000um" or "4000µm"; the result is in the flag's unit.
CLI::Option *with_units(CLI::Option *opt, double metres_per_unit)
{
    const std::map<std::string, double> units{{"m", 1.0 / metres_per_unit},
                                              {"mm", 1e-3 / metres_per_unit},
                                              {"um", 1e-6 / metres_per_unit},
                                              {"nm", 1e-9 / metres_per_unit}};
    opt->transform(CLI::AsNumberWithUnit(units, CLI::AsNumberWithUnit::CASE_SENSITIVE));
    opt->transform([](std::string s) {
        for (auto pos = s.find("\xC2\xB5"); pos != std::string::npos; pos = s.find("\xC2\xB5"))
            s.replace(pos, 2, "u");
        return s;
    });
    return opt;
}

template <typename T>
void set_if(T &target, const std::optional<double> &value, double scale = 1.0)
{
    if (value)
        target = *value * scale;
}

std::ostream &output_stream(const RunConfig &cfg, std::ostream &out, std::ofstream &file)
{
    if (cfg.out.empty())
        return out;
    file.open(cfg.out, std::ios::binary);
    if (!file)
        throw UsageError("cannot open output file " + cfg.out);
    return file;
}

void write_gnuplot(const RunConfig &cfg, const std::string &xlabel, const std::string &ylabel,
                   const std::vector<std::string> &series, bool logy = false)
{
    std::ofstream gp(cfg.out + ".gp", std::ios::binary);
    if (!gp)
        throw UsageError("cannot open " + cfg.out + ".gp");
    gp << "set datafile separator ','\n"
       << "set datafile commentschars '#'\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel '" << ylabel << "'\n";
    if (logy)
        gp << "set logscale y\n";
    gp << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i)
        gp << (i ? ", \\\n     " : "") << "'" << cfg.out << "' " << series[i];
    gp << "\n";
}

std::vector<double> default_sweep(const RunConfig &cfg, CavityFamily family)
{
    if (cfg.command == "cooperativity")
        return parse_range("0.1:0.7:0.01");
    if (family == CavityFamily::plano_concave)
        return parse_range("0.01:0.05:0.005");
    return parse_range("0.05:0.8:0.05");
}

double default_point(CavityFamily family)
{
    return family == CavityFamily::plano_concave ? 0.047 : 0.365;
}

AnalysisOptions analysis_options(const RunConfig &cfg, std::size_t inner_jobs)
{
    AnalysisOptions opt;
    opt.p_max = cfg.p_max;
    opt.grid_per_fsr = static_cast<std::size_t>(cfg.grid_per_fsr);
    opt.grid_span_fsr = cfg.grid_span_fsr;
    opt.tolerance.rel = cfg.rel_tol;
    opt.jobs = inner_jobs;
    return opt;
}

void validate(const RunConfig &cfg)
{
    if (!parse_family(cfg.family))
        throw UsageError("family must be plano-concave or anaclastic");
    if (cfg.format != "csv" && cfg.format != "json")
        throw UsageError("format must be csv or json");
    if (cfg.gnuplot && cfg.out.empty())
        throw UsageError("--gnuplot needs --out to name the data file");
    if (cfg.gnuplot && cfg.format != "csv")
        throw UsageError("--gnuplot needs csv output");
    if (cfg.p_max < 0)
        throw UsageError("p-max must be non-negative");
    if (cfg.grid_per_fsr < 16)
        throw UsageError("grid-per-fsr must be at least 16");
    if (!(cfg.grid_span_fsr > 0.0))
        throw UsageError("grid-span-fsr must be positive");
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1e-2))
        throw UsageError("rel-tol must lie in (0, 1e-2)");
    if (cfg.jobs < 1)
        throw UsageError("jobs must be at least 1");
    if (!(cfg.atom_gamma_mhz > 0.0))
        throw UsageError("atom-gamma must be positive");
    if (cfg.gap_um && (!cfg.u.empty() || !cfg.u_range.empty()))
        throw UsageError("--gap-um cannot be combined with --u or --u-range");
    if (!cfg.u.empty() && !cfg.u_range.empty())
        throw UsageError("--u and --u-range are mutually exclusive");
}

/// The u values this run evaluates.
std::vector<double> resolve_sweep(const RunConfig &cfg, const CavitySetup &setup, bool single)
{
    std::vector<double> us;
    if (cfg.gap_um) {
        const auto g = setup.geometry_for_gap(*cfg.gap_um * 1e-6);
        us.push_back(focusing_parameter(mirror_spot_size(g, setup.constants), g.length));
    } else if (!cfg.u.empty() || !cfg.u_range.empty()) {
        us = cfg.sweep();
        if (us.empty())
            throw UsageError("the u sweep is empty");
    } else {
        us = single ? std::vector<double>{default_point(setup.family)} : default_sweep(cfg, setup.family);
    }
    for (double u : us)
        if (!(u > 0.0))
            throw UsageError("focusing parameters must be positive");
    if (single && us.size() != 1)
        throw UsageError(cfg.command + " takes a single focusing parameter");
    return us;
}

int cmd_design(const RunConfig &cfg, const CavitySetup &setup, std::ostream &out)
{
    const auto pres = setup.prescription();
    const auto cavity = concentric_cavity(pres, 0.0, setup.aperture);
    const double fsr = free_spectral_range(cavity, setup.constants);
    std::ofstream file;
    std::ostream &os = output_stream(cfg, out, file);
    if (cfg.format == "json") {
        json j = pres;
        j["concentric_length_m"] = cavity.length;
        j["fsr_hz"] = fsr;
        os << j.dump(2) << '\n';
    } else {
        os << "# quantity, value, unit\n"
           << "half_axis_a," << num(pres.half_axis_a * 1e3) << ",mm\n"
           << "half_axis_b," << num(pres.half_axis_b * 1e3) << ",mm\n"
           << "eccentricity," << num(pres.eccentricity()) << ",1\n"
           << "vertex_radius," << num(pres.vertex_curvature_radius() * 1e3) << ",mm\n"
           << "mirror_vertex_z," << num(pres.mirror_vertex_z() * 1e3) << ",mm\n"
           << "concentric_length," << num(cavity.length * 1e3) << ",mm\n"
           << "fsr," << num(fsr * 1e-9) << ",GHz\n";
    }
    if (!cfg.out.empty())
        out << "a = " << num(pres.half_axis_a * 1e3) << " mm, b = " << num(pres.half_axis_b * 1e3)
            << " mm, L = " << num(cavity.length * 1e3) << " mm, FSR = " << num(fsr * 1e-9) << " GHz\n";
    return success;
}

int cmd_linewidth(const RunConfig &cfg, const CavitySetup &setup, const std::vector<double> &us, std::ostream &out,
                  std::ostream &err)
{
    const auto jobs = static_cast<std::size_t>(cfg.jobs);
    const auto opt = analysis_options(cfg, us.size() == 1 ? jobs : 1);
    const auto curve = predicted_linewidth_curve(setup, us, cfg.aberrations, opt, us.size() == 1 ? 1 : jobs);
    std::size_t failed = 0;
    for (const auto &pt : curve) {
        if (!pt.ok()) {
            ++failed;
            err << "warning: u = " << num(pt.u) << ": " << pt.error << '\n';
        }
    }
    std::ofstream file;
    std::ostream &os = output_stream(cfg, out, file);
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto &pt : curve) {
            json r{{"u", pt.u}, {"fwhm_model_hz", pt.ok() ? json(pt.diffraction_only) : json(nullptr)}};
            if (cfg.aberrations)
                r["fwhm_aberrated_hz"] = pt.ok() ? json(pt.fwhm) : json(nullptr);
            r["error"] = pt.error;
            rows.push_back(r);
        }
        os << json{{"family", cfg.family}, {"points", rows}}.dump(2) << '\n';
    } else {
        os << "# u [1], fwhm_model [Hz]" << (cfg.aberrations ? ", fwhm_aberrated [Hz]" : "") << ", error\n";
        for (const auto &pt : curve) {
            os << num(pt.u) << ',' << num(pt.diffraction_only);
            if (cfg.aberrations)
                os << ',' << num(pt.fwhm);
            os << ',' << csv_field(pt.error) << '\n';
        }
    }
    if (cfg.gnuplot) {
        std::vector<std::string> series{"using 1:($2/1e6) with lines title 'diffraction only'"};
        if (cfg.aberrations)
            series.emplace_back("using 1:($3/1e6) with points pt 4 title 'with aberrations'");
        write_gnuplot(cfg, "focusing parameter u", "FWHM (MHz)", series);
    }
    return failed == curve.size() ? computation_failed : success;
}

int cmd_spectrum(const RunConfig &cfg, const CavitySetup &setup, double u, std::ostream &out, std::ostream &err)
{
    const auto opt = analysis_options(cfg, static_cast<std::size_t>(cfg.jobs));
    const WavefrontProfile traced = setup.retardance();
    const auto aberrated = analyze_point(setup, u, traced, opt);
    const auto ideal = analyze_point(setup, u, WavefrontProfile::uniform(traced.radius.back()), opt);
    const auto s_ideal = sample(ideal.lines.spectrum, ideal.grid);
    const auto s_aberr = sample(aberrated.lines.spectrum, aberrated.grid);
    const double step = aberrated.grid.step;
    for (const auto &[label, a] : {std::pair{"ideal", &ideal}, std::pair{"aberrated", &aberrated}})
        if (a->fwhm < 5.0 * step)
            err << "warning: " << label << " FWHM " << num(a->fwhm) << " Hz spans fewer than 5 grid samples of " << num(step)
                << " Hz; raise --grid-per-fsr\n";
    if (!aberrated.lines.unresonant.empty())
        err << "warning: " << aberrated.lines.unresonant.size()
            << " populated modes have sub-unity finesse and were left out\n";

    std::ofstream file;
    std::ostream &os = output_stream(cfg, out, file);
    if (cfg.format == "json") {
        json j{{"u", u},
               {"fsr_hz", aberrated.lines.spectrum.period()},
               {"fwhm_ideal_hz", ideal.fwhm},
               {"fwhm_aberrated_hz", aberrated.fwhm},
               {"detuning_hz", s_aberr.detuning},
               {"transmission_ideal", s_ideal.transmission},
               {"transmission_aberrated", s_aberr.transmission}};
        os << j.dump(2) << '\n';
    } else {
        os << "# u = " << num(u) << "\n"
           << "# fwhm_ideal [Hz] = " << num(ideal.fwhm) << "\n"
           << "# fwhm_aberrated [Hz] = " << num(aberrated.fwhm) << "\n"
           << "# detuning [Hz], transmission_ideal [1], transmission_aberrated [1]\n";
        for (std::size_t i = 0; i < s_aberr.detuning.size(); ++i)
            os << num(s_aberr.detuning[i]) << ',' << num(s_ideal.transmission[i]) << ','
               << num(s_aberr.transmission[i]) << '\n';
    }
    if (!cfg.out.empty())
        out << "fwhm_ideal_hz," << num(ideal.fwhm) << "\nfwhm_aberrated_hz," << num(aberrated.fwhm) << '\n';
    if (cfg.gnuplot)
        write_gnuplot(cfg, "detuning (MHz)", "transmission",
                      {"using ($1/1e6):2 with lines title 'ideal'", "using ($1/1e6):3 with lines title 'aberrated'"});
    return success;
}

int cmd_cooperativity(const RunConfig &cfg, const CavitySetup &setup, const std::vector<double> &us,
                      std::ostream &out, std::ostream &err)
{
    const AtomParameters atom{kappa_angular_factor * cfg.atom_gamma_mhz * 1e6};
    const auto curve = cooperativity_curve(setup.mirror_roc, setup.reflectivity, setup.aperture, us, atom,
                                           setup.constants, static_cast<std::size_t>(cfg.jobs));
    CqedPoint best = curve.points[curve.best];
    if (curve.best_on_boundary || curve.points.size() < 3) {
        err << "warning: the largest cooperativity lies on the sweep boundary at u = " << num(best.u)
            << "; widen the sweep\n";
    } else {
        const double lo = curve.points[curve.best - 1].u;
        const double hi = curve.points[curve.best + 1].u;
        const auto c = [&](double u) {
            return cqed_point(setup.mirror_roc, setup.reflectivity, setup.aperture, u, atom, setup.constants)
                .cooperativity;
        };
        const double u_star = golden_section_max(c, lo, hi, 1e-7);
        best = cqed_point(setup.mirror_roc, setup.reflectivity, setup.aperture, u_star, atom, setup.constants);
    }
    std::ofstream file;
    std::ostream &os = output_stream(cfg, out, file);
    if (cfg.format == "json") {
        json j{{"points", curve.points}, {"optimum", best}, {"optimum_on_boundary", curve.best_on_boundary}};
        os << j.dump(2) << '\n';
    } else {
        os << "# u [1], R_sc [1], g0 [rad/s], kappa [rad/s], C [1], V_eff [lambda^3], finesse [1], length [m]\n";
        for (const auto &p : curve.points)
            os << num(p.u) << ',' << num(p.scattering_ratio) << ',' << num(p.g0) << ',' << num(p.kappa) << ','
               << num(p.cooperativity) << ',' << num(p.mode_volume) << ',' << num(p.finesse) << ','
               << num(p.length) << '\n';
        os << "# optimum u = " << num(best.u) << ", C = " << num(best.cooperativity)
           << (curve.best_on_boundary ? " (sweep boundary)" : "") << '\n';
    }
    if (!cfg.out.empty())
        out << "u_opt," << num(best.u) << "\nC_opt," << num(best.cooperativity) << '\n';
    if (cfg.gnuplot)
        write_gnuplot(cfg, "focusing parameter u", "cooperativity C", {"using 1:5 with lines title 'C'"});
    return success;
}

int cmd_wavefront(const RunConfig &cfg, const CavitySetup &setup, std::ostream &out)
{
    const auto profile = setup.retardance();
    std::ofstream file;
    std::ostream &os = output_stream(cfg, out, file);
    if (cfg.format == "json") {
        os << json{{"radius_m", profile.radius}, {"phase_rad", profile.phase}}.dump(2) << '\n';
    } else {
        os << "# radius [m], phase [rad]\n";
        for (std::size_t i = 0; i < profile.radius.size(); ++i)
            os << num(profile.radius[i]) << ',' << num(profile.phase[i]) << '\n';
    }
    if (cfg.gnuplot)
        write_gnuplot(cfg, "radius (mm)", "retardance (waves)",
                      {"using ($1*1e3):($2/(2*pi)) with lines title 'phi(r)'"});
    return success;
}

int cmd_populations(const RunConfig &cfg, const CavitySetup &setup, double u, std::ostream &out)
{
    const auto opt = analysis_options(cfg, static_cast<std::size_t>(cfg.jobs));
    const auto a = analyze_point(setup, u, setup.retardance(), opt);
    std::ofstream file;
    std::ostream &os = output_stream(cfg, out, file);
    if (cfg.format == "json") {
        json j = a.decomposition;
        j["u"] = u;
        os << j.dump(2) << '\n';
    } else {
        os << "# u = " << num(u) << "\n# l [1], p [1], gamma [1]\n";
        for (const auto &m : a.decomposition.modes)
            os << m.index.l << ',' << m.index.p << ',' << num(m.gamma) << '\n';
        os << "# residual = " << num(a.decomposition.residual) << '\n';
    }
    if (cfg.gnuplot)
        write_gnuplot(cfg, "radial index p", "population", {"using 2:3 with impulses title 'gamma_{0,p}'"}, true);
    return success;
}

} // namespace

std::vector<double> parse_range(const std::string &spec)
{
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error &) {
            throw UsageError("malformed range '" + spec + "'; expected LO:HI:STEP");
        }
    }
    if (parts.size() != 3)
        throw UsageError("malformed range '" + spec + "'; expected LO:HI:STEP");
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi))
        throw UsageError("range step must be positive");
    std::vector<double> out;
    if (hi < lo)
        return out;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

CavitySetup RunConfig::setup() const
{
    const auto fam = parse_family(family);
    if (!fam)
        throw UsageError("family must be plano-concave or anaclastic");
    CavitySetup s = CavitySetup::defaults(*fam);
    s.constants.wavelength = wavelength_nm * 1e-9;
    set_if(s.mirror_roc, mirror_roc_mm, 1e-3);
    set_if(s.aperture, aperture_mm, 1e-3);
    set_if(s.reflectivity, reflectivity);
    set_if(s.substrate_thickness, substrate_thickness_mm, 1e-3);
    set_if(s.substrate_index, substrate_index);
    set_if(s.focal_length, focal_mm, 1e-3);
    set_if(s.lens_index, index);
    if (ray_samples < 16)
        throw UsageError("ray-samples must be at least 16");
    s.ray_samples = static_cast<std::size_t>(ray_samples);
    s.validate();
    return s;
}

std::vector<double> RunConfig::sweep() const
{
    if (!u_range.empty())
        return parse_range(u_range);
    return u;
}

std::string RunConfig::dump() const
{
    const CavitySetup s = setup();
    std::ostringstream os;
    os << "# cavetic run configuration\n"
       << "family = " << family << '\n'
       << "wavelength-nm = " << exact(wavelength_nm) << '\n'
       << "mirror-roc-mm = " << exact(s.mirror_roc * 1e3) << '\n'
       << "aperture-mm = " << exact(s.aperture * 1e3) << '\n'
       << "reflectivity = " << exact(s.reflectivity) << '\n'
       << "substrate-thickness-mm = " << exact(s.substrate_thickness * 1e3) << '\n'
       << "substrate-index = " << exact(s.substrate_index) << '\n'
       << "focal-mm = " << exact(s.focal_length * 1e3) << '\n'
       << "index = " << exact(s.lens_index) << '\n';
    if (gap_um)
        os << "gap-um = " << exact(*gap_um) << '\n';
    if (!u_range.empty())
        os << "u-range = " << u_range << '\n';
    if (!u.empty()) {
        os << "u = [";
        for (std::size_t i = 0; i < u.size(); ++i)
            os << (i ? ", " : "") << exact(u[i]);
        os << "]\n";
    }
    os << "p-max = " << p_max << '\n'
       << "grid-per-fsr = " << grid_per_fsr << '\n'
       << "grid-span-fsr = " << exact(grid_span_fsr) << '\n'
       << "rel-tol = " << exact(rel_tol) << '\n'
       << "ray-samples = " << ray_samples << '\n'
       << "atom-gamma = " << exact(atom_gamma_mhz) << '\n'
       << "aberrations = " << (aberrations ? "true" : "false") << '\n'
       << "format = " << format << '\n'
       << "gnuplot = " << (gnuplot ? "true" : "false") << '\n'
       << "jobs = " << jobs << '\n';
    if (!out.empty())
        os << "out = " << out << '\n';
    return os.str();
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    RunConfig cfg;
    bool dump_config = false;

    CLI::App app{"Near-concentric Fabry-Perot cavity modelling"};
    app.name("cavetic");
    app.set_config("--config", "", "Flat key = value configuration file")->envname("CAVETIC_CONFIG");
    app.require_subcommand(1);

    app.add_option("--family", cfg.family, "Cavity family")
        ->check(CLI::IsMember({"plano-concave", "anaclastic"}))
        ->capture_default_str();
    with_units(app.add_option("--wavelength-nm", cfg.wavelength_nm, "Vacuum wavelength")->capture_default_str(),
               1e-9);
    with_units(app.add_option("--mirror-roc-mm", cfg.mirror_roc_mm, "Mirror radius of curvature"), 1e-3);
    with_units(app.add_option("--gap-um", cfg.gap_um, "Gap d = 2R - L to the concentric point"), 1e-6);
    with_units(app.add_option("--aperture-mm", cfg.aperture_mm, "Mirror aperture radius"), 1e-3);
    app.add_option("--reflectivity", cfg.reflectivity, "Mirror power reflectivity");
    with_units(app.add_option("--substrate-thickness-mm", cfg.substrate_thickness_mm,
                              "Plano-concave substrate centre thickness"),
               1e-3);
    app.add_option("--substrate-index", cfg.substrate_index, "Plano-concave substrate refractive index");
    with_units(app.add_option("--focal-mm", cfg.focal_mm, "Anaclastic lens focal length"), 1e-3);
    app.add_option("--index", cfg.index, "Anaclastic lens refractive index");
    app.add_option("--u-range", cfg.u_range, "Focusing-parameter sweep LO:HI:STEP");
    app.add_option("--u", cfg.u, "Focusing parameter(s)")->delimiter(',');
    app.add_option("--p-max", cfg.p_max, "Highest radial mode index")->capture_default_str();
    app.add_option("--grid-per-fsr", cfg.grid_per_fsr, "Spectrum samples per free spectral range")
        ->capture_default_str();
    app.add_option("--grid-span-fsr", cfg.grid_span_fsr, "Spectrum span in free spectral ranges")
        ->capture_default_str();
    app.add_option("--rel-tol", cfg.rel_tol, "Relative quadrature tolerance")->capture_default_str();
    app.add_option("--ray-samples", cfg.ray_samples, "Rays traced per retardance profile")->capture_default_str();
    app.add_option("--atom-gamma", cfg.atom_gamma_mhz, "Atomic linewidth gamma/2pi in MHz")->capture_default_str();
    app.add_flag("--aberrations", cfg.aberrations, "Include traced aberrations in linewidth curves");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_flag("--gnuplot", cfg.gnuplot, "Write a gnuplot script next to --out");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
    app.add_option("--out", cfg.out, "Output file (default stdout)");
    app.add_flag("--dump-config", dump_config, "Print the effective configuration and exit")->configurable(false);

    const std::vector<std::pair<std::string, std::string>> commands{
        {"design", "Anaclastic lens prescription"},
        {"linewidth", "FWHM versus focusing parameter"},
        {"spectrum", "Transmission spectrum with and without aberrations"},
        {"cooperativity", "Single-atom cooperativity versus focusing parameter"},
        {"wavefront", "Traced input-beam retardance at the mirror"},
        {"populations", "Mode populations of the aberrated input beam"}};
    for (const auto &[name, help] : commands)
        app.add_subcommand(name, help)->fallthrough()->configurable(false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : usage_error;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    CavitySetup setup;
    std::vector<double> us;
    try {
        validate(cfg);
        if (cfg.command == "design" && cfg.family != "anaclastic")
            throw UsageError("design applies to the anaclastic family");
        setup = cfg.setup();
        if (dump_config) {
            out << cfg.dump();
            return success;
        }
        if (cfg.command == "linewidth" || cfg.command == "cooperativity")
            us = resolve_sweep(cfg, setup, false);
        else if (cfg.command == "spectrum" || cfg.command == "populations")
            us = resolve_sweep(cfg, setup, true);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (cfg.command == "design")
            return cmd_design(cfg, setup, out);
        if (cfg.command == "linewidth")
            return cmd_linewidth(cfg, setup, us, out, err);
        if (cfg.command == "spectrum")
            return cmd_spectrum(cfg, setup, us.front(), out, err);
        if (cfg.command == "cooperativity")
            return cmd_cooperativity(cfg, setup, us, out, err);
        if (cfg.command == "wavefront")
            return cmd_wavefront(cfg, setup, out);
        return cmd_populations(cfg, setup, us.front(), out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return computation_failed;
    }
}

} // namespace cavetic::cli
