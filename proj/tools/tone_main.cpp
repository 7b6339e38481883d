// tone: two-sided estimates for the fundamental tone of minimal submanifolds
// of Euclidean and hyperbolic space forms, cross-checked by a 1-D spectral
// oracle. Subcommands: spaceform | growth | bounds | spectrum | catalog |
// verify. Errors go to stderr as single-line JSON {"code": int, "message":
// str}; exit codes: 0 ok, 1 verification failure, 2 config error, 3 numeric
// failure. All output is deterministic: identical configs give identical
// bytes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tone/bounds.hpp"
#include "tone/catalog.hpp"
#include "tone/growth.hpp"
#include "tone/spaceform.hpp"
#include "tone/spectrum.hpp"
#include "tone/verify.hpp"
#include "tone/version.hpp"

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cli: cannot open output file " + out_path);
    f << text;
}

// Geometry selection shared by growth/bounds/spectrum.
struct GeometryFlags {
    std::string name;
    std::string file;
    int n = 2;
    int m = 3;
    double kappa = -1.0;
    double scale = 1.0;
    double a = 1.0;
    double epsilon = 0.1;
    double s_range = 64.0;
};

void add_geometry_flags(CLI::App* cmd, GeometryFlags& gf) {
    cmd->add_option("--geometry", gf.name, "built-in geometry name (see `tone catalog`)");
    cmd->add_option("--geometry-file", gf.file, "JSON file describing a built-in geometry");
    cmd->add_option("--n", gf.n, "submanifold dimension (totally-geodesic only)");
    cmd->add_option("--m", gf.m, "ambient dimension (totally-geodesic only)");
    cmd->add_option("--kappa", gf.kappa, "ambient curvature bound, <= 0 (default -1)");
    cmd->add_option("--scale", gf.scale, "Euclidean catenoid waist scale c0");
    cmd->add_option("--a", gf.a, "hyperbolic catenoid waist parameter");
    cmd->add_option("--epsilon", gf.epsilon, "warped-intrinsic bump amplitude");
    cmd->add_option("--s-range", gf.s_range, "hyperbolic catenoid profile table length");
}

tone::ImmersedGeometry make_geometry(const GeometryFlags& gf) {
    if (!gf.file.empty()) return tone::load_geometry(gf.file);
    if (gf.name.empty())
        throw std::invalid_argument("config: --geometry or --geometry-file is required");
    if (gf.name == "totally-geodesic") return tone::totally_geodesic(gf.n, gf.m, gf.kappa);
    if (gf.name == "euclidean-catenoid") return tone::euclidean_catenoid(gf.scale);
    if (gf.name == "hyperbolic-catenoid")
        return tone::hyperbolic_catenoid(gf.a, gf.kappa, gf.s_range);
    if (gf.name == "warped-intrinsic")
        return tone::warped_intrinsic_surface(gf.epsilon, gf.kappa);
    throw std::invalid_argument("config: unknown geometry '" + gf.name + "'");
}

ordered_json geometry_config(const GeometryFlags& gf, const tone::ImmersedGeometry& g) {
    ordered_json c;
    c["geometry"] = g.name;
    if (!gf.file.empty()) c["geometry_file"] = gf.file;
    c["n"] = g.n;
    if (!g.intrinsic()) c["m"] = g.ambient.m;
    c["kappa"] = g.ambient.kappa;
    if (g.name == "euclidean-catenoid") c["scale"] = gf.scale;
    if (g.name == "hyperbolic-catenoid") {
        c["a"] = gf.a;
        c["s_range"] = gf.s_range;
    }
    if (g.name == "warped-intrinsic") c["epsilon"] = gf.epsilon;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tone: two-sided fundamental-tone estimates for minimal submanifolds"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- spaceform ---------------------------------------------------------
    auto* sf_cmd = app.add_subcommand(
        "spaceform", "evaluate comparison functions and model ball/sphere volumes");
    int sf_n = 2;
    double sf_kappa = -1.0, sf_radius = 1.0;
    std::string sf_format = "text", sf_out;
    sf_cmd->add_option("--n", sf_n, "dimension, >= 2");
    sf_cmd->add_option("--kappa", sf_kappa, "curvature, <= 0");
    sf_cmd->add_option("--radius", sf_radius, "evaluation radius R");
    sf_cmd->add_option("--format", sf_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sf_cmd->add_option("--out", sf_out, "output file (default stdout)");
    sf_cmd->callback([&] {
        const tone::SpaceForm sf{sf_kappa, sf_n};
        const double R = sf_radius;
        if (!(R >= 0.0)) throw std::invalid_argument("config: --radius must be >= 0");
        std::ostringstream os;
        if (sf_format == "json") {
            ordered_json j;
            j["n"] = sf_n;
            j["kappa"] = sf_kappa;
            j["R"] = R;
            j["s_kappa"] = sf.s(R);
            if (R > 0.0) j["c_kappa"] = sf.c(R);
            j["sphere_volume"] = sf.sphere(R);
            j["ball_volume"] = sf.ball(R);
            j["log_ball_volume"] = sf.log_ball(R);
            j["unit_sphere_volume"] = tone::unit_sphere_volume(sf_n);
            j["meta"] = {{"version", tone::version()}, {"command", "spaceform"}};
            os << j.dump(2) << "\n";
        } else {
            os << "space form: n=" << sf_n << " kappa=" << fmt(sf_kappa) << " R=" << fmt(R)
               << "\n";
            os << "  S_kappa(R)          = " << fmt(sf.s(R)) << "\n";
            if (R > 0.0) os << "  C_kappa(R)          = " << fmt(sf.c(R)) << "\n";
            os << "  sphere volume       = " << fmt(sf.sphere(R)) << "\n";
            os << "  ball volume         = " << fmt(sf.ball(R)) << "\n";
            os << "  log ball volume     = " << fmt(sf.log_ball(R)) << "\n";
            os << "  unit sphere volume  = " << fmt(tone::unit_sphere_volume(sf_n)) << "\n";
        }
        write_text(sf_out, os.str());
    });

    // ---- growth ------------------------------------------------------------
    auto* gr_cmd = app.add_subcommand(
        "growth", "compute the extrinsic volume-growth profile Q(s) and write CSV");
    GeometryFlags gr_gf;
    double gr_smax = 50.0;
    int gr_bins = 512;
    long gr_nodes = 16384, gr_nodes1 = 2048;
    std::string gr_out;
    add_geometry_flags(gr_cmd, gr_gf);
    gr_cmd->add_option("--smax", gr_smax, "truncation radius (default 50)");
    gr_cmd->add_option("--bins", gr_bins, "radius bins (default 512)");
    gr_cmd->add_option("--nodes", gr_nodes, "quadrature nodes along axis 0 (default 16384)");
    gr_cmd->add_option("--angular-nodes", gr_nodes1,
                       "quadrature nodes along axis 1 (default 2048)");
    gr_cmd->add_option("--out", gr_out, "output CSV file (default stdout)");
    gr_cmd->callback([&] {
        const tone::ImmersedGeometry g = make_geometry(gr_gf);
        const tone::GrowthProfile p =
            tone::compute_growth_profile(g, gr_smax, gr_bins, gr_nodes, gr_nodes1);
        std::ostringstream os;
        tone::write_profile_csv(os, p);
        write_text(gr_out, os.str());
    });

    // ---- bounds ------------------------------------------------------------
    auto* bd_cmd = app.add_subcommand(
        "bounds", "assemble lower/upper fundamental-tone bounds from a growth profile");
    GeometryFlags bd_gf;
    std::vector<double> bd_schedule;
    double bd_smax = 0.0;
    int bd_bins = 0;
    long bd_nodes = 16384, bd_nodes1 = 2048;
    std::string bd_profile, bd_out;
    add_geometry_flags(bd_cmd, bd_gf);
    bd_cmd->add_option("--schedule", bd_schedule, "test radii R, comma separated")
        ->delimiter(',');
    bd_cmd->add_option("--smax", bd_smax, "profile truncation (default: largest schedule R)");
    bd_cmd->add_option("--bins", bd_bins, "radius bins (default: auto)");
    bd_cmd->add_option("--nodes", bd_nodes, "quadrature nodes along axis 0");
    bd_cmd->add_option("--angular-nodes", bd_nodes1, "quadrature nodes along axis 1");
    bd_cmd->add_option("--profile", bd_profile, "read the growth profile from a CSV file");
    bd_cmd->add_option("--out", bd_out, "write the full JSON report here");
    bd_cmd->callback([&] {
        tone::GrowthProfile p;
        ordered_json config;
        std::string geometry_id;
        if (!bd_profile.empty()) {
            std::ifstream in(bd_profile);
            if (!in) throw std::invalid_argument("config: cannot read profile " + bd_profile);
            p = tone::read_profile_csv(in);
            geometry_id = "profile:" + bd_profile;
            config["profile"] = bd_profile;
        } else {
            const tone::ImmersedGeometry g = make_geometry(bd_gf);
            geometry_id = g.name;
            config = geometry_config(bd_gf, g);
            double smax = bd_smax;
            if (smax <= 0.0) {
                smax = 50.0;
                for (const double R : bd_schedule) smax = std::max(smax, R);
            }
            if (g.name == "totally-geodesic") {
                // The profile of a totally geodesic submanifold is the model
                // ball itself: Q = 1 in closed form, at any radius.
                const tone::SpaceForm model{g.ambient.kappa, g.n};
                p = tone::make_synthetic_profile(
                    model, [](double) { return 1.0; }, smax,
                    bd_bins > 0 ? bd_bins : 4096);
            } else {
                p = tone::compute_growth_profile(g, smax, bd_bins > 0 ? bd_bins : 512,
                                                 bd_nodes, bd_nodes1);
            }
            config["smax"] = smax;
        }
        if (bd_schedule.empty())
            bd_schedule = {p.s_max() / 4.0, p.s_max() / 2.0, p.s_max()};
        const tone::BoundReport rep = tone::assemble_report(geometry_id, p, bd_schedule);

        if (!bd_out.empty()) {
            ordered_json j;
            j["geometry"] = rep.geometry;
            j["n"] = rep.n;
            j["m"] = rep.m;
            j["kappa"] = rep.kappa;
            j["lower"] = {{"mckean", rep.lower_mckean}, {"cheeger", rep.lower_cheeger}};
            j["schedule"] = ordered_json::array();
            for (const auto& e : rep.schedule) {
                ordered_json row;
                row["R"] = e.R;
                row["rayleigh_upper"] = e.rayleigh_upper;
                row["paper_upper"] = e.paper_upper;
                row["lambda_R"] = e.lambda_R;
                row["F_R"] = e.F_R;
                row["delta_R"] = e.delta_R;
                row["q_ratio"] = e.q_ratio;
                j["schedule"].push_back(row);
            }
            j["verdict"] = {{"lower", rep.verdict_lower}, {"upper", rep.verdict_upper}};
            j["doubling"] = {{"constant", rep.doubling},
                             {"interval",
                              {{"lower", rep.doubling_interval.lo},
                               {"upper", rep.doubling_interval.hi}}}};
            j["profile_rel_error"] = rep.profile_rel_error;
            config["schedule"] = bd_schedule;
            j["meta"] = {{"version", tone::version()},
                         {"command", "bounds"},
                         {"config", config}};
            write_text(bd_out, j.dump(2) + "\n");
        }
        std::cout << fmt(rep.verdict_lower) << " " << fmt(rep.verdict_upper) << "\n";
    });

    // ---- spectrum ----------------------------------------------------------
    auto* sp_cmd = app.add_subcommand(
        "spectrum", "1-D spectral oracle: bottom eigenvalue of truncated revolution surfaces");
    GeometryFlags sp_gf;
    std::vector<double> sp_trunc = {10.0, 20.0, 30.0};
    long sp_mesh = 4096;
    std::string sp_out;
    add_geometry_flags(sp_cmd, sp_gf);
    sp_cmd->add_option("--truncations", sp_trunc, "truncation radii, comma separated")
        ->delimiter(',');
    sp_cmd->add_option("--mesh", sp_mesh, "base mesh size (default 4096)");
    sp_cmd->add_option("--out", sp_out, "output file (default stdout)");
    sp_cmd->callback([&] {
        const tone::ImmersedGeometry g = make_geometry(sp_gf);
        if (!g.revolution)
            throw std::invalid_argument(
                "config: geometry has no revolution profile; the spectral oracle needs one");
        tone::SpectrumResult r = tone::tone_of_revolution_surface(*g.revolution, sp_trunc,
                                                                  sp_mesh);
        r.geometry = g.name;
        ordered_json j;
        j["geometry"] = r.geometry;
        j["truncations"] = r.truncations;
        j["lambda1"] = r.lambda1;
        j["mesh_error"] = r.mesh_error;
        j["extrapolated"] = r.extrapolated;
        j["error"] = r.error;
        ordered_json config = geometry_config(sp_gf, g);
        config["truncations"] = sp_trunc;
        config["mesh"] = sp_mesh;
        j["meta"] = {{"version", tone::version()},
                     {"command", "spectrum"},
                     {"config", config}};
        write_text(sp_out, j.dump(2) + "\n");
    });

    // ---- catalog -----------------------------------------------------------
    auto* ct_cmd =
        app.add_subcommand("catalog", "list built-in geometries and their expected targets");
    std::string ct_format = "text", ct_out;
    ct_cmd->add_option("--format", ct_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    ct_cmd->add_option("--out", ct_out, "output file (default stdout)");
    ct_cmd->callback([&] {
        const auto entries = tone::catalog_entries();
        std::ostringstream os;
        if (ct_format == "json") {
            ordered_json j;
            j["entries"] = ordered_json::array();
            for (const auto& e : entries) {
                ordered_json row;
                row["name"] = e.name;
                row["summary"] = e.summary;
                row["parameters"] = e.parameters;
                row["targets"] = ordered_json::array();
                for (const auto& t : e.targets)
                    row["targets"].push_back({{"quantity", t.quantity},
                                              {"value", t.value},
                                              {"basis", t.basis}});
                j["entries"].push_back(row);
            }
            j["meta"] = {{"version", tone::version()}, {"command", "catalog"}};
            os << j.dump(2) << "\n";
        } else {
            for (const auto& e : entries) {
                os << e.name << "\n  " << e.summary << "\n  parameters: " << e.parameters
                   << "\n  targets:\n";
                for (const auto& t : e.targets)
                    os << "    " << t.quantity << " = " << fmt(t.value) << "  [" << t.basis
                       << "]\n";
            }
        }
        write_text(ct_out, os.str());
    });

    // ---- verify ------------------------------------------------------------
    auto* vf_cmd = app.add_subcommand(
        "verify", "run the named invariant checks; nonzero exit on any failure");
    tone::VerifyOptions vf_opt;
    vf_cmd->add_option("--suite", vf_opt.suite,
                       "run only one suite: spaceform|geometry|growth|bounds|spectrum|catalog");
    vf_cmd->add_flag("--inject-decreasing-q", vf_opt.inject_decreasing_q,
                     "negative control: add a deliberately failing monotonicity check");
    vf_cmd->callback([&] {
        const int failures = tone::run_verify(vf_opt, std::cout);
        if (failures > 0) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << ordered_json{{"code", 2}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << ordered_json{{"code", 2}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << ordered_json{{"code", 2}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << ordered_json{{"code", 3}, {"message", e.what()}}.dump() << "\n";
        return 3;
    }
    return exit_code;
}
