#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "critfield/construct.hpp"
#include "critfield/distfield.hpp"
#include "critfield/hyperbolic.hpp"
#include "critfield/io.hpp"
#include "critfield/levelset.hpp"
#include "critfield/realset.hpp"
#include "critfield/setgen.hpp"
#include "critfield/verify.hpp"

using namespace critfield;
using critfield::io::json;

namespace {

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::save_json_file(out_path, j);
}

json extended_real(double v) { return std::isfinite(v) ? json(v) : json("inf"); }

json read_set_doc(const std::string& path) {
    if (path.empty() || path == "-") {
        json j;
        std::cin >> j;
        return j;
    }
    return io::load_json_file(path);
}

void render_planar(const PlanarCompactSet& F, const std::string& path) {
    io::SvgWriter svg(F.bounding_box().inflated(0.05 * (F.diameter() + 1.0)));
    for (const auto& p : F.points()) svg.add_point(p, "#1f77b4");
    for (const auto& s : F.segments()) svg.add_segment(s.a, s.b, "#1f77b4");
    svg.save(path);
}

struct ScanArgs {
    std::string set_path;
    double eps = 0.1;
    double step = 0.01;
    double tol = 1e-9;
    std::vector<double> window;
    std::string csv_path, svg_path, out_path;
};

void run_field_scan(const ScanArgs& a) {
    auto F = io::planar_set_from_json(read_set_doc(a.set_path));
    Rect window = a.window.size() == 4
                      ? Rect{{a.window[0], a.window[1]}, {a.window[2], a.window[3]}}
                      : F.bounding_box().inflated(F.diameter());
    ScanOptions opt;
    opt.tol = a.tol;
    auto records = scan_critical(F, window, a.step, opt);

    json rep;
    rep["anchor"] = "critreg";
    rep["grid_step"] = a.step;
    rep["tol"] = a.tol;
    rep["records"] = json::array();
    std::size_t above = 0;
    for (const auto& r : records) {
        rep["records"].push_back({{"x", r.location.x},
                                  {"y", r.location.y},
                                  {"value", r.value},
                                  {"residual", r.residual}});
        if (r.value >= a.eps) ++above;
    }
    rep["values_above_eps"] = above;
    rep["cvdiam"] = {{"anchor", "cvdiam"}, {"diameter", F.diameter()}};
    if (records.size() >= 2) {
        auto fr = ferry_check(records, a.tol);
        rep["ferry"] = {{"anchor", "ferryn"},
                        {"pairs", fr.pairs},
                        {"violations", fr.violations},
                        {"worst_ratio", fr.worst_ratio}};
    }
    if (!a.csv_path.empty()) {
        std::ofstream out(a.csv_path);
        out << io::records_csv(records);
    }
    if (!a.svg_path.empty()) {
        io::SvgWriter svg(window);
        for (const auto& p : F.points()) svg.add_point(p, "#1f77b4");
        for (const auto& s : F.segments()) svg.add_segment(s.a, s.b, "#1f77b4");
        for (const auto& r : records) svg.add_point(r.location, "#d62728");
        svg.save(a.svg_path);
    }
    emit(rep, a.out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gap-sum analytics and critical values of planar distance functions"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned seed = 0;
    app.add_option("--seed", seed, "seed for randomized property runs")->capture_default_str();

    std::string out_path;

    // ---- setgen ----------------------------------------------------------
    auto* sg = app.add_subcommand("setgen", "generate the named compact null sets");
    sg->require_subcommand(1);

    double sg_alpha = 1.0 / 3.0;
    int sg_depth = 10, sg_nmax = 4;
    double tail_alpha = 0.5;
    bool sg_points = false;
    std::string sg_out;

    auto* sg_cantor = sg->add_subcommand("cantor", "middle-interval Cantor truncation");
    double sg_shift = 0.0;
    sg_cantor->add_option("--alpha", sg_alpha, "removal ratio in (0, 1/2)")->required();
    sg_cantor->add_option("--depth", sg_depth)->required();
    sg_cantor->add_option("--tail-alpha", tail_alpha, "exponent of the reported tail");
    sg_cantor->add_flag("--points", sg_points, "emit the endpoint skeleton");
    sg_cantor->add_option("--shift", sg_shift, "translate the set");
    sg_cantor->add_option("-o,--out", sg_out);
    sg_cantor->callback([&] {
        auto c = cantor(sg_alpha, sg_depth);
        if (!c.has_explicit()) throw CLI::ValidationError("depth too large for explicit output");
        auto set = sg_points ? c.set.endpoints() : c.set;
        if (sg_shift != 0.0) set = set.translate(sg_shift);
        emit(io::to_json(set, std::make_pair(tail_alpha, c.tail_gap_sum(tail_alpha))), sg_out);
    });

    auto* sg_tf = sg->add_subcommand("tf", "block assembly over [1,2] with endpoint 16");
    bool sg_fat = false;
    sg_tf->add_option("--nmax", sg_nmax)->required();
    sg_tf->add_flag("--fat", sg_fat, "emit the interval truncation instead of the skeleton");
    sg_tf->add_option("-o,--out", sg_out);
    sg_tf->callback([&] {
        auto tf = tf_assembly(sg_nmax);
        double tail = tf.tail_beyond_blocks_half + tf.truncation_tail_half;
        emit(io::to_json(sg_fat ? tf.set : tf.skeleton, std::make_pair(0.5, tail)), sg_out);
    });

    auto* sg_t45 = sg->add_subcommand("t45", "equidistant dyadic-block point set");
    sg_t45->add_option("--nmax", sg_nmax)->required();
    sg_t45->add_option("-o,--out", sg_out);
    sg_t45->callback([&] { emit(io::to_json(t45_set(sg_nmax).set), sg_out); });

    // ---- gapsum ----------------------------------------------------------
    auto* gs = app.add_subcommand("gapsum", "degree-alpha gap sum of a set document");
    double gs_alpha = 0.5, gs_profile_s = 0.0;
    int gs_profile_n = 24;
    std::string gs_set, gs_profile_out;
    gs->add_option("--alpha", gs_alpha)->required();
    gs->add_option("--set", gs_set, "JSON set document (default: stdin)");
    gs->add_option("--profile-s", gs_profile_s, "also emit the content profile at this s");
    gs->add_option("--profile-out", gs_profile_out, "CSV path for the profile (r,measure,ratio)");
    gs->add_option("--profile-n", gs_profile_n, "dyadic profile depth");
    gs->add_option("-o,--out", out_path);
    gs->callback([&] {
        auto doc = io::real_set_from_json(read_set_doc(gs_set));
        json rep;
        rep["anchor"] = "bano";
        rep["alpha"] = gs_alpha;
        rep["gap_sum"] = gap_sum(doc.set, gs_alpha);
        double tail = doc.tail && doc.tail->first == gs_alpha ? doc.tail->second : 0.0;
        if (doc.tail && doc.tail->first == gs_alpha) {
            rep["tail"] = extended_real(tail);
            rep["total"] = extended_real(gap_sum(doc.set, gs_alpha) + tail);
        }
        auto bt = is_bt(doc.set, gs_alpha, tail);
        rep["is_bt"] = bt.is_bt;
        rep["lebesgue"] = bt.lebesgue;
        if (gs_profile_s > 0.0) {
            double span = doc.set.max() - doc.set.min();
            std::vector<double> grid;
            for (int k = 1; k <= gs_profile_n; ++k)
                grid.push_back(std::max(span, 1.0) * std::pow(2.0, -k));
            auto prof = minkowski_profile(doc.set, gs_profile_s, grid);
            rep["profile"] = {{"anchor", "nulmin"},
                              {"s", gs_profile_s},
                              {"ratio_min", prof.ratio_min},
                              {"ratio_max", prof.ratio_max}};
            if (!gs_profile_out.empty()) {
                std::ofstream out(gs_profile_out);
                out << io::profile_csv(prof);
            }
        }
        emit(rep, out_path);
    });

    // ---- construct -------------------------------------------------------
    auto* ct = app.add_subcommand("construct", "planar realizations of prescribed targets");
    ct->require_subcommand(1);

    std::string ct_set, ct_out, ct_svg;
    auto* ct_ferry = ct->add_subcommand("ferry", "paired-point realization of a null target");
    ct_ferry->add_option("--set", ct_set, "target set document")->required();
    ct_ferry->add_option("--out", ct_out)->required();
    ct_ferry->add_option("--svg", ct_svg);
    ct_ferry->callback([&] {
        auto doc = io::real_set_from_json(read_set_doc(ct_set));
        auto c = build_ferry_set(doc.set);
        io::save_json_file(ct_out, io::to_json(c.F));
        json rep;
        rep["anchor"] = "konstr";
        rep["sites"] = c.F.points().size();
        rep["g_max"] = c.g.back();
        rep["ball_radius"] = {{"anchor", "Fmala"}, {"value", c.b + c.g.back()}};
        std::cout << rep.dump(2) << "\n";
        if (!ct_svg.empty()) render_planar(c.F, ct_svg);
    });

    std::vector<std::string> ct_parts;
    std::vector<double> ct_deltas;
    std::string ct_mode = "bounded";
    auto* ct_asm = ct->add_subcommand("assemble", "disjoint translated union of parts");
    ct_asm->add_option("--parts", ct_parts, "planar set documents")->required();
    ct_asm->add_option("--delta", ct_deltas, "guard scales (default: part diameters)");
    ct_asm->add_option("--mode", ct_mode)->check(CLI::IsMember({"bounded", "closed"}));
    ct_asm->add_option("--out", ct_out)->required();
    ct_asm->add_option("--svg", ct_svg);
    ct_asm->callback([&] {
        std::vector<TranslatePart> parts;
        for (std::size_t i = 0; i < ct_parts.size(); ++i) {
            auto F = io::planar_set_from_json(io::load_json_file(ct_parts[i]));
            double delta = i < ct_deltas.size() ? ct_deltas[i] : std::max(F.diameter(), 1e-3);
            parts.push_back({F, delta});
        }
        auto mode = ct_mode == "bounded" ? AssembleMode::bounded : AssembleMode::closed;
        auto asm_out = assemble_translates(parts, mode);
        io::save_json_file(ct_out, io::to_json(asm_out.whole));
        json rep;
        rep["anchor"] = ct_mode == "bounded" ? "Pchardon" : "diskre";
        rep["parts"] = parts.size();
        rep["guard_area"] = asm_out.guard_area;
        rep["locality_verified"] = asm_out.locality_verified;
        std::cout << rep.dump(2) << "\n";
        if (!ct_svg.empty()) {
            Rect bb = asm_out.whole.bounding_box().inflated(1.0);
            io::SvgWriter svg(bb);
            for (const auto& p : asm_out.whole.points()) svg.add_point(p, "#1f77b4");
            for (std::size_t i = 0; i < asm_out.centers.size(); ++i)
                if (asm_out.deltas[i] > 0)
                    svg.add_circle(asm_out.centers[i], 9.0 * asm_out.deltas[i], "#2ca02c");
            svg.save(ct_svg);
        }
    });

    // ---- field -----------------------------------------------------------
    auto* fd = app.add_subcommand("field", "distance-field queries");
    fd->require_subcommand(1);
    ScanArgs scan_args;
    auto* fd_scan = fd->add_subcommand("scan", "grid scan for critical points");
    fd_scan->add_option("--set", scan_args.set_path)->required();
    fd_scan->add_option("--eps", scan_args.eps);
    fd_scan->add_option("--step", scan_args.step)->required();
    fd_scan->add_option("--tol", scan_args.tol);
    fd_scan->add_option("--window", scan_args.window)->expected(4);
    fd_scan->add_option("--csv", scan_args.csv_path);
    fd_scan->add_option("--svg", scan_args.svg_path);
    fd_scan->add_option("-o,--out", scan_args.out_path);
    fd_scan->callback([&] { run_field_scan(scan_args); });

    // ---- levelset --------------------------------------------------------
    auto* ls = app.add_subcommand("levelset", "distance-sphere extraction");
    std::string ls_set, ls_svg, ls_out;
    double ls_r = 1.0, ls_step = 0.01, ls_radius = 0.1;
    std::vector<double> ls_window, ls_focus;
    ls->add_option("--set", ls_set)->required();
    ls->add_option("--r", ls_r)->required();
    ls->add_option("--window", ls_window)->expected(4)->required();
    ls->add_option("--step", ls_step)->required();
    ls->add_option("--focus", ls_focus)->expected(2);
    ls->add_option("--radius", ls_radius);
    ls->add_option("--svg", ls_svg);
    ls->add_option("-o,--out", ls_out);
    ls->callback([&] {
        auto F = io::planar_set_from_json(read_set_doc(ls_set));
        Rect window{{ls_window[0], ls_window[1]}, {ls_window[2], ls_window[3]}};
        auto curves = extract(F, ls_r, window, ls_step);
        std::optional<Vec2> focus;
        if (ls_focus.size() == 2) focus = Vec2{ls_focus[0], ls_focus[1]};
        auto diag = manifold_diagnostic(curves, focus, ls_radius);
        json rep;
        rep["anchor"] = "tlcv";
        rep["r"] = ls_r;
        rep["components"] = curves.component_count;
        rep["chains"] = curves.chains.size();
        rep["degree_anomalies"] = diag.degree_anomalies;
        if (focus) {
            rep["focus"] = {{"anchor", "konstr_TF"},
                            {"components_in_window", diag.components_in_window},
                            {"extra_components", diag.extra_components},
                            {"focus_on_curve", diag.focus_on_curve}};
        }
        if (!ls_svg.empty()) {
            io::SvgWriter svg(window);
            for (const auto& p : F.points())
                if (window.inflated(0.1 * window.width()).contains(p))
                    svg.add_point(p, "#1f77b4");
            for (const auto& s : F.segments()) svg.add_segment(s.a, s.b, "#1f77b4");
            for (const auto& chain : curves.chains)
                svg.add_polyline(chain.vertices, "#2ca02c", chain.closed);
            for (const auto& a : curves.anomalies) svg.add_point(a, "#d62728");
            svg.save(ls_svg);
        }
        emit(rep, ls_out);
    });

    // ---- verify ----------------------------------------------------------
    auto* vf = app.add_subcommand("verify", "end-to-end bound verifications");
    vf->require_subcommand(1);

    std::string v_path, v_out, v_cv;
    double v_eps = 0.5, v_tol = 1e-6, v_D = 1.0, v_alpha = 0.5, v_beta = 1.0;
    double v_box = 0.02, v_step = 0.0;
    int v_hdiv = 500, v_N = 12, v_t45 = 0;
    std::vector<double> v_a, v_r;

    {
        auto* v = vf->add_subcommand("odrn", "target -> construction -> recovery round trip");
        v->add_option("--target", v_path, "target set document (default: random 10 points)");
        v->add_option("--eps", v_eps);
        v->add_option("--tol", v_tol);
        v->add_option("--h-div", v_hdiv, "grid step = diam/h-div");
        v->add_option("-o,--out", v_out);
        v->callback([&] {
            CompactRealSet A;
            if (v_path.empty()) {
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> u(1.0, 2.0);
                std::vector<double> pts;
                while (pts.size() < 10) {
                    double x = u(rng);
                    bool ok = true;
                    for (double p : pts)
                        if (std::abs(p - x) < 0.02) ok = false;
                    if (ok) pts.push_back(x);
                }
                A = CompactRealSet::from_points(std::move(pts));
            } else {
                A = io::real_set_from_json(read_set_doc(v_path)).set;
            }
            auto c = build_ferry_set(A);
            auto trip = odrn_round_trip(A, v_eps, c.F.diameter() / v_hdiv, v_tol);
            json rep;
            rep["anchor"] = "odrn";
            rep["pass"] = trip.superset && trip.recovered_bt;
            rep["superset"] = trip.superset;
            rep["recovered_bt"] = trip.recovered_bt;
            rep["worst_error"] = trip.worst_error;
            rep["recovered"] = io::to_json(trip.recovered);
            emit(rep, v_out);
        });
    }
    {
        auto* v = vf->add_subcommand("chardon", "band series and integral route");
        v->add_option("--set", v_path);
        v->add_option("--d", v_D);
        v->add_option("--t45", v_t45, "use the analytic band family at this n_max");
        v->add_option("-o,--out", v_out);
        v->callback([&] {
            ChardonReport rep =
                v_t45 > 0 ? chardon_series(t45_bands(v_t45), 1.0)
                          : chardon_series(io::real_set_from_json(read_set_doc(v_path)).set, v_D);
            json j;
            j["anchor"] = "rada";
            j["S"] = rep.S;
            j["integral"] = {{"anchor", "chardon"}, {"value", rep.integral}};
            j["bands"] = rep.bands;
            j["consistent"] = rep.consistent;
            emit(j, v_out);
        });
    }
    {
        auto* v = vf->add_subcommand("peter", "dyadic annulus packing counts");
        v->add_option("--set", v_path)->required();
        v->add_option("--d", v_D, "defaults to diam F");
        v->add_option("--n", v_N);
        v->add_option("-o,--out", v_out);
        v->callback([&] {
            auto F = io::planar_set_from_json(read_set_doc(v_path));
            double d = v_D > 0 ? std::max(v_D, F.diameter()) : F.diameter();
            auto prof = annulus_packing(F, d, v_N);
            json j;
            j["anchor"] = "sumaan";
            j["weighted_sum"] = prof.weighted_sum;
            j["bound"] = prof.bound;
            j["margin"] = prof.bound / std::max(prof.weighted_sum, 1e-300);
            j["pass"] = prof.weighted_sum <= prof.bound && prof.covering_verified &&
                        prof.disjointness_verified;
            j["covering_verified"] = prof.covering_verified;
            j["disjointness_verified"] = prof.disjointness_verified;
            j["p"] = prof.p;
            emit(j, v_out);
        });
    }
    {
        auto* v = vf->add_subcommand("mkrb", "box-count profile of critical detections");
        v->add_option("--set", v_path)->required();
        v->add_option("--box", v_box);
        v->add_option("--step", v_step, "defaults to diam/150");
        v->add_option("-o,--out", v_out);
        v->callback([&] {
            auto F = io::planar_set_from_json(read_set_doc(v_path));
            double h = v_step > 0 ? v_step : F.diameter() / 150.0;
            std::vector<double> r_grid;
            for (int i = 0; i <= 40; ++i)
                r_grid.push_back(F.diameter() * 1.1 * i / 40.0 + 1e-6);
            auto prof = mkrb_profile(F, r_grid, v_box, h);
            json j;
            j["anchor"] = "mkrb";
            j["integral"] = prof.integral;
            j["records"] = prof.records;
            j["finite"] = std::isfinite(prof.integral);
            emit(j, v_out);
        });
    }
    {
        auto* v = vf->add_subcommand("nakouli", "local gap-sum bound for critical values");
        v->add_option("--set", v_path)->required();
        v->add_option("--a", v_a)->expected(2)->required();
        v->add_option("--step", v_step, "defaults to d_F(a)/200");
        v->add_option("-o,--out", v_out);
        v->callback([&] {
            auto F = io::planar_set_from_json(read_set_doc(v_path));
            Vec2 av{v_a[0], v_a[1]};
            double h = v_step > 0 ? v_step : distance(F, av) / 200.0;
            auto rep = nakouli_bound_check(F, av, h);
            json j;
            j["anchor"] = "nakouli";
            j["pass"] = rep.pass;
            j["delta"] = rep.delta;
            j["bound"] = rep.bound;
            j["value_gap_sum"] = rep.value_gap_sum;
            j["margin"] = extended_real(rep.margin);
            j["records"] = rep.records;
            emit(j, v_out);
        });
    }
    {
        auto* v = vf->add_subcommand("konmn", "exact unattainable-count arithmetic");
        v->add_option("--d", v_D);
        v->add_option("--alpha", v_alpha);
        v->add_option("--beta", v_beta);
        v->add_option("--cv", v_cv, "computed critical-value set");
        v->add_option("-o,--out", v_out);
        v->callback([&] {
            CompactRealSet cv;
            if (!v_cv.empty()) cv = io::real_set_from_json(read_set_doc(v_cv)).set;
            auto rep = konmn_bound(v_D, v_alpha, v_beta, cv);
            json j;
            j["anchor"] = "konmn";
            j["p"] = rep.p_decimal;
            j["excluded"] = rep.excluded;
            j["band_value"] = rep.band_value;
            j["band_bound"] = rep.band_bound;
            j["forced_lhs"] = rep.forced_lhs;
            emit(j, v_out);
        });
    }
    {
        auto* v = vf->add_subcommand("porosity", "largest complement component near 0");
        v->add_option("--cv", v_cv)->required();
        v->add_option("--r", v_r, "probe radii");
        v->add_option("-o,--out", v_out);
        v->callback([&] {
            auto cv = io::real_set_from_json(read_set_doc(v_cv)).set;
            std::vector<double> grid = v_r.empty()
                                           ? std::vector<double>{1.0, 0.5, 0.25, 0.125}
                                           : v_r;
            auto pts = porosity_probe(cv, grid);
            json j;
            j["anchor"] = "porinn";
            j["profile"] = json::array();
            for (const auto& p : pts)
                j["profile"].push_back({{"r", p.r}, {"gamma", p.gamma}, {"ratio", p.ratio}});
            emit(j, v_out);
        });
    }

    // ---- hyp -------------------------------------------------------------
    auto* hy = app.add_subcommand("hyp", "constant-curvature checks");
    auto* hy_check = hy->add_subcommand("check", "run a named check");
    std::string hy_kind, hy_out;
    double hy_k = -1.0;
    int hy_n = 1000;
    hy_check->add_option("kind", hy_kind)
        ->check(CLI::IsMember({"cosinus", "ferry", "cosh"}))
        ->required();
    hy_check->add_option("--k", hy_k, "curvature (negative)");
    hy_check->add_option("--n", hy_n);
    hy_check->add_option("-o,--out", hy_out);
    hy_check->callback([&] {
        if (!(hy_k < 0)) throw CLI::ValidationError("curvature must be negative");
        double kappa = std::sqrt(-1.0 / hy_k);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        json j;
        if (hy_kind == "cosh") {
            j["anchor"] = "cosh";
            std::size_t fails = 0;
            for (int i = 0; i < hy_n; ++i) {
                auto r = cosh_inequality_check(10.0 * u(rng) - 5.0, 10.0 * u(rng) - 5.0);
                if (!r.first || !r.second) ++fails;
            }
            j["samples"] = hy_n;
            j["failures"] = fails;
            j["pass"] = fails == 0;
        } else if (hy_kind == "cosinus") {
            j["anchor"] = "cosinus";
            double worst = 0.0;
            // step scales with the curvature length so the difference error
            // stays comparable across k
            std::vector<double> t_grid{1e-4 * kappa};
            for (int i = 0; i < hy_n; ++i) {
                Vec2 zx{0.6 * u(rng) - 0.3, 0.6 * u(rng) - 0.3};
                auto x = hpoint(zx, kappa);
                std::vector<HPoint> F;
                int m = 1 + int(u(rng) * 3.0);
                for (int s = 0; s < m; ++s) {
                    double ang = 2 * M_PI * u(rng);
                    F.push_back(exp_map(x, {std::cos(ang), std::sin(ang)},
                                        kappa * (0.8 + 0.7 * u(rng))));
                }
                double va = 2 * M_PI * u(rng);
                auto rep = cosine_formula_check(F, x, {std::cos(va), std::sin(va)}, t_grid);
                worst = std::max(worst, rep.max_error);
            }
            j["configurations"] = hy_n;
            j["max_error"] = worst;
            j["pass"] = worst <= 1e-4;
        } else {
            j["anchor"] = "P1";
            std::size_t violations = 0, pairs = 0;
            int configs = std::max(1, hy_n / 50);
            for (int t = 0; t < configs; ++t) {
                std::vector<HPoint> F;
                std::vector<HPoint> records;
                for (int c = 0; c < 3; ++c) {
                    Vec2 zx{0.3 * u(rng) - 0.15, 0.3 * u(rng) - 0.15};
                    auto x = hpoint(zx, kappa);
                    double r = kappa * (0.1 + 0.2 * u(rng));
                    double base = 2 * M_PI * u(rng);
                    int m = 2 + int(u(rng) * 2.0);
                    for (int i = 0; i < m; ++i) {
                        double ang = base + 2 * M_PI * i / m;
                        F.push_back(exp_map(x, {std::cos(ang), std::sin(ang)}, r));
                    }
                    records.push_back(x);
                }
                std::vector<HPoint> verified;
                for (const auto& x : records)
                    if (hyp_critical(F, x, 1e-7).critical) verified.push_back(x);
                if (verified.size() < 2) continue;
                double R = 0.0;
                for (const auto& a : verified) {
                    R = std::max(R, hyp_distance_to_set(F, a));
                    for (const auto& b : verified) R = std::max(R, hdist(a, b));
                }
                auto rep = riemannian_ferry_check(F, verified, 2.0 * R, kappa);
                violations += rep.violations;
                pairs += rep.pairs;
            }
            j["pairs"] = pairs;
            j["violations"] = violations;
            j["pass"] = violations == 0;
        }
        emit(j, hy_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
