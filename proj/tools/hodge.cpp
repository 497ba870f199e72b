#include "hodge/hodge.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>

using namespace hodge;

namespace {

enum Exit { ok = 0, failed = 1, input_error = 2, no_convergence = 3 };

struct Common {
    std::string input;
    std::optional<int> dim;
    std::string weights = "file";
    std::string json_out;
    std::uint64_t seed = 0;
};

void add_input(CLI::App* cmd, Common& c, bool required = true)
{
    auto* opt = cmd->add_option("input", c.input, "complex document (JSON)");
    if (required) opt->required();
    cmd->add_option("--dim", c.dim, "clique dimension n (default: the document's)");
    cmd->add_option("--weights", c.weights, "higher weights: file, unit or constant:<c>")->capture_default_str();
    cmd->add_option("--json", c.json_out, "write a JSON report here");
}

void write_report(const std::string& path, const Json& j)
{
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::string fmt(double v, int digits = 12)
{
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

/// Rounds rounding-level noise to zero before printing.
double clean(double v, double scale) { return std::abs(v) <= 1e-12 * std::max(1.0, scale) ? 0.0 : v; }

// ---------------------------------------------------------------------------

int cmd_build(const Common& c)
{
    RunMetadata meta{"build", c.seed};
    auto doc = load_complex_document(c.input);
    auto cx = build(doc, c.dim, c.weights);
    std::string levels;
    for (int k = 0; k <= cx.dimension(); ++k) levels += (k ? " / " : "") + std::to_string(cx.size(k));
    std::cout << "levels: " << levels << '\n';
    std::cout << "max vertex degree " << cx.graph().max_degree() << ", line-graph degree "
              << line_graph_max_degree(cx.graph()) << '\n';
    std::cout << "k  size  D_down  D_up\n";
    Json rows = Json::array();
    for (int k = 0; k <= cx.dimension(); ++k) {
        auto d = up_down_degrees(cx, k);
        std::cout << k << "  " << cx.size(k) << "  " << fmt(d.down) << "  " << fmt(d.up) << '\n';
        rows.push_back({{"degree", k}, {"size", cx.size(k)}, {"D_down", d.down}, {"D_up", d.up}});
    }
    write_report(c.json_out, Json{{"metadata", meta.to_json()}, {"levels", rows}});
    return ok;
}

struct SpectrumArgs {
    int degree = 0;
    std::string flavor = "skew";
    bool normalized = false;
    std::size_t dense_cap = 2000;
};

int cmd_spectrum(const Common& c, const SpectrumArgs& a)
{
    RunMetadata meta{"spectrum", c.seed};
    auto cx = build(load_complex_document(c.input), c.dim, c.weights);
    const Flavor flavor = parse_flavor(a.flavor);
    if (a.degree < 0 || a.degree > cx.dimension())
        throw InputError("degree " + std::to_string(a.degree) + " outside 0.." + std::to_string(cx.dimension()));
    const std::size_t rows = cx.size(a.degree);
    if (rows > a.dense_cap)
        throw InputError("block has " + std::to_string(rows) + " rows, above the dense cap " +
                         std::to_string(a.dense_cap) + "; use `hodge bounds` for an operator-norm estimate");
    if (rows == 0) {
        std::cout << "empty block\n";
        return ok;
    }
    // the weighted block is self-adjoint for the M-inner product; its orthonormal matrix is M^{1/2} Δ M^{-1/2}
    DenseMatrix m = a.normalized ? DenseMatrix(normalized_block(cx, a.degree, flavor).matrix)
                                 : DenseMatrix(laplacian_block(cx, a.degree, flavor).orthonormal_matrix());
    auto spec = hermitian_spectrum(HermitianMatrix(m));
    const double scale = std::max(std::abs(spec.eigenvalues.front()), std::abs(spec.eigenvalues.back()));
    std::cout << "# " << (a.normalized ? "normalized" : "weighted") << " block k=" << a.degree << " " << a.flavor
              << ", " << rows << " eigenvalues, residual " << fmt(spec.residual, 3) << '\n';
    Json values = Json::array();
    for (double v : spec.eigenvalues) {
        std::cout << fmt(clean(v, scale)) << '\n';
        values.push_back(clean(v, scale));
    }
    meta.tolerances["clean"] = 1e-12;
    write_report(c.json_out, Json{{"metadata", meta.to_json()},
                                  {"degree", a.degree},
                                  {"flavor", a.flavor},
                                  {"normalized", a.normalized},
                                  {"residual", spec.residual},
                                  {"eigenvalues", values}});
    return ok;
}

struct BoundsArgs {
    std::optional<int> degree;
    bool all = false;
    std::string flavor = "skew";
    bool normalized = false;
    double tol = 1e-8;
    std::vector<std::string> comparability;
    std::vector<int> regular_degrees;
};

int cmd_bounds(const Common& c, const BoundsArgs& a)
{
    RunMetadata meta{"bounds", c.seed};
    meta.tolerances["iterative"] = a.tol;
    Json report{{"metadata", Json::object()}};
    int code = ok;

    if (!a.comparability.empty()) {
        auto cc = ComparabilityConstants::parse(a.comparability[0], a.comparability[1], a.comparability[2],
                                                a.comparability[3]);
        const Rational cw = weighted_constant(cc);
        std::cout << "C_w = " << cw.numerator() << "/" << cw.denominator() << " ~ " << fmt(to_double(cw), 8) << '\n';
        Json rows = Json::array();
        for (int d : a.regular_degrees) {
            const Rational b = weighted_regular_bound(cc, d);
            std::cout << "d=" << d << "  2(d-1)=" << 2 * (d - 1) << "  C_w 2(d-1) = " << b.numerator() << "/"
                      << b.denominator() << " ~ " << std::fixed << std::setprecision(2) << to_double(b)
                      << std::defaultfloat << "  unweighted 4(d-1) = " << universal_edge_bound(d) << '\n';
            rows.push_back({{"d", d}, {"weighted_bound", to_double(b)}, {"unweighted_bound", universal_edge_bound(d)}});
        }
        report["weighted_constant"] = {{"numerator", cw.numerator()}, {"denominator", cw.denominator()},
                                       {"value", to_double(cw)}, {"bounds", rows}};
    }

    if (!c.input.empty()) {
        auto cx = build(load_complex_document(c.input), c.dim, c.weights);
        const Flavor flavor = parse_flavor(a.flavor);
        std::vector<int> degrees;
        if (a.degree && !a.all) {
            if (*a.degree < 0 || *a.degree > cx.dimension())
                throw InputError("degree " + std::to_string(*a.degree) + " outside 0.." + std::to_string(cx.dimension()));
            degrees.push_back(*a.degree);
        } else {
            for (int k = 0; k <= cx.dimension(); ++k) degrees.push_back(k);
        }
        Json reports = Json::array();
        for (int k : degrees) {
            if (cx.size(k) == 0) continue;
            auto r = certify(cx, k, flavor, {.normalized = a.normalized, .power = {.tol = a.tol, .seed = c.seed}});
            std::cout << (a.normalized ? "normalized" : "weighted") << " block k=" << k << " " << a.flavor
                      << ": norm " << fmt(r.computed_norm, 10) << " (" << r.iterations << " iterations)\n";
            for (const auto& cert : r.certificates) {
                const bool pass = cert.margin >= -r.tolerance;
                std::cout << "  " << (pass ? "PASS" : "FAIL") << (cert.binding ? "  " : "* ") << std::left
                          << std::setw(30) << cert.name << std::right << " " << fmt(cert.value, 10) << "  margin "
                          << fmt(cert.margin, 6) << "  [" << cert.formula << "]\n";
            }
            if (!r.passed()) code = failed;
            reports.push_back(to_json(r));
        }
        std::cout << "(* advisory, not part of the verdict)\n" << (code == ok ? "PASS" : "FAIL") << '\n';
        report["reports"] = reports;
        report["status"] = code == ok ? "PASS" : "FAIL";
    }
    report["metadata"] = meta.to_json();
    write_report(c.json_out, report);
    return code;
}

struct BlochArgs {
    std::vector<std::string> lattices;
    std::vector<std::string> cells;
    bool all = false;
    int grid = 0;
    double tol = 1e-9;
    std::string flavor = "sym";
    bool triangles = false;
    unsigned threads = 0;
    std::string json_out;
};

int cmd_bloch(const BlochArgs& a)
{
    RunMetadata meta{"bloch", 0};
    meta.tolerances["refine"] = a.tol;
    ScanOptions opt{.grid = a.grid, .refine_tol = a.tol, .threads = a.threads,
                    .bloch = {parse_flavor(a.flavor), a.triangles}};
    Json rows = Json::array();

    if (a.all) {
        std::vector<std::string> names = catalog_names();
        names.erase(std::remove(names.begin(), names.end(), "line"), names.end());
        auto table = compare_table(names, opt);
        std::cout << std::left << std::setw(12) << "lattice" << std::right << std::setw(4) << "d" << std::setw(8)
                  << "2(d-1)" << std::setw(8) << "4(d-1)" << std::setw(14) << "bloch" << std::setw(8) << "ratio"
                  << "   variants\n";
        for (const auto& row : table) {
            std::cout << std::left << std::setw(12) << row.lattice << std::right << std::setw(4) << row.degree
                      << std::setw(8) << row.line_degree << std::setw(8) << row.universal << std::setw(14)
                      << fmt(row.bloch, 10) << std::setw(8) << fmt(row.ratio, 3) << "  ";
            for (const auto& v : row.variants) std::cout << " " << variant_name(v.options) << "=" << fmt(v.value, 8);
            std::cout << '\n';
            rows.push_back(to_json(row));
        }
        write_report(a.json_out, Json{{"metadata", meta.to_json()}, {"rows", rows}});
        return ok;
    }

    std::vector<PeriodicCell> cells;
    for (const auto& name : a.lattices) cells.push_back(catalog(name));
    for (const auto& path : a.cells) cells.push_back(load_cell(path));
    if (cells.empty()) throw InputError("give --lattice, --cell or --all");
    for (const auto& cell : cells) {
        auto s = sup_norm(cell, opt);
        const int d = cell.degree();
        std::cout << cell.name << ": d=" << d;
        if (d > 0) std::cout << " 4(d-1)=" << universal_edge_bound(d);
        std::cout << " sup=" << fmt(s.sup_norm, 12) << " argmax=(";
        for (std::size_t i = 0; i < s.argmax.size(); ++i) std::cout << (i ? "," : "") << fmt(s.argmax[i], 8);
        std::cout << ") grid=" << s.grid << " flavor=" << variant_name(opt.bloch) << '\n';
        rows.push_back({{"lattice", cell.name}, {"degree", d}, {"universal_bound", d > 0 ? universal_edge_bound(d) : 0},
                        {"sup_norm", s.sup_norm}, {"coarse_max", s.coarse_max}, {"argmax", s.argmax},
                        {"min_eigenvalue", s.min_eigenvalue}, {"grid", s.grid}, {"refinements", s.refinements},
                        {"variant", variant_name(opt.bloch)}});
    }
    write_report(a.json_out, Json{{"metadata", meta.to_json()}, {"rows", rows}});
    return ok;
}

struct ColorArgs {
    std::string colors;
    std::optional<int> greedy;
    double tol = 1e-12;
    double spectrum_tol = 1e-9;
};

int cmd_color_check(const Common& c, const ColorArgs& a)
{
    RunMetadata meta{"color-check", c.seed};
    meta.tolerances["identity"] = a.tol;
    meta.tolerances["spectrum"] = a.spectrum_tol;
    auto doc = load_complex_document(c.input);
    auto cx = build(doc, c.dim, c.weights);
    Coloring col;
    if (a.greedy) {
        auto g = greedy_coloring(cx.graph(), *a.greedy);
        if (!g.coloring) {
            std::cout << "FAIL: " << g.message << '\n';
            write_report(c.json_out, Json{{"metadata", meta.to_json()}, {"status", "FAIL"}, {"error", g.message}});
            return failed;
        }
        col = *g.coloring;
    } else if (!a.colors.empty()) {
        col = load_coloring(a.colors);
    } else if (doc.coloring) {
        col = *doc.coloring;
    } else {
        throw InputError("no coloring: give --colors, --greedy or a 'coloring' section");
    }
    try {
        col.validate(cx.graph());
    } catch (const InputError& e) {
        std::cout << "FAIL: " << e.what() << '\n';
        write_report(c.json_out, Json{{"metadata", meta.to_json()}, {"status", "FAIL"}, {"error", e.what()}});
        return failed;
    }

    auto parity = parity_check_all(cx, col);
    auto recs = intertwine_residuals(cx, col);
    std::cout << "colors used: " << col.p << "\nface parity: " << parity.checked - parity.failed << "/" << parity.checked
              << " faces satisfy the plain relation, " << parity.checked - parity.rank_relation_failed << "/"
              << parity.checked << " the rank-corrected one\n";
    std::cout << "k  d_res  delta_res  lap_res  norm_res  spec_gap  ker_skew  ker_sym\n";
    bool pass = parity.failed == 0;
    Json rows = Json::array();
    for (const auto& r : recs) {
        std::cout << r.degree << "  " << fmt(r.d_residual, 4) << "  " << fmt(r.delta_residual, 4) << "  "
                  << fmt(r.laplacian_residual, 4) << "  " << fmt(r.normalized_residual, 4) << "  "
                  << fmt(r.spectrum_gap, 4) << "  " << r.kernel_skew << "  " << r.kernel_sym << '\n';
        pass = pass && std::max({r.d_residual, r.delta_residual, r.laplacian_residual, r.normalized_residual}) <= a.tol &&
               r.spectrum_gap <= a.spectrum_tol;
        rows.push_back(to_json(r));
    }
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
    write_report(c.json_out, Json{{"metadata", meta.to_json()},
                                  {"parity", {{"checked", parity.checked},
                                              {"plain_failed", parity.failed},
                                              {"rank_failed", parity.rank_relation_failed}}},
                                  {"degrees", rows},
                                  {"status", pass ? "PASS" : "FAIL"}});
    return pass ? ok : failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted Hodge Laplacians on clique complexes: blocks, bounds, Bloch norms"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    Common common;
    SpectrumArgs sa;
    BoundsArgs ba;
    BlochArgs bl;
    ColorArgs ca;

    auto* build_cmd = app.add_subcommand("build", "level sizes and face degrees");
    add_input(build_cmd, common);

    auto* spec_cmd = app.add_subcommand("spectrum", "dense eigenvalues of one block");
    add_input(spec_cmd, common);
    spec_cmd->add_option("--degree,-k", sa.degree, "block degree k")->required();
    spec_cmd->add_option("--flavor", sa.flavor, "skew or sym")->capture_default_str();
    spec_cmd->add_flag("--normalized", sa.normalized, "degree-normalized block");
    spec_cmd->add_option("--dense-cap", sa.dense_cap, "largest block solved densely")->capture_default_str();

    auto* bounds_cmd = app.add_subcommand("bounds", "norm estimate and certificates");
    add_input(bounds_cmd, common, false);
    bounds_cmd->add_option("--degree,-k", ba.degree, "one degree");
    bounds_cmd->add_flag("--all", ba.all, "every degree (default)");
    bounds_cmd->add_option("--flavor", ba.flavor, "skew or sym")->capture_default_str();
    bounds_cmd->add_flag("--normalized", ba.normalized, "certify the normalized block");
    bounds_cmd->add_option("--tol", ba.tol, "relative tolerance of the norm estimate")->capture_default_str();
    bounds_cmd->add_option("--seed", common.seed, "power iteration seed")->capture_default_str();
    bounds_cmd->add_option("--comparability", ba.comparability, "c0 C0 c1 C1")->expected(4);
    bounds_cmd->add_option("--regular-degree", ba.regular_degrees, "d for the weighted regular bound");

    auto* bloch_cmd = app.add_subcommand("bloch", "Brillouin-zone sup-norm of the edge symbol");
    bloch_cmd->add_option("--lattice", bl.lattices, "catalog lattice (repeatable)");
    bloch_cmd->add_option("--cell", bl.cells, "periodic cell document (repeatable)");
    bloch_cmd->add_flag("--all", bl.all, "full comparison table");
    bloch_cmd->add_option("--grid", bl.grid, "points per axis (0: 64 for d<=2, 32 otherwise)")->capture_default_str();
    bloch_cmd->add_option("--tol", bl.tol, "refinement tolerance")->capture_default_str();
    bloch_cmd->add_option("--flavor", bl.flavor, "skew or sym")->capture_default_str();
    bloch_cmd->add_flag("--triangles", bl.triangles, "add the triangle up-part");
    bloch_cmd->add_option("--threads", bl.threads, "workers (0: HODGE_THREADS or all cores)")->capture_default_str();
    bloch_cmd->add_option("--json", bl.json_out, "write a JSON report here");

    auto* color_cmd = app.add_subcommand("color-check", "intertwining residuals of the color unitary");
    add_input(color_cmd, common);
    color_cmd->add_option("--colors", ca.colors, "coloring document");
    color_cmd->add_option("--greedy", ca.greedy, "greedy coloring with p colors");
    color_cmd->add_option("--tol", ca.tol, "identity tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    try {
        if (*build_cmd) return cmd_build(common);
        if (*spec_cmd) return cmd_spectrum(common, sa);
        if (*bounds_cmd) {
            if (common.input.empty() && ba.comparability.empty())
                throw InputError("give an input document or --comparability");
            return cmd_bounds(common, ba);
        }
        if (*bloch_cmd) return cmd_bloch(bl);
        if (*color_cmd) return cmd_color_check(common, ca);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return no_convergence;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}
