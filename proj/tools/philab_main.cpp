// philab: command-line surface for certified bounds, witness construction,
// region maps, and counterexample search on (x, y)-constrained tripartite
// graphs.
//
// Exit codes: 0 success / valid certificate, 1 invalid certificate,
// 2 parse or I/O error, 3 construction inapplicable at the requested point,
// 4 internal consistency violation.

#include "CLI11.hpp"

#include "philab/bounds.hpp"
#include "philab/check.hpp"
#include "philab/constructions.hpp"
#include "philab/errors.hpp"
#include "philab/mapper.hpp"
#include "philab/reduction.hpp"
#include "philab/regular.hpp"
#include "philab/search.hpp"
#include "philab/witness.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace philab;

Rational arg_rational(const std::string& text, const std::string& flag) {
    const auto r = Rational::parse(text);
    if (!r)
        throw std::runtime_error(flag + ": expected an exact rational p/q, got '" + text +
                                 "' (decimal input is rejected)");
    return *r;
}

Mode arg_mode(const std::string& name) {
    if (name == "phi") return Mode::Phi;
    if (name == "psi") return Mode::Psi;
    if (name == "xi") return Mode::Xi;
    throw std::runtime_error("--mode: expected phi, psi, or xi, got '" + name + "'");
}

/// A bare fixture name resolves against $PHILAB_DATA, then ./data.
std::string resolve_input(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* env = std::getenv("PHILAB_DATA")) {
        const fs::path p = fs::path(env) / path;
        if (fs::exists(p)) return p.string();
    }
    const fs::path p = fs::path("data") / path;
    if (fs::exists(p)) return p.string();
    return path;
}

void print_certificate_summary(const WitnessCertificate& cert) {
    std::cout << "mode: " << mode_name(cert.mode) << "\n";
    std::cout << "point: (" << cert.x.str() << ", " << cert.y.str() << ")\n";
    std::cout << "claim: value " << (cert.strict ? "< " : "<= ") << cert.claimed_bound.str()
              << "\n";
    std::cout << "graph: " << cert.graph.part_members(Part::A).size() << "+"
              << cert.graph.part_members(Part::B).size() << "+"
              << cert.graph.part_members(Part::C).size() << " vertices, "
              << cert.graph.edges().size() << " edges\n";
    if (!cert.provenance.empty()) std::cout << "provenance: " << cert.provenance << "\n";
}

int run_check(const std::string& path) {
    const WitnessCertificate cert = parse_phiwit_file(resolve_input(path));
    print_certificate_summary(cert);
    const ConstraintReport report = verify_certificate(cert);
    if (report.witness_value)
        std::cout << "witness value: " << report.witness_value->str() << "\n";
    const std::string summary = report.summary();
    std::cout << summary;
    if (!summary.empty() && summary.back() != '\n') std::cout << "\n";
    std::cout << "result: " << (report.satisfied ? "VALID" : "INVALID") << "\n";
    return report.satisfied ? 0 : 1;
}

struct ConstructArgs {
    std::string name;
    long long k = 0;
    bool has_k = false;
    std::string x_text, y_text, z_text;
    bool exactify = false;
    bool reversed = false;
    std::string variant = "first";
    std::string base = "third";
    std::string bullet = "one";
    std::string inner_path;
    std::string out;
};

int finish_construction(const ConstructionResult& res, const std::string& out_path) {
    for (const auto& [name, value] : res.params.values) {
        std::cout << "param " << name << " = " << value.str();
        const auto it = res.params.intervals.find(name);
        if (it != res.params.intervals.end())
            std::cout << " chosen from [" << it->second.first.str() << ", "
                      << it->second.second.str() << "]";
        std::cout << "\n";
    }
    for (const std::string& d : res.formula_discrepancies)
        std::cout << "formula discrepancy: " << d << "\n";
    if (!res.trusted()) {
        std::cout << res.validation.summary();
        std::cout << "construction did not yield a validated certificate at this point\n";
        return 3;
    }
    print_certificate_summary(res.certificate);
    write_phiwit_file(res.certificate, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_construct(const ConstructArgs& a, long long effort) {
    (void)effort;
    const std::string out = a.out.empty() ? a.name + ".phiwit" : a.out;
    auto need_xy = [&]() -> std::pair<Rational, Rational> {
        if (a.x_text.empty() || a.y_text.empty())
            throw std::runtime_error("construct " + a.name + ": --x and --y are required");
        return {arg_rational(a.x_text, "--x"), arg_rational(a.y_text, "--y")};
    };
    auto need_k = [&]() -> long long {
        if (!a.has_k) throw std::runtime_error("construct " + a.name + ": --k is required");
        return a.k;
    };

    if (a.name == "cyclic") {
        const auto [x, y] = need_xy();
        return finish_construction(cyclic_shift(need_k(), x, y), out);
    }
    if (a.name == "figure1") return finish_construction(figure1_graph(a.exactify), out);
    if (a.name == "figure2") return finish_construction(figure2_graph(), out);
    if (a.name == "figure5") {
        const TriangularConstructionResult res = figure5_triangular_witness();
        for (const std::string& n : res.notes) std::cout << "note: " << n << "\n";
        if (!res.validation.satisfied) {
            std::cout << res.validation.summary();
            return 3;
        }
        print_certificate_summary(res.derived_certificate);
        write_phiwit_file(res.derived_certificate, out);
        std::cout << "wrote " << out << "\n";
        return 0;
    }
    if (a.name == "pathext") {
        if (a.inner_path.empty())
            throw std::runtime_error("construct pathext: --in <certificate> is required");
        if (a.z_text.empty())
            throw std::runtime_error("construct pathext: --z (claimed bound) is required");
        const auto [x, y] = need_xy();
        const WitnessCertificate inner = parse_phiwit_file(resolve_input(a.inner_path));
        return finish_construction(
            add_path_extension(inner, x, y, arg_rational(a.z_text, "--z")), out);
    }
    if (a.name == "phi12curve") {
        const auto [x, y] = need_xy();
        return finish_construction(phi12curve_witness(need_k(), x, y), out);
    }
    if (a.name == "psi12curve") {
        const auto [x, y] = need_xy();
        return finish_construction(psi12curve_witness(need_k(), x, y), out);
    }
    if (a.name == "psi12extracurve") {
        const auto [x, y] = need_xy();
        return finish_construction(
            psi12extracurve_witness(x, y,
                                    a.reversed ? ExtraVariant::Reversed : ExtraVariant::Forward),
            out);
    }
    if (a.name == "phi12bettercurve") {
        const auto [x, y] = need_xy();
        return finish_construction(phi12bettercurve_witness(x, y), out);
    }
    if (a.name == "phi13bettercurve") {
        const auto [x, y] = need_xy();
        return finish_construction(phi13bettercurve_witness(x, y), out);
    }
    if (a.name == "psi23extra") {
        const auto [x, y] = need_xy();
        Psi23Variant v;
        if (a.variant == "first") v = Psi23Variant::First;
        else if (a.variant == "second") v = Psi23Variant::Second;
        else throw std::runtime_error("construct psi23extra: --variant must be first or second");
        return finish_construction(psi23extra_witness(x, y, v), out);
    }
    if (a.name == "phi23curve") {
        const auto [x, y] = need_xy();
        return finish_construction(phi23curve_witness(x, y), out);
    }
    if (a.name == "phi23extracurve") {
        const auto [x, y] = need_xy();
        Phi23Base b;
        if (a.base == "third" || a.base == "1/3") b = Phi23Base::Third;
        else if (a.base == "2/5") b = Phi23Base::TwoFifths;
        else throw std::runtime_error("construct phi23extracurve: --base must be third or 2/5");
        return finish_construction(phi23extracurve_witness(x, y, b), out);
    }
    if (a.name == "phi23reversecurve") {
        const auto [x, y] = need_xy();
        ReverseBullet b;
        if (a.bullet == "one") b = ReverseBullet::One;
        else if (a.bullet == "two") b = ReverseBullet::Two;
        else throw std::runtime_error("construct phi23reversecurve: --bullet must be one or two");
        return finish_construction(phi23reversecurve_witness(x, y, b), out);
    }
    throw std::runtime_error(
        "construct: unknown generator '" + a.name +
        "'. Known: cyclic figure1 figure2 figure5 pathext phi12curve psi12curve "
        "psi12extracurve phi12bettercurve phi13bettercurve psi23extra phi23curve "
        "phi23extracurve phi23reversecurve");
}

void print_bound(const CertifiedBound& b) {
    std::cout << "  " << (b.direction == Direction::Lower ? "lower " : "upper ") << b.value.str()
              << (b.strict ? " (strict)" : " (nonstrict)") << " — " << b.provenance << "\n";
}

int run_bound(Mode mode, const Rational& x, const Rational& y, long long effort) {
    const BoundInterval iv = best_interval(mode, x, y, effort);
    std::cout << mode_name(mode) << "(" << x.str() << ", " << y.str() << ") in ["
              << iv.best_lower.value.str() << ", " << iv.best_upper.value.str() << "]\n";
    std::cout << "best bounds:\n";
    print_bound(iv.best_lower);
    print_bound(iv.best_upper);
    std::cout << "all certified bounds:\n";
    for (const CertifiedBound& b : lower_bounds(mode, x, y, effort)) print_bound(b);
    for (const CertifiedBound& b : upper_bounds(mode, x, y, effort)) print_bound(b);
    return 0;
}

int run_map(Mode mode, const Rational& z, int grid, const std::string& csv,
            const std::string& svg, const std::string& diagonal_svg, long long effort, int jobs,
            const std::string& command_line) {
    const RegionMap map = build_map(mode, z, grid, effort, jobs);
    std::size_t good = 0, bad = 0, unknown = 0;
    for (const Classification& c : map.cells) {
        if (c.status == RegionStatus::ProvenGood) ++good;
        else if (c.status == RegionStatus::ProvenBad) ++bad;
        else ++unknown;
    }
    std::cout << mode_name(mode) << " map at z = " << z.str() << ", resolution " << grid << ": "
              << good << " good, " << bad << " bad, " << unknown << " unknown\n";
    if (!csv.empty()) {
        emit_csv(map, csv);
        std::cout << "wrote " << csv << "\n";
    }
    if (!svg.empty()) {
        emit_svg(map, svg, command_line);
        std::cout << "wrote " << svg << "\n";
    }
    if (!diagonal_svg.empty()) {
        emit_diagonal_svg(diagonal_plot(mode, grid, effort), diagonal_svg, command_line);
        std::cout << "wrote " << diagonal_svg << "\n";
    }
    return 0;
}

int run_search_bad(Mode mode, const Rational& z, int a, int m, long long budget,
                   const std::string& out_dir) {
    const BadPairResult result = search_bad_pairs(mode, z, a, m, budget);
    write_bad_pair_files(result, out_dir);
    std::cout << "found " << result.pairs.size() << " maximal bad pair(s) for "
              << mode_name(mode) << " below z = " << z.str() << "\n";
    for (std::size_t i = 0; i < result.pairs.size(); ++i) {
        const BadPair& p = result.pairs[i];
        std::cout << "  (" << p.x.str() << ", " << p.y.str() << ") value "
                  << p.certificate.claimed_bound.str() << " -> badpair_" << (i + 1)
                  << ".phiwit\n";
    }
    std::cout << "wrote " << out_dir << "/index.csv\n";
    return 0;
}

int run_regular_order(const Rational& x, int max_n) {
    const RegularSearchResult res = min_regular_order(x, max_n);
    if (!res.order_found) {
        std::cout << "no " << x.str() << "-regular bipartite weighted graph of order <= "
                  << res.exhausted_up_to << " (exhaustive)\n";
        return 0;
    }
    std::cout << "minimum order of " << x.str() << "-regular bipartite weighted graph: "
              << *res.order_found << "\n";
    const BipartiteWeightedGraph& g = *res.graph;
    for (std::size_t i = 0; i < g.ids_a.size(); ++i) {
        std::cout << "  " << g.ids_a[i] << " (w " << g.w_a[i].str() << ") ~";
        for (std::size_t j = 0; j < g.ids_b.size(); ++j)
            if (g.adj[i][j]) std::cout << " " << g.ids_b[j];
        std::cout << "\n";
    }
    for (std::size_t j = 0; j < g.ids_b.size(); ++j)
        std::cout << "  " << g.ids_b[j] << " (w " << g.w_b[j].str() << ")\n";
    if (!hadamard_bound_check(*res.order_found, x))
        throw ConsistencyError("regular-order: denominator bound violated by found graph");
    std::cout << "denominator bound check: passed\n";
    for (const auto& [fact, value] : regular_implies_peace(x, res))
        std::cout << "consequence: " << fact << " (value " << value.str() << ")\n";
    return 0;
}

int run_symmetrize(const std::string& in, const std::string& out) {
    const WitnessCertificate cert = parse_phiwit_file(resolve_input(in));
    const WitnessCertificate sym = symmetrize_witness(cert);
    const ConstraintReport report = verify_certificate(sym);
    if (!report.satisfied)
        throw ConsistencyError("symmetrize: transformed certificate failed re-validation:\n" +
                               report.summary());
    print_certificate_summary(sym);
    write_phiwit_file(sym, out);
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::string command_line;
    for (int i = 0; i < argc; ++i) {
        if (i) command_line += " ";
        command_line += argv[i];
    }

    CLI::App app{"certified bounds, witness certificates, region maps, and searches for the "
                 "tripartite reachability functions phi, psi, xi"};
    app.fallthrough();
    app.require_subcommand(1);

    long long effort = 64;
    long long seed = 0;
    int jobs = 1;
    app.add_option("--effort", effort, "effort cap for bound searches")->capture_default_str();
    app.add_option("--seed", seed, "seed recorded for randomized commands")
        ->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for grid commands")->capture_default_str();

    // check
    auto* c_check = app.add_subcommand("check", "validate a phiwit certificate file");
    std::string check_path;
    c_check->add_option("file", check_path, "certificate file")->required();

    // construct
    auto* c_con = app.add_subcommand("construct", "build a certificate from a named generator");
    ConstructArgs con;
    c_con->add_option("name", con.name, "generator name")->required();
    auto* k_opt = c_con->add_option("--k", con.k, "family index k");
    c_con->add_option("--x", con.x_text, "x as p/q");
    c_con->add_option("--y", con.y_text, "y as p/q");
    c_con->add_option("--z", con.z_text, "claimed bound as p/q (pathext)");
    c_con->add_flag("--exactify", con.exactify, "emit the exactified variant (figure1)");
    c_con->add_flag("--reversed", con.reversed, "reversed reading (psi12extracurve)");
    c_con->add_option("--variant", con.variant, "psi23extra variant: first|second")
        ->capture_default_str();
    c_con->add_option("--base", con.base, "phi23extracurve base point: third|2/5")
        ->capture_default_str();
    c_con->add_option("--bullet", con.bullet, "phi23reversecurve bullet: one|two")
        ->capture_default_str();
    c_con->add_option("--in", con.inner_path, "inner certificate (pathext)");
    c_con->add_option("--out", con.out, "output path (default <name>.phiwit)");

    // bound
    auto* c_bound = app.add_subcommand("bound", "best certified interval at a point");
    std::string b_mode = "phi", b_x, b_y;
    c_bound->add_option("--mode", b_mode, "phi|psi|xi")->capture_default_str();
    c_bound->add_option("--x", b_x, "x as p/q")->required();
    c_bound->add_option("--y", b_y, "y as p/q")->required();

    // map
    auto* c_map = app.add_subcommand("map", "classify a grid against a threshold z");
    std::string m_mode = "psi", m_z, m_csv, m_svg, m_diag;
    int m_grid = 100;
    c_map->add_option("--mode", m_mode, "phi|psi|xi")->capture_default_str();
    c_map->add_option("--z", m_z, "threshold z as p/q")->required();
    c_map->add_option("--grid", m_grid, "grid resolution d (points i/d, j/d)")
        ->capture_default_str();
    c_map->add_option("--csv", m_csv, "write cell classifications as CSV");
    c_map->add_option("--svg", m_svg, "render the map as SVG");
    c_map->add_option("--diagonal-svg", m_diag, "render the diagonal staircase plot as SVG");

    // search-bad
    auto* c_search = app.add_subcommand("search-bad", "search for maximal bad pairs below z");
    std::string s_mode = "psi", s_z, s_out = "badpairs";
    int s_a = 7, s_m = 7;
    long long s_budget = 100000;
    c_search->add_option("--mode", s_mode, "phi|psi")->capture_default_str();
    c_search->add_option("--z", s_z, "threshold z as p/q")->required();
    c_search->add_option("--a", s_a, "max size of part A")->capture_default_str();
    c_search->add_option("--m", s_m, "max size of part B")->capture_default_str();
    c_search->add_option("--budget", s_budget, "topology budget")->capture_default_str();
    c_search->add_option("--out", s_out, "output directory")->capture_default_str();

    // regular-order
    auto* c_reg = app.add_subcommand("regular-order",
                                     "minimum order of an x-regular bipartite weighted graph");
    std::string r_x;
    int r_max_n = 5;
    c_reg->add_option("--x", r_x, "x as p/q")->required();
    c_reg->add_option("--max-n", r_max_n, "largest order to try")->capture_default_str();

    // symmetrize
    auto* c_sym = app.add_subcommand("symmetrize", "swap the roles of x and y in a certificate");
    std::string sym_in, sym_out;
    c_sym->add_option("input", sym_in, "input certificate")->required();
    c_sym->add_option("output", sym_out, "output certificate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_check) return run_check(check_path);
        if (*c_con) {
            con.has_k = k_opt->count() > 0;
            return run_construct(con, effort);
        }
        if (*c_bound)
            return run_bound(arg_mode(b_mode), arg_rational(b_x, "--x"),
                             arg_rational(b_y, "--y"), effort);
        if (*c_map)
            return run_map(arg_mode(m_mode), arg_rational(m_z, "--z"), m_grid, m_csv, m_svg,
                           m_diag, effort, jobs, command_line);
        if (*c_search) {
            const Mode mode = arg_mode(s_mode);
            if (mode == Mode::Xi) throw std::runtime_error("search-bad: --mode must be phi or psi");
            return run_search_bad(mode, arg_rational(s_z, "--z"), s_a, s_m, s_budget, s_out);
        }
        if (*c_reg) return run_regular_order(arg_rational(r_x, "--x"), r_max_n);
        if (*c_sym) return run_symmetrize(sym_in, sym_out);
        std::cerr << "no command given\n";
        return 2;
    } catch (const InapplicableError& e) {
        std::cerr << "inapplicable: " << e.what() << "\n";
        return 3;
    } catch (const PhiwitParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency violation: " << e.what() << "\n";
        return 4;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
