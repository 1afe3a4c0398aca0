// Acceptance suite: one criterion per numbered block, one PASS/FAIL line
// each, data directory passed as argv[1]. Exit status is the number of
// failed criteria.

#include "philab/bounds.hpp"
#include "philab/check.hpp"
#include "philab/constructions.hpp"
#include "philab/lp.hpp"
#include "philab/mapper.hpp"
#include "philab/rational.hpp"
#include "philab/reduction.hpp"
#include "philab/regular.hpp"
#include "philab/search.hpp"
#include "philab/triangular.hpp"
#include "philab/witness.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace philab;
namespace fs = std::filesystem;

namespace {

std::string g_data_dir;
int g_failures = 0;

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CriterionFailure(what);
}

std::string data_file(const std::string& name) {
    return (fs::path(g_data_dir) / name).string();
}

void run_criterion(int index, const std::string& label,
                   const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
        body();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char line[512];
    std::snprintf(line, sizeof(line), "criterion %2d %-4s %s (%.2f s)", index,
                  failure.empty() ? "PASS" : "FAIL", label.c_str(), secs);
    std::cout << line << "\n";
    if (!failure.empty()) {
        std::cout << "             reason: " << failure << "\n";
        ++g_failures;
    }
    std::cout.flush();
}

/// Runs the bundled CLI (a sibling of this binary) and captures stdout+stderr.
struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    fs::path self;
    try {
        self = fs::read_symlink("/proc/self/exe");
    } catch (const fs::filesystem_error&) {
        throw CriterionFailure("cannot locate this executable to find the CLI next to it");
    }
    const fs::path cli = self.parent_path() / "philab";
    if (!fs::exists(cli)) throw CriterionFailure("CLI binary not found at " + cli.string());
    const fs::path capture =
        fs::temp_directory_path() / ("philab_acceptance_" + std::to_string(::getpid()) + ".out");
    const std::string cmd =
        "\"" + cli.string() + "\" " + args + " > \"" + capture.string() + "\" 2>&1";
    const int raw = std::system(cmd.c_str());
    CliRun result;
    result.exit_code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(capture);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    fs::remove(capture);
    return result;
}

void check_figure_via_cli(const std::string& file, Mode mode, const Rational& x,
                          const Rational& y, const Rational& value) {
    const CliRun run = run_cli("check \"" + data_file(file) + "\"");
    require(run.exit_code == 0, file + ": CLI check exited with code " +
                                    std::to_string(run.exit_code) + "\n" + run.output);
    require(run.output.find("witness value: " + value.str() + "\n") != std::string::npos,
            file + ": CLI did not report witness value exactly " + value.str());
    require(run.output.find("result: VALID") != std::string::npos,
            file + ": CLI did not report VALID");
    const WitnessCertificate cert = parse_phiwit_file(data_file(file));
    require(cert.mode == mode, file + ": unexpected mode");
    require(cert.x == x && cert.y == y, file + ": unexpected (x, y)");
    require(witness_value(cert.graph) == value,
            file + ": parsed witness value is not exactly " + value.str());
}

void verify_dichotomy(const BipartiteInstance& inst, const Dichotomy& d) {
    const Rational threshold = inst.min_neighborhood();
    require(d.threshold == threshold, "dichotomy threshold differs from w(A->B)");
    if (d.branch == Dichotomy::Branch::Rebalanced) {
        require(d.rebalanced.has_value(), "rebalanced branch without weights");
        const auto& w = *d.rebalanced;
        require(w.size() == inst.side_B.size(), "rebalanced weight count");
        Rational total(0);
        bool has_zero = false;
        for (const Rational& v : w) {
            require(!v.is_negative(), "negative rebalanced weight");
            if (v == Rational(0)) has_zero = true;
            total += v;
        }
        require(total == Rational(1), "rebalanced weights do not sum to 1");
        require(has_zero, "rebalanced weights have no zero");
        for (std::size_t i = 0; i < inst.side_A.size(); ++i) {
            Rational nb(0);
            for (std::size_t j = 0; j < inst.side_B.size(); ++j)
                if (inst.adjacency[i][j]) nb += w[j];
            require(nb >= threshold, "rebalanced neighborhood below threshold");
        }
    } else {
        require(d.dual.has_value(), "dual branch without certificate");
        const auto& f = *d.dual;
        require(f.size() == inst.side_A.size(), "dual weight count");
        Rational total(0);
        for (const Rational& v : f) {
            require(!v.is_negative(), "negative dual weight");
            total += v;
        }
        if (!inst.side_A.empty())
            require(total == Rational(1), "dual weights do not sum to 1");
        for (std::size_t j = 0; j < inst.side_B.size(); ++j) {
            Rational col(0);
            for (std::size_t i = 0; i < inst.side_A.size(); ++i)
                if (inst.adjacency[i][j]) col += f[i];
            require(col >= threshold, "dual column sum below threshold");
        }
    }
}

TripartiteWeightedGraph random_weighted_graph(std::mt19937& rng) {
    std::uniform_int_distribution<int> size_dist(1, 3);
    std::uniform_int_distribution<int> num_dist(1, 6);
    std::uniform_int_distribution<int> coin(0, 1);
    TripartiteWeightedGraph g;
    const int na = size_dist(rng), nb = size_dist(rng), nc = size_dist(rng);
    auto add_part = [&](Part p, const char* prefix, int n) {
        std::vector<int> nums(n);
        int total = 0;
        for (int& v : nums) total += (v = num_dist(rng));
        for (int i = 0; i < n; ++i)
            g.add_vertex(p, prefix + std::to_string(i + 1), Rational(nums[i], total));
    };
    add_part(Part::A, "a", na);
    add_part(Part::B, "b", nb);
    add_part(Part::C, "c", nc);
    // Random bipartite layers; ensure each B-vertex touches both sides so
    // the graph is not degenerate.
    for (int i = 1; i <= na; ++i)
        for (int j = 1; j <= nb; ++j)
            if (coin(rng)) g.add_edge("a" + std::to_string(i), "b" + std::to_string(j));
    for (int j = 1; j <= nb; ++j)
        for (int k = 1; k <= nc; ++k)
            if (coin(rng)) g.add_edge("b" + std::to_string(j), "c" + std::to_string(k));
    for (int j = 1; j <= nb; ++j) {
        const std::string b = "b" + std::to_string(j);
        if (!g.has_edge("a1", b) && coin(rng)) g.add_edge("a1", b);
        if (!g.has_edge(b, "c1") && coin(rng)) g.add_edge(b, "c1");
    }
    g.finalize();
    return g;
}

// --- criteria ---------------------------------------------------------------

void criterion_figure_values() {
    check_figure_via_cli("figure1.phiwit", Mode::Psi, Rational(13, 27), Rational(1, 9),
                         Rational(13, 27));
    check_figure_via_cli("figure2.phiwit", Mode::Phi, Rational(3, 10), Rational(4, 11),
                         Rational(4, 9));
}

void criterion_exactify() {
    const fs::path out = fs::temp_directory_path() / "philab_acceptance_exact.phiwit";
    const CliRun run = run_cli("construct figure1 --exactify --out \"" + out.string() + "\"");
    require(run.exit_code == 0,
            "CLI construct exited with code " + std::to_string(run.exit_code) + "\n" + run.output);
    const WitnessCertificate cert = parse_phiwit_file(out.string());
    fs::remove(out);
    require(cert.mode == Mode::Xi, "exactified certificate is not in xi mode");
    const ConstraintReport rep = verify_certificate(cert);
    require(rep.satisfied, "xi-check failed: " + rep.summary());
    require(rep.exact_params.has_value(), "xi-check did not pin down (x', y')");
    require(rep.exact_params->first == Rational(13, 27), "x' is not 13/27");
    require(rep.exact_params->second == Rational(1, 9), "y' is not 1/9");
}

void criterion_cyclic_law() {
    for (long long k = 1; k <= 24; ++k) {
        for (int i = 1; i <= 12; ++i) {
            for (int j = 1; j <= 12; ++j) {
                const Rational x(i, 12), y(j, 12);
                const ConstructionResult res = cyclic_shift(k, x, y);
                const std::string at = "k=" + std::to_string(k) + " x=" + x.str() +
                                       " y=" + y.str();
                require(res.trusted(), "cyclic witness invalid at " + at);
                const Rational formula =
                    (Rational((x * Rational(k)).ceil()) + Rational((y * Rational(k)).ceil()) -
                     Rational(1)) /
                    Rational(k);
                require(res.certificate.claimed_bound == formula,
                        "cyclic claim differs from the law at " + at);
                require(res.validation.witness_value.has_value(),
                        "no witness value at " + at);
                // The realized value matches the law wherever the law's
                // value is attainable by a probability measure (it
                // saturates at 1 beyond that).
                require(*res.validation.witness_value == min(formula, Rational(1)),
                        "cyclic witness value differs from the law at " + at);
            }
        }
    }
}

void criterion_symmetrize() {
    const ConstructionResult fig2 = figure2_graph();
    require(fig2.trusted(), "figure2 construction failed validation");
    const WitnessCertificate sym = symmetrize_witness(fig2.certificate);
    require(sym.mode == Mode::Phi, "symmetrized certificate is not phi");
    require(sym.x == Rational(4, 11) && sym.y == Rational(3, 10),
            "symmetrized point is not (4/11, 3/10)");
    require(sym.claimed_bound == Rational(4, 9), "symmetrized claim is not 4/9");
    const ConstraintReport rep = verify_certificate(sym);
    require(rep.satisfied, "re-validation failed: " + rep.summary());
}

void criterion_lpbip() {
    std::mt19937 rng(500500);
    std::uniform_int_distribution<int> size_dist(1, 8);
    std::uniform_int_distribution<int> num_dist(1, 12);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 500; ++trial) {
        BipartiteInstance inst;
        const int na = size_dist(rng), nb = size_dist(rng);
        for (int i = 0; i < na; ++i) inst.side_A.push_back("u" + std::to_string(i));
        for (int j = 0; j < nb; ++j) inst.side_B.push_back("v" + std::to_string(j));
        int total = 0;
        std::vector<int> nums(nb);
        for (int& v : nums) total += (v = num_dist(rng));
        for (int j = 0; j < nb; ++j) inst.w.push_back(Rational(nums[j], total));
        inst.adjacency.assign(na, std::vector<bool>(nb, false));
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) inst.adjacency[i][j] = coin(rng) == 1;
        const Dichotomy d = lpbip_dichotomy(inst);
        try {
            verify_dichotomy(inst, d);
        } catch (const CriterionFailure& e) {
            throw CriterionFailure("trial " + std::to_string(trial) + ": " + e.what());
        }
    }
}

void criterion_staircase() {
    for (int i = 1; i <= 59; ++i) {
        const Rational x(i, 60);
        const long long k = 60 / i; // largest integer with 1/k >= i/60
        const BoundInterval iv = best_interval(Mode::Psi, x, x);
        const std::string at = "x=" + x.str();
        require(iv.best_lower.value == Rational(1, k),
                "psi lower bound at " + at + " is " + iv.best_lower.value.str() +
                    ", expected 1/" + std::to_string(k));
        require(iv.best_upper.value == Rational(1, k),
                "psi upper bound at " + at + " is " + iv.best_upper.value.str() +
                    ", expected 1/" + std::to_string(k));
    }
}

void criterion_region_maps() {
    const int jobs = std::max(1u, std::thread::hardware_concurrency());
    const std::vector<std::pair<Mode, Rational>> specs = {
        {Mode::Phi, Rational(1, 3)}, {Mode::Phi, Rational(1, 2)}, {Mode::Phi, Rational(2, 3)},
        {Mode::Psi, Rational(1, 3)}, {Mode::Psi, Rational(1, 2)}, {Mode::Psi, Rational(2, 3)}};
    for (const auto& [mode, z] : specs) {
        const RegionMap map = build_map(mode, z, 100, 64, jobs);
        const std::string tag = std::string(mode == Mode::Phi ? "phi" : "psi") + " z=" + z.str();
        require(static_cast<int>(map.cells.size()) == 100 * 100, tag + ": wrong cell count");
        for (const Classification& c : map.cells)
            require(c.lower.value <= c.upper.value,
                    tag + ": lower > upper at (" + c.x.str() + ", " + c.y.str() + ")");
        if (mode == Mode::Phi)
            for (int i = 1; i <= 100; ++i)
                for (int j = i + 1; j <= 100; ++j)
                    require(map.at(i, j).status == map.at(j, i).status,
                            tag + ": asymmetric at (" + std::to_string(i) + "/100, " +
                                std::to_string(j) + "/100)");
        if (mode == Mode::Psi && z == Rational(1, 2)) {
            require(map.at(30, 30).status == RegionStatus::ProvenBad,
                    tag + ": (0.30, 0.30) is not proven bad");
            require(map.at(35, 35).status == RegionStatus::ProvenGood,
                    tag + ": (0.35, 0.35) is not proven good");
        }
        if (mode == Mode::Phi && z == Rational(1, 3)) {
            // Grid neighbor below (2/13, 6/19) at resolution 100 is
            // (15/100, 31/100).
            require(map.at(15, 31).status == RegionStatus::ProvenBad,
                    tag + ": neighbor below (2/13, 6/19) is not proven bad");
        }
    }
}

void criterion_bad_pair_search() {
    const BadPairResult res = search_bad_pairs(Mode::Psi, Rational(1, 2), 7, 7);
    require(!res.pairs.empty(), "search returned no pairs");
    const BadPair* hit = nullptr;
    for (const BadPair& p : res.pairs)
        if (p.x == Rational(13, 27) && p.y == Rational(1, 9)) hit = &p;
    require(hit != nullptr, "no certificate emitted at exactly (13/27, 1/9)");
    require(hit->certificate.claimed_bound < Rational(1, 2),
            "certificate claim is not below 1/2");
    require(verify_certificate(hit->certificate).satisfied,
            "certificate at (13/27, 1/9) does not verify");
}

void criterion_regular_order() {
    const RegularSearchResult r25 = min_regular_order(Rational(2, 5), 5);
    require(r25.order_found.has_value() && *r25.order_found == 4,
            "min_regular_order(2/5, 5) did not return 4");
    require(r25.graph.has_value() && is_x_regular(*r25.graph, Rational(2, 5)),
            "returned graph is not 2/5-regular");
    require(r25.exhausted_up_to >= 3, "orders up to 3 were not exhaustively refuted");
    require(hadamard_bound_check(*r25.order_found, Rational(2, 5)),
            "hadamard bound fails for 2/5 at order 4");

    const RegularSearchResult r13 = min_regular_order(Rational(1, 3), 4);
    require(r13.order_found.has_value() && *r13.order_found == 3,
            "min_regular_order(1/3, 4) did not return 3");
    require(r13.graph.has_value() && is_x_regular(*r13.graph, Rational(1, 3)),
            "returned graph is not 1/3-regular");
    require(hadamard_bound_check(*r13.order_found, Rational(1, 3)),
            "hadamard bound fails for 1/3 at order 3");
}

void criterion_triangular() {
    const TriangularConstructionResult fig5 = figure5_triangular_witness();
    require(fig5.validation.satisfied, "figure5 triangular witness does not verify");
    require(check_triangular_witness(fig5.witness).satisfied,
            "figure5 re-verification failed");
    const WitnessCertificate& cert = fig5.derived_certificate;
    require(cert.mode == Mode::Phi && cert.x == Rational(4, 7) && cert.y == Rational(2, 7),
            "derived certificate is not phi at (4/7, 2/7)");
    require(cert.claimed_bound == Rational(5, 8), "derived claim is not exactly 5/8");
    require(verify_certificate(cert).satisfied, "derived certificate does not verify");

    for (const char* name :
         {"figure1.phiwit", "figure2.phiwit", "figure5.phiwit", "figure7.phiwit"}) {
        const WitnessCertificate fixture = parse_phiwit_file(data_file(name));
        const TriangularWitness tri = witness_to_triangular(fixture);
        require(check_triangular_witness(tri).satisfied,
                std::string(name) + ": triangular conversion does not verify");
        const WitnessCertificate back = triangular_to_witness(tri);
        require(back.graph.same_as(fixture.graph),
                std::string(name) + ": round trip altered the graph");
        require(back.mode == fixture.mode && back.x == fixture.x && back.y == fixture.y &&
                    back.claimed_bound == fixture.claimed_bound,
                std::string(name) + ": round trip altered the parameters");
    }
}

void criterion_blowup_equivalence() {
    std::mt19937 rng(111213);
    const std::vector<std::pair<Rational, Rational>> points = {
        {Rational(1, 3), Rational(1, 3)},
        {Rational(1, 2), Rational(1, 4)},
        {Rational(2, 3), Rational(1, 6)},
    };
    for (int trial = 0; trial < 50; ++trial) {
        const TripartiteWeightedGraph g = random_weighted_graph(rng);
        const BigInt order = minimal_blowup_order(g);
        const TripartiteWeightedGraph blown = blow_up(g, order);
        const std::string tag = "trial " + std::to_string(trial);
        require(witness_value(blown) == witness_value(g), tag + ": witness value changed");
        for (const Mode mode : {Mode::Phi, Mode::Psi, Mode::Xi}) {
            for (const auto& [x, y] : points) {
                const bool a = check_constraints(g, mode, x, y).satisfied;
                const bool b = check_constraints(blown, mode, x, y).satisfied;
                require(a == b, tag + ": constraint verdicts disagree at (" + x.str() + ", " +
                                    y.str() + ")");
            }
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: philab_acceptance <data-dir>\n";
        return 64;
    }
    g_data_dir = argv[1];
    if (!fs::is_directory(g_data_dir)) {
        std::cerr << "data directory not found: " << g_data_dir << "\n";
        return 64;
    }

    const auto t0 = std::chrono::steady_clock::now();
    run_criterion(1, "figure-exact values via CLI check", criterion_figure_values);
    run_criterion(2, "exactification passes the xi-check at (13/27, 1/9)", criterion_exactify);
    run_criterion(3, "cyclic law on the 1/12-grid for k <= 24", criterion_cyclic_law);
    run_criterion(4, "symmetry transform of figure2", criterion_symmetrize);
    run_criterion(5, "lpbip dichotomy on 500 random instances", criterion_lpbip);
    run_criterion(6, "diagonal staircase on sixtieths", criterion_staircase);
    run_criterion(7, "resolution-100 region maps", criterion_region_maps);
    run_criterion(8, "bad-pair search rediscovers (13/27, 1/9)", criterion_bad_pair_search);
    run_criterion(9, "regular-order search with refutations", criterion_regular_order);
    run_criterion(10, "triangular witness round trip", criterion_triangular);
    run_criterion(11, "blow-up oracle equivalence", criterion_blowup_equivalence);
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (g_failures == 0 ? "all criteria passed" :
                  std::to_string(g_failures) + " criterion(s) failed")
              << " (total " << static_cast<int>(total) << " s)\n";
    return g_failures;
}
