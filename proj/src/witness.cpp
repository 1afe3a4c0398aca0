#include "philab/witness.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace philab {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

Rational parse_rat(const std::string& s, int line) {
    auto r = Rational::parse(s);
    if (!r) throw PhiwitParseError(line, "malformed rational '" + s + "' (decimals not accepted)");
    return *r;
}

} // namespace

WitnessCertificate parse_phiwit(std::istream& in) {
    WitnessCertificate cert;
    bool saw_mode = false, saw_x = false, saw_y = false, saw_claim = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& key = toks[0];
        if (key == "mode") {
            if (toks.size() != 2) throw PhiwitParseError(line_no, "mode needs one value");
            if (toks[1] == "phi") cert.mode = Mode::Phi;
            else if (toks[1] == "psi") cert.mode = Mode::Psi;
            else if (toks[1] == "xi") cert.mode = Mode::Xi;
            else throw PhiwitParseError(line_no, "unknown mode '" + toks[1] + "'");
            saw_mode = true;
        } else if (key == "x" || key == "y") {
            if (toks.size() != 2) throw PhiwitParseError(line_no, key + " needs one value");
            (key == "x" ? cert.x : cert.y) = parse_rat(toks[1], line_no);
            (key == "x" ? saw_x : saw_y) = true;
        } else if (key == "claim") {
            if (toks.size() != 3)
                throw PhiwitParseError(line_no, "claim needs a value and strict|nonstrict");
            cert.claimed_bound = parse_rat(toks[1], line_no);
            if (toks[2] == "strict") cert.strict = true;
            else if (toks[2] == "nonstrict") cert.strict = false;
            else throw PhiwitParseError(line_no, "claim flag must be strict or nonstrict");
            saw_claim = true;
        } else if (key == "vertex") {
            if (toks.size() != 4)
                throw PhiwitParseError(line_no, "vertex needs part, id and weight");
            Part p;
            if (toks[1] == "A") p = Part::A;
            else if (toks[1] == "B") p = Part::B;
            else if (toks[1] == "C") p = Part::C;
            else throw PhiwitParseError(line_no, "vertex part must be A, B or C");
            try {
                cert.graph.add_vertex(p, toks[2], parse_rat(toks[3], line_no));
            } catch (const StructuralError& e) {
                throw PhiwitParseError(line_no, e.what());
            }
        } else if (key == "edge") {
            if (toks.size() != 3) throw PhiwitParseError(line_no, "edge needs two vertex ids");
            try {
                cert.graph.add_edge(toks[1], toks[2]);
            } catch (const StructuralError& e) {
                throw PhiwitParseError(line_no, e.what());
            }
        } else {
            throw PhiwitParseError(line_no, "unknown key '" + key + "'");
        }
    }
    if (!saw_mode) throw PhiwitParseError(line_no, "missing mode line");
    if (!saw_x || !saw_y) throw PhiwitParseError(line_no, "missing x or y line");
    if (!saw_claim) throw PhiwitParseError(line_no, "missing claim line");
    try {
        cert.graph.finalize();
    } catch (const StructuralError& e) {
        throw PhiwitParseError(line_no, e.what());
    }
    return cert;
}

WitnessCertificate parse_phiwit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_phiwit(in);
}

void serialize_phiwit(const WitnessCertificate& cert, std::ostream& out) {
    if (!cert.provenance.empty()) out << "# provenance: " << cert.provenance << "\n";
    out << "mode " << mode_name(cert.mode) << "\n";
    out << "x " << cert.x.str() << "\n";
    out << "y " << cert.y.str() << "\n";
    out << "claim " << cert.claimed_bound.str() << (cert.strict ? " strict" : " nonstrict")
        << "\n";
    for (int p = 0; p < 3; ++p)
        for (auto i : cert.graph.part_members(static_cast<Part>(p))) {
            const auto& v = cert.graph.vertex(i);
            out << "vertex " << part_name(v.part) << " " << v.id << " " << v.weight.str()
                << "\n";
        }
    for (auto& [u, v] : cert.graph.edges())
        out << "edge " << cert.graph.vertex(u).id << " " << cert.graph.vertex(v).id << "\n";
}

void write_phiwit_file(const WitnessCertificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    serialize_phiwit(cert, out);
}

} // namespace philab
