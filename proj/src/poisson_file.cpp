#include "poislin/poisson_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "poislin/error.hpp"

namespace poislin {

namespace {

std::string strip_comment(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    return line;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

Coords parse_coords_line(const std::string& line, std::size_t lineno) {
    std::string spaced;
    for (char ch : line) {
        if (ch == ';')
            spaced += " ; ";
        else
            spaced += ch;
    }
    std::istringstream in(spaced);
    std::string tag, tok;
    in >> tag;
    if (tag != "coords") throw ParseError(lineno, "expected 'coords <x-names> ; <y-names>'");
    std::vector<std::string> xs, ys;
    bool after = false;
    while (in >> tok) {
        if (tok == ";") {
            if (after) throw ParseError(lineno, "more than one ';' in coords line");
            after = true;
            continue;
        }
        (after ? ys : xs).push_back(tok);
    }
    if (xs.empty() && ys.empty()) throw ParseError(lineno, "coords line declares no coordinates");
    try {
        return make_coords(xs, ys);
    } catch (const Error& e) {
        throw ParseError(lineno, e.what());
    }
}

}  // namespace

PolyVector parse_poisson_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    Coords coords;
    std::optional<PolyVector> pi;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (blank(line)) continue;
        if (!coords) {
            coords = parse_coords_line(line, lineno);
            pi.emplace(coords, 2);
            continue;
        }
        auto colon = line.find(':');
        std::istringstream head(line.substr(0, colon));
        std::string tag, a, b, extra;
        if (!(head >> tag) || tag != "bracket" || !(head >> a >> b) || (head >> extra) || colon == std::string::npos)
            throw ParseError(lineno, "expected 'bracket <a> <b> : <polynomial>'");
        auto i = coords->find(a), j = coords->find(b);
        if (!i) throw ParseError(lineno, "unknown coordinate '" + a + "'");
        if (!j) throw ParseError(lineno, "unknown coordinate '" + b + "'");
        if (*i == *j) throw ParseError(lineno, "bracket of '" + a + "' with itself");
        if (!seen.insert({std::min(*i, *j), std::max(*i, *j)}).second)
            throw ParseError(lineno, "duplicate bracket for pair (" + a + ", " + b + ")");
        Polynomial value(coords);
        try {
            value = parse_polynomial(line.substr(colon + 1), coords);
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
        pi->add({*i, *j}, value);
    }
    if (!coords) throw ParseError(lineno, "missing coords line");
    return *pi;
}

std::string serialize_poisson_file(const PolyVector& Pi) {
    if (Pi.grade() != 2) throw DimensionError("structure files hold bivectors only");
    const Coords& c = Pi.coords();
    std::string out = "coords";
    for (std::size_t i = 0; i < c->size(); ++i) {
        if (i == c->x_count()) out += " ;";
        out += " " + c->name(i);
    }
    if (c->x_count() == c->size()) out += " ;";
    out += "\n";
    for (const auto& [blade, coef] : Pi.components()) {
        auto idx = blade_indices(blade);
        out += "bracket " + c->name(idx[0]) + " " + c->name(idx[1]) + " : " + coef.to_string() + "\n";
    }
    return out;
}

PolyVector read_poisson_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_poisson_file(buf.str());
}

}  // namespace poislin
