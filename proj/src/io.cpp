#include "dbc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dbc/errors.hpp"

namespace dbc {

namespace {

bool parse_real(const std::string& tok, double& out) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

std::vector<std::string> split(const std::string& line, InputFormat format) {
    std::vector<std::string> toks;
    if (format == InputFormat::csv) {
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                toks.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur.push_back(c);
            }
        }
        toks.push_back(cur);
        if (toks.size() == 1 && toks[0].empty()) toks.clear();
    } else {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) toks.push_back(tok);
    }
    return toks;
}

}  // namespace

PointSet read_points(std::istream& in, InputFormat format) {
    std::vector<double> coords;
    int dim = -1;
    std::string line;
    long lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> toks = split(line, format);
        if (toks.empty()) continue;
        std::vector<double> row(toks.size());
        bool ok = true;
        for (size_t k = 0; k < toks.size(); ++k)
            if (!parse_real(toks[k], row[k])) {
                ok = false;
                break;
            }
        if (!ok) {
            if (first_content) {  // header
                first_content = false;
                continue;
            }
            throw param_error("parse error at line " + std::to_string(lineno));
        }
        first_content = false;
        if (dim < 0) {
            dim = static_cast<int>(row.size());
            if (dim < 1) throw param_error("parse error at line " + std::to_string(lineno));
        } else if (static_cast<int>(row.size()) != dim) {
            throw param_error("parse error at line " + std::to_string(lineno) +
                              ": expected " + std::to_string(dim) + " values");
        }
        coords.insert(coords.end(), row.begin(), row.end());
    }
    if (dim < 0) return PointSet(2, {});
    return PointSet(dim, std::move(coords));
}

PointSet read_points_file(const std::string& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open input file: " + path);
    return read_points(in, format);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_labeling(std::ostream& os, const Labeling& lab) {
    for (int i = 0; i < lab.size(); ++i) {
        const char* kind = lab.label[i] == PointLabel::core     ? "core"
                           : lab.label[i] == PointLabel::border ? "border"
                                                                : "noise";
        os << i << ',' << kind << ',' << lab.cluster[i] << '\n';
    }
}

}  // namespace dbc
