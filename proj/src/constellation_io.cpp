#include "ustc/constellation_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace ustc {

void write_constellation(std::ostream& os, const Constellation& c) {
    os << "format " << (c.form == Form::Special ? "special" : "general") << "\n";
    os << "T " << c.T << "\n";
    os << "M " << c.M << "\n";
    os << "L " << c.size() << "\n";
    char buf[64];
    for (int l = 0; l < c.size(); ++l) {
        os << "matrix " << l << "\n";
        const CMatrix& m = c.elements[static_cast<std::size_t>(l)];
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) {
                const cplx z = m.at(i, j);
                std::snprintf(buf, sizeof buf, "%.17g %.17g", z.real(), z.imag());
                os << (j ? " " : "") << buf;
            }
            os << "\n";
        }
    }
}

void write_constellation_file(const std::string& path, const Constellation& c) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open file for writing: " + path);
    write_constellation(f, c);
    if (!f) throw ValidationError("write failed: " + path);
}

namespace {

std::string next_token(std::istream& is, const std::string& field) {
    std::string tok;
    if (!(is >> tok))
        throw ValidationError("constellation file: missing field '" + field + "'");
    return tok;
}

long parse_int(std::istream& is, const std::string& field, long lo, long hi) {
    const std::string tok = next_token(is, field);
    long v = 0;
    std::size_t pos = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (...) {
        throw ValidationError("constellation file: field '" + field + "' is not an integer");
    }
    if (pos != tok.size() || v < lo || v > hi)
        throw ValidationError("constellation file: field '" + field + "' out of range");
    return v;
}

double parse_real(std::istream& is, const std::string& field) {
    const std::string tok = next_token(is, field);
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ValidationError("constellation file: field '" + field + "' is not a number");
    }
}

void expect_keyword(std::istream& is, const std::string& kw) {
    const std::string tok = next_token(is, kw);
    if (tok != kw)
        throw ValidationError("constellation file: expected '" + kw + "', got '" + tok + "'");
}

} // namespace

Constellation read_constellation(std::istream& is) {
    expect_keyword(is, "format");
    const std::string fmt = next_token(is, "format");
    Form form;
    if (fmt == "special") form = Form::Special;
    else if (fmt == "general") form = Form::General;
    else throw ValidationError("constellation file: field 'format' must be special or general");

    expect_keyword(is, "T");
    const int T = static_cast<int>(parse_int(is, "T", 1, 64));
    expect_keyword(is, "M");
    const int M = static_cast<int>(parse_int(is, "M", 1, 32));
    expect_keyword(is, "L");
    const long L = parse_int(is, "L", 1, 2'000'000);

    if (T < M) throw ValidationError("constellation file: need T >= M");
    if (form == Form::Special && T != 2 * M)
        throw ValidationError("constellation file: special form requires T = 2M");

    const int rows = form == Form::Special ? M : T;
    const int cols = M;
    std::vector<CMatrix> elems;
    elems.reserve(static_cast<std::size_t>(L));
    for (long l = 0; l < L; ++l) {
        expect_keyword(is, "matrix");
        const long idx = parse_int(is, "matrix index", 0, L - 1);
        if (idx != l)
            throw ValidationError("constellation file: matrix index " + std::to_string(idx) +
                                  " out of order (expected " + std::to_string(l) + ")");
        CMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                const std::string field = "element " + std::to_string(l) + " entry (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")";
                const double re = parse_real(is, field);
                const double im = parse_real(is, field);
                m.at(i, j) = {re, im};
            }
        }
        elems.push_back(std::move(m));
    }
    try {
        return form == Form::Special ? Constellation::special(M, std::move(elems))
                                     : Constellation::general(T, M, std::move(elems));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("constellation file: ") + e.what());
    }
}

Constellation read_constellation_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open file: " + path);
    return read_constellation(f);
}

} // namespace ustc
