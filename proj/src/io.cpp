#include "hankelmc/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace hmc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

// Non-blank lines with 1-based numbering.
class LineReader {
  public:
    explicit LineReader(std::istream &in) : in_(in) {}

    bool next(std::string &text) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            const auto t = trim(raw);
            if (!t.empty()) {
                text.assign(t);
                return true;
            }
        }
        if (in_.bad())
            throw IoError("read failure");
        return false;
    }

    std::string require(const char *what) {
        std::string text;
        if (!next(text))
            throw ParseError(std::string("unexpected end of input, expected ") + what, line_ + 1);
        return text;
    }

    int line() const { return line_; }

  private:
    std::istream &in_;
    int line_ = 0;
};

double parse_real(std::string_view text, int line, const char *field) {
    const std::string s(text);
    if (s.empty())
        throw ParseError(std::string("empty ") + field, line);
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw ParseError(std::string("bad ") + field + " '" + s + "'", line);
    return v;
}

long long parse_int(std::string_view text, int line, const char *field) {
    const std::string s(text);
    char *end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError(std::string("bad ") + field + " '" + s + "'", line);
    return v;
}

std::uint64_t parse_seed(std::string_view text, int line) {
    const std::string s(text);
    char *end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError("bad seed '" + s + "'", line);
    return v;
}

Eigen::Index parse_extent(std::string_view text, int line, const char *field) {
    const long long v = parse_int(text, line, field);
    if (v < 1)
        throw ParseError(std::string(field) + " must be positive", line);
    return static_cast<Eigen::Index>(v);
}

// Fields after `tag`; the views point into `text`.
std::vector<std::string_view> header(const std::string &text, std::string_view tag,
                                     std::size_t fields, int line) {
    std::vector<std::string_view> toks;
    const std::string_view sv(text);
    std::size_t pos = 0;
    while (pos < sv.size()) {
        const auto start = sv.find_first_not_of(" \t", pos);
        if (start == std::string_view::npos)
            break;
        const auto stop = std::min(sv.find_first_of(" \t", start), sv.size());
        toks.push_back(sv.substr(start, stop - start));
        pos = stop;
    }
    if (toks.empty() || toks[0] != tag)
        throw ParseError("expected header '" + std::string(tag) + "'", line);
    if (toks.size() != fields + 1)
        throw ParseError("header '" + std::string(tag) + "' needs " + std::to_string(fields) +
                             " fields",
                         line);
    return {toks.begin() + 1, toks.end()};
}

void read_rows(LineReader &reader, CMatrix &x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const std::string text = reader.require("matrix row");
        const auto cells = split(text, ',');
        if (static_cast<Eigen::Index>(cells.size()) != x.cols())
            throw ParseError("row has " + std::to_string(cells.size()) + " entries, expected " +
                                 std::to_string(x.cols()),
                             reader.line());
        for (Eigen::Index k = 0; k < x.cols(); ++k)
            x(i, k) = parse_complex(cells[static_cast<std::size_t>(k)], reader.line());
    }
}

void write_rows(std::ostream &out, const CMatrix &x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            if (k)
                out << ',';
            out << format_complex(x(i, k));
        }
        out << '\n';
    }
}

void expect_end(LineReader &reader) {
    std::string extra;
    if (reader.next(extra))
        throw ParseError("trailing content", reader.line());
}

CMatrix read_matrix_body(LineReader &reader, const std::vector<std::string_view> &h) {
    const int line = reader.line();
    CMatrix x(parse_extent(h[0], line, "d"), parse_extent(h[1], line, "n"));
    read_rows(reader, x);
    expect_end(reader);
    return x;
}

Array3 read_array_body(LineReader &reader, const std::vector<std::string_view> &h) {
    const int line = reader.line();
    const auto n = parse_extent(h[0], line, "n");
    const auto s = parse_extent(h[1], line, "s");
    const auto d = parse_extent(h[2], line, "d");
    std::vector<CMatrix> slices;
    for (Eigen::Index i = 0; i < d; ++i) {
        const std::string text = reader.require("#slice header");
        const auto sh = header(text, "#slice", 1, reader.line());
        if (parse_int(sh[0], reader.line(), "slice index") != i + 1)
            throw ParseError("expected #slice " + std::to_string(i + 1), reader.line());
        CMatrix x(n, s);
        read_rows(reader, x);
        slices.push_back(std::move(x));
    }
    expect_end(reader);
    return Array3(std::move(slices));
}

template <class Fn> auto with_input(const std::filesystem::path &path, Fn fn) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return fn(in);
}

template <class Fn> void with_output(const std::filesystem::path &path, Fn fn) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    fn(out);
    out.flush();
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

} // namespace

std::string format_complex(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

cplx parse_complex(std::string_view text, int line) {
    const std::string s(trim(text));
    if (s.empty())
        throw ParseError("empty complex entry", line);
    const char *begin = s.c_str();
    const char *stop = begin + s.size();
    char *end = nullptr;
    const double a = std::strtod(begin, &end);
    if (end == begin)
        throw ParseError("bad complex entry '" + s + "'", line);
    cplx z;
    if (end == stop) {
        z = {a, 0.0};
    } else if (*end == 'i' && end + 1 == stop) {
        z = {0.0, a};
    } else {
        if (*end != '+' && *end != '-')
            throw ParseError("bad complex entry '" + s + "'", line);
        const char *imag = end;
        const double b = std::strtod(imag, &end);
        if (end == imag || *end != 'i' || end + 1 != stop)
            throw ParseError("bad complex entry '" + s + "'", line);
        z = {a, b};
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ParseError("non-finite complex entry '" + s + "'", line);
    return z;
}

void write_matrix(std::ostream &out, const CMatrix &x) {
    out << "#complex " << x.rows() << ' ' << x.cols() << '\n';
    write_rows(out, x);
}

CMatrix read_matrix(std::istream &in) {
    LineReader reader(in);
    const std::string text = reader.require("#complex header");
    return read_matrix_body(reader, header(text, "#complex", 2, reader.line()));
}

void write_array3(std::ostream &out, const Array3 &x) {
    out << "#complex3 " << x.n() << ' ' << x.s() << ' ' << x.d() << '\n';
    for (Eigen::Index i = 0; i < x.d(); ++i) {
        out << "#slice " << i + 1 << '\n';
        write_rows(out, x.slice(i));
    }
}

Array3 read_array3(std::istream &in) {
    LineReader reader(in);
    const std::string text = reader.require("#complex3 header");
    return read_array_body(reader, header(text, "#complex3", 3, reader.line()));
}

ComplexData read_complex_data(std::istream &in) {
    LineReader reader(in);
    const std::string text = reader.require("header");
    ComplexData out;
    if (text.rfind("#complex3", 0) == 0) {
        out.is_3d = true;
        out.array = read_array_body(reader, header(text, "#complex3", 3, reader.line()));
    } else {
        out.matrix = read_matrix_body(reader, header(text, "#complex", 2, reader.line()));
    }
    return out;
}

void write_mask(std::ostream &out, const SamplingMask &mask) {
    char p[64];
    std::snprintf(p, sizeof p, "%.17g", mask.p());
    const auto &dims = mask.dims();
    if (mask.is_3d()) {
        out << "#mask3 " << dims[0] << ' ' << dims[1] << ' ' << dims[2] << ' ' << p << ' '
            << mask.seed() << '\n';
        for (const auto &ix : mask.indices())
            out << ix[0] + 1 << ',' << ix[1] + 1 << ',' << ix[2] + 1 << '\n';
    } else {
        out << "#mask " << dims[0] << ' ' << dims[1] << ' ' << p << ' ' << mask.seed() << '\n';
        for (const auto &ix : mask.indices())
            out << ix[0] + 1 << ',' << ix[1] + 1 << '\n';
    }
}

SamplingMask read_mask(std::istream &in) {
    LineReader reader(in);
    const std::string text = reader.require("#mask header");
    const bool three = text.rfind("#mask3", 0) == 0;
    const auto h = three ? header(text, "#mask3", 5, reader.line())
                         : header(text, "#mask", 4, reader.line());
    const int line = reader.line();
    std::vector<Eigen::Index> dims;
    const char *names[] = {three ? "n" : "d", three ? "s" : "n", "d"};
    const std::size_t rank = three ? 3 : 2;
    for (std::size_t a = 0; a < rank; ++a)
        dims.push_back(parse_extent(h[a], line, names[a]));
    const double p = parse_real(h[rank], line, "p");
    if (p < 0.0 || p > 1.0)
        throw ParseError("p must lie in [0, 1]", line);
    SamplingMask mask(dims, p, parse_seed(h[rank + 1], line));

    std::string row;
    while (reader.next(row)) {
        const auto cells = split(row, ',');
        if (cells.size() != rank)
            throw ParseError("expected " + std::to_string(rank) + " comma-separated indices",
                             reader.line());
        std::array<Eigen::Index, 3> ix{0, 0, 0};
        for (std::size_t a = 0; a < rank; ++a) {
            const long long v = parse_int(cells[a], reader.line(), "index");
            if (v < 1 || v > dims[a])
                throw ParseError("index " + std::to_string(v) + " outside [1, " +
                                     std::to_string(dims[a]) + "]",
                                 reader.line());
            ix[a] = static_cast<Eigen::Index>(v - 1);
        }
        const bool seen = three ? mask.observed(ix[0], ix[1], ix[2]) : mask.observed(ix[0], ix[1]);
        if (seen)
            throw ParseError("duplicate index", reader.line());
        if (three)
            mask.set(ix[0], ix[1], ix[2]);
        else
            mask.set(ix[0], ix[1]);
    }
    return mask;
}

void save_matrix(const std::filesystem::path &path, const CMatrix &x) {
    with_output(path, [&](std::ostream &out) { write_matrix(out, x); });
}

CMatrix load_matrix(const std::filesystem::path &path) {
    return with_input(path, [](std::istream &in) { return read_matrix(in); });
}

void save_array3(const std::filesystem::path &path, const Array3 &x) {
    with_output(path, [&](std::ostream &out) { write_array3(out, x); });
}

Array3 load_array3(const std::filesystem::path &path) {
    return with_input(path, [](std::istream &in) { return read_array3(in); });
}

void save_mask(const std::filesystem::path &path, const SamplingMask &mask) {
    with_output(path, [&](std::ostream &out) { write_mask(out, mask); });
}

SamplingMask load_mask(const std::filesystem::path &path) {
    return with_input(path, [](std::istream &in) { return read_mask(in); });
}

ComplexData load_complex_data(const std::filesystem::path &path) {
    return with_input(path, [](std::istream &in) { return read_complex_data(in); });
}

void save_text(const std::filesystem::path &path, const std::string &text) {
    with_output(path, [&](std::ostream &out) { out << text; });
}

std::string load_text(const std::filesystem::path &path) {
    return with_input(path, [](std::istream &in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    });
}

} // namespace hmc
