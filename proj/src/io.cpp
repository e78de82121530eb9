#include "mlmat/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mlmat {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& tok) {
    if (tok == "inf") return std::numeric_limits<double>::infinity();
    if (tok == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e)
        throw std::runtime_error("malformed number: '" + tok + "'");
    return v;
}

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '%') continue;
        return line;
    }
    throw std::runtime_error("unexpected end of matrix file");
}

ComplexMatrix read_mm(std::istream& in, const std::string& banner) {
    std::istringstream hdr(banner);
    std::string mm, object, layout, field, symmetry;
    hdr >> mm >> object >> layout >> field >> symmetry;
    if (object != "matrix") throw std::runtime_error("unsupported MatrixMarket object: " + object);
    if (symmetry != "general")
        throw std::runtime_error("unsupported MatrixMarket symmetry: " + symmetry);
    const bool complex_field = field == "complex";
    if (!complex_field && field != "real" && field != "integer")
        throw std::runtime_error("unsupported MatrixMarket field: " + field);

    if (layout == "array") {
        std::istringstream dims(next_content_line(in));
        std::size_t rows = 0, cols = 0;
        if (!(dims >> rows >> cols)) throw std::runtime_error("malformed array size line");
        ComplexMatrix A(rows, cols);
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t i = 0; i < rows; ++i) {
                std::istringstream entry(next_content_line(in));
                std::string re_tok, im_tok;
                if (!(entry >> re_tok)) throw std::runtime_error("missing matrix entry");
                double re = parse_double(re_tok), im = 0.0;
                if (complex_field) {
                    if (!(entry >> im_tok)) throw std::runtime_error("missing imaginary part");
                    im = parse_double(im_tok);
                }
                A(i, j) = Complex(re, im);
            }
        }
        return A;
    }
    if (layout == "coordinate") {
        std::istringstream dims(next_content_line(in));
        std::size_t rows = 0, cols = 0, nnz = 0;
        if (!(dims >> rows >> cols >> nnz)) throw std::runtime_error("malformed coordinate size line");
        ComplexMatrix A(rows, cols);
        for (std::size_t k = 0; k < nnz; ++k) {
            std::istringstream entry(next_content_line(in));
            std::size_t i = 0, j = 0;
            std::string re_tok, im_tok;
            if (!(entry >> i >> j >> re_tok)) throw std::runtime_error("malformed coordinate entry");
            double re = parse_double(re_tok), im = 0.0;
            if (complex_field) {
                if (!(entry >> im_tok)) throw std::runtime_error("missing imaginary part");
                im = parse_double(im_tok);
            }
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw std::runtime_error("coordinate entry out of range");
            A(i - 1, j - 1) = Complex(re, im);
        }
        return A;
    }
    throw std::runtime_error("unsupported MatrixMarket layout: " + layout);
}

ComplexMatrix read_csv_pairs(std::istream& in, const std::string& first_line) {
    std::vector<std::vector<Complex>> rows;
    std::string line = first_line;
    do {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<Complex> row;
        std::istringstream ss(line);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ss, tok, ',')) {
            tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
            if (!tok.empty()) vals.push_back(parse_double(tok));
        }
        if (vals.empty()) continue;
        if (vals.size() % 2 != 0)
            throw std::runtime_error("csv-pairs row must hold an even number of values");
        for (std::size_t k = 0; k + 1 < vals.size(); k += 2) row.emplace_back(vals[k], vals[k + 1]);
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("csv-pairs rows have inconsistent lengths");
        rows.push_back(std::move(row));
    } while (std::getline(in, line));

    if (rows.empty()) throw std::runtime_error("empty csv matrix");
    ComplexMatrix A(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) A(i, j) = rows[i][j];
    return A;
}

} // namespace

void write_matrix(std::ostream& out, const ComplexMatrix& A, MatrixFileFormat format) {
    switch (format) {
        case MatrixFileFormat::mm_array: {
            out << "%%MatrixMarket matrix array complex general\n";
            out << A.rows() << " " << A.cols() << "\n";
            for (std::size_t j = 0; j < A.cols(); ++j)
                for (std::size_t i = 0; i < A.rows(); ++i)
                    out << format_double(A(i, j).real()) << " " << format_double(A(i, j).imag())
                        << "\n";
            break;
        }
        case MatrixFileFormat::mm_coordinate: {
            std::size_t nnz = 0;
            for (std::size_t i = 0; i < A.rows(); ++i)
                for (std::size_t j = 0; j < A.cols(); ++j)
                    if (A(i, j) != Complex(0.0, 0.0)) ++nnz;
            out << "%%MatrixMarket matrix coordinate complex general\n";
            out << A.rows() << " " << A.cols() << " " << nnz << "\n";
            for (std::size_t i = 0; i < A.rows(); ++i)
                for (std::size_t j = 0; j < A.cols(); ++j)
                    if (A(i, j) != Complex(0.0, 0.0))
                        out << (i + 1) << " " << (j + 1) << " " << format_double(A(i, j).real())
                            << " " << format_double(A(i, j).imag()) << "\n";
            break;
        }
        case MatrixFileFormat::csv_pairs: {
            for (std::size_t i = 0; i < A.rows(); ++i) {
                for (std::size_t j = 0; j < A.cols(); ++j) {
                    if (j) out << ",";
                    out << format_double(A(i, j).real()) << "," << format_double(A(i, j).imag());
                }
                out << "\n";
            }
            break;
        }
    }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& A, MatrixFileFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_matrix(out, A, format);
    if (!out) throw std::runtime_error("write failed: " + path);
}

ComplexMatrix read_matrix(std::istream& in) {
    std::string first;
    if (!std::getline(in, first)) throw std::runtime_error("empty matrix file");
    if (first.rfind("%%MatrixMarket", 0) == 0) return read_mm(in, first);
    return read_csv_pairs(in, first);
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_matrix(in);
}

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::runtime_error("empty complex literal");

    // split into up to two signed terms; 'i' marks the imaginary one
    double re = 0.0, im = 0.0;
    std::size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        std::size_t start = pos;
        if (s[pos] == '+' || s[pos] == '-') ++pos;
        while (pos < s.size()) {
            const char c = s[pos];
            if ((c == '+' || c == '-') && (s[pos - 1] != 'e' && s[pos - 1] != 'E')) break;
            ++pos;
        }
        std::string term = s.substr(start, pos - start);
        if (term.empty()) throw std::runtime_error("malformed complex literal: " + text);
        const bool imag = term.back() == 'i' || term.back() == 'j';
        if (imag) {
            term.pop_back();
            if (term.empty() || term == "+") term = "1";
            else if (term == "-") term = "-1";
            im += parse_double(term);
        } else {
            re += parse_double(term);
        }
        any = true;
    }
    if (!any) throw std::runtime_error("malformed complex literal: " + text);
    return {re, im};
}

} // namespace mlmat
