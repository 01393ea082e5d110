/// @file matrix_market.hpp
/// @brief Matrix Market coordinate import/export for SparseSym.

#ifndef SSTS_MATRIX_MARKET_HPP
#define SSTS_MATRIX_MARKET_HPP

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ssts/sparse.hpp"

namespace ssts {

/// Writes coordinate real symmetric format (lower triangle, 1-based).
inline void write_matrix_market(const SparseSym& A, std::ostream& os) {
    os << "%%MatrixMarket matrix coordinate real symmetric\n";
    std::vector<Triplet> lower;
    for (const Triplet& t : A.to_triplets())
        if (t.row >= t.col) lower.push_back(t);
    os << A.rows() << " " << A.rows() << " " << lower.size() << "\n";
    char buf[64];
    for (const Triplet& t : lower) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", t.row + 1, t.col + 1, t.value);
        os << buf;
    }
}

inline void write_matrix_market(const SparseSym& A, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_matrix_market: cannot open " + path);
    write_matrix_market(A, os);
}

/// Reads coordinate real matrices with the symmetric or general qualifier.
/// General input must still describe a symmetric matrix; assembly rejects
/// anything else.
inline SparseSym read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_matrix_market: empty stream");
    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    for (auto& c : object) c = static_cast<char>(std::tolower(c));
    for (auto& c : format) c = static_cast<char>(std::tolower(c));
    for (auto& c : field) c = static_cast<char>(std::tolower(c));
    for (auto& c : symmetry) c = static_cast<char>(std::tolower(c));
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
        throw std::runtime_error("read_matrix_market: unsupported header: " + line);
    if (field != "real" && field != "integer")
        throw std::runtime_error("read_matrix_market: only real/integer fields supported");
    if (symmetry != "symmetric" && symmetry != "general")
        throw std::runtime_error("read_matrix_market: only symmetric/general supported");

    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream dims(line);
    long rows = 0, cols = 0, nnz = 0;
    dims >> rows >> cols >> nnz;
    if (rows != cols) throw std::runtime_error("read_matrix_market: matrix not square");

    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(nnz));
    for (long k = 0; k < nnz; ++k) {
        long i = 0, j = 0;
        double v = 0.0;
        if (!(is >> i >> j >> v)) throw std::runtime_error("read_matrix_market: truncated entries");
        t.push_back({static_cast<index_t>(i - 1), static_cast<index_t>(j - 1), v});
    }
    // Symmetric files carry one triangle; from_triplets synthesizes the mirror.
    return SparseSym::from_triplets(static_cast<index_t>(rows), t);
}

inline SparseSym read_matrix_market(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_matrix_market: cannot open " + path);
    return read_matrix_market(is);
}

}  // namespace ssts

#endif  // SSTS_MATRIX_MARKET_HPP
