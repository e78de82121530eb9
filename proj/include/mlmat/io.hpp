#pragma once

#include <iosfwd>
#include <string>

#include "mlmat/matrix.hpp"

namespace mlmat {

enum class MatrixFileFormat { mm_array, mm_coordinate, csv_pairs };

/// Shortest round-trip decimal form of a double ("inf" for infinities).
std::string format_double(double v);

/// Writers. The Matrix Market array variant lists entries column-major,
/// "re im" per line; the coordinate variant lists nonzeros 1-based. CSV
/// pairs holds one matrix row per line as re,im,re,im,...
void write_matrix(std::ostream& out, const ComplexMatrix& A, MatrixFileFormat format);
void write_matrix_file(const std::string& path, const ComplexMatrix& A, MatrixFileFormat format);

/// Readers sniff the format: a %%MatrixMarket banner selects array or
/// coordinate (complex, real and integer fields accepted), anything else is
/// parsed as CSV pairs. Throws std::runtime_error on malformed input.
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);

/// Parses a complex literal: "1.5", "2i", "1+2i", "-3.4e-2-0.5i", "i".
Complex parse_complex(const std::string& text);

} // namespace mlmat
