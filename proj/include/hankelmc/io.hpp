#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hankelmc/sampling.hpp"
#include "hankelmc/types.hpp"

namespace hmc {

// Text formats (all indices 1-based on disk):
//
//   #complex d n            d lines of n comma-separated entries a+bi
//   #complex3 n s d         d sections "#slice i", each n lines of s entries
//   #mask d n p seed        one "i,k" line per observed entry
//   #mask3 n s d p seed     one "j,k,i" line per observed entry
//
// Entries are written with 17 significant digits so files round-trip exactly.
// Malformed input raises ParseError with the offending line.

/// "a+bi" / "a-bi" with 17 significant digits.
std::string format_complex(cplx z);
/// Parses "a+bi", "a-bi", "a", "bi" (surrounding blanks ignored).
cplx parse_complex(std::string_view text, int line = 0);

void write_matrix(std::ostream &out, const CMatrix &x);
CMatrix read_matrix(std::istream &in);

void write_array3(std::ostream &out, const Array3 &x);
Array3 read_array3(std::istream &in);

void write_mask(std::ostream &out, const SamplingMask &mask);
SamplingMask read_mask(std::istream &in);

/// Reads either header; the caller checks is_3d() when it needs one kind.
struct ComplexData {
    bool is_3d = false;
    CMatrix matrix;
    Array3 array;
};
ComplexData read_complex_data(std::istream &in);

// File wrappers; failure to open or write raises IoError.
void save_matrix(const std::filesystem::path &path, const CMatrix &x);
CMatrix load_matrix(const std::filesystem::path &path);
void save_array3(const std::filesystem::path &path, const Array3 &x);
Array3 load_array3(const std::filesystem::path &path);
void save_mask(const std::filesystem::path &path, const SamplingMask &mask);
SamplingMask load_mask(const std::filesystem::path &path);
ComplexData load_complex_data(const std::filesystem::path &path);

/// Writes `text` to `path`, creating parent directories.
void save_text(const std::filesystem::path &path, const std::string &text);
std::string load_text(const std::filesystem::path &path);

} // namespace hmc
