#pragma once

#include <complex>
#include <filesystem>
#include <string>

#include "rfspectra/features.hpp"
#include "rfspectra/spectra.hpp"

namespace rfspectra {

// CSV dialect: comma separator, '.' decimal point, 17 significant digits,
// '\n' line endings, UTF-8.

/// "%.17g" rendering; "inf"/"nan" pass through.
std::string format_float(double value);

/// "re+imj" / "re-imj" with 17 significant digits per part.
std::string format_complex(std::complex<double> value);

/// One line per row, complex entries, header row with column indices.
std::string matrix_to_csv(const HermitianMatrix& m);
std::string matrix_to_csv(const FeatureMatrix& a);

/// index,value pairs, ascending.
std::string spectrum_to_csv(const SpectrumResult& spectrum);

/// Writes to "<path>.tmp" then renames: a failed run leaves no partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace rfspectra
