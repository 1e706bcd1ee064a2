#include "rfspectra/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rfspectra/errors.hpp"

namespace rfspectra {

std::string format_float(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_complex(std::complex<double> value) {
  std::string out = format_float(value.real());
  const std::string imag = format_float(value.imag());
  if (!imag.empty() && imag.front() != '-') out += '+';
  out += imag;
  out += 'j';
  return out;
}

namespace {

std::string header_row(std::size_t cols) {
  std::ostringstream out;
  for (std::size_t k = 0; k < cols; ++k) {
    if (k) out << ',';
    out << k;
  }
  out << '\n';
  return out.str();
}

}  // namespace

std::string matrix_to_csv(const HermitianMatrix& m) {
  std::ostringstream out;
  out << header_row(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) out << ',';
      out << format_complex(m.at(j, k));
    }
    out << '\n';
  }
  return out.str();
}

std::string matrix_to_csv(const FeatureMatrix& a) {
  std::ostringstream out;
  out << header_row(a.cols);
  for (std::size_t j = 0; j < a.rows; ++j) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (k) out << ',';
      out << format_complex(a.at(j, k));
    }
    out << '\n';
  }
  return out.str();
}

std::string spectrum_to_csv(const SpectrumResult& spectrum) {
  std::ostringstream out;
  out << "index,value\n";
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    out << i << ',' << format_float(spectrum.values[i]) << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot open for writing: " + tmp.string());
    }
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    if (!out) {
      throw ConfigError("failed while writing: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace rfspectra
