#pragma once

#include <iosfwd>
#include <string>

#include "lindstedt.hpp"

namespace dsm {

// Self-describing text format for a coefficient set. The header carries the
// rotation number (full-precision decimal plus a provenance token), the
// Diophantine data, the dissipation order, the perturbation modes, the
// truncation order and a precision tag; each order record carries mu_n and
// the exponential modes (k, re, im) of u_n. Decimal strings round-trip the
// scalar type exactly, so write-then-read is the identity and equal inputs
// produce byte-identical files.
struct CoefficientSet {
  Real omega = 0;
  std::string omega_token;  // "golden" or "literal"
  Real tau = 0;
  Real nu = 0;
  int k_max = 0;
  int alpha = 0;
  TrigPoly potential;
  std::string precision;
  HullExpansion hull{EpsSeries(0), ScalarSeries(0)};
};

void write_coefficients(std::ostream& os, const CoefficientSet& set);
CoefficientSet read_coefficients(std::istream& is);

void write_coefficients_file(const std::string& path, const CoefficientSet& set);
CoefficientSet read_coefficients_file(const std::string& path);

// Builds the runtime objects for a parsed file.
MapSpec map_from_set(const CoefficientSet& set);

// True when the two headers describe the same problem (omega, tau, alpha,
// potential); coefficient comparison is meaningless otherwise.
bool headers_compatible(const CoefficientSet& a, const CoefficientSet& b);

std::string format_real(Real v);

}  // namespace dsm
