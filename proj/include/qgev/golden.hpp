#pragma once

// Printed reference objects, kept apart from the constructive code paths so
// the two can be compared.

#include <string>

#include "qgev/golden_data.hpp"
#include "qgev/io.hpp"

namespace qgev::golden {

inline ExactMatrix witness() { return io::matrix_from_json(io::parse_text(std::string(golden_data::kWitness), "golden witness")); }
inline ExactMatrix rho1() { return io::matrix_from_json(io::parse_text(std::string(golden_data::kRho1), "golden rho1")); }
inline UniPoly charpoly_rho1() {
  return io::poly_from_json(io::parse_text(std::string(golden_data::kCharpolyRho1), "golden charpoly rho1"));
}
inline UniPoly charpoly_rho1_gamma() {
  return io::poly_from_json(io::parse_text(std::string(golden_data::kCharpolyRho1Gamma), "golden charpoly rho1^Gamma"));
}

}  // namespace qgev::golden
