#pragma once

#include "tate/complex.hpp"

namespace tate {

// Complex file format: a single JSON document
//   { "generators": [{"id","degree","muLevel","hAction","label"}, ...],
//     "boundary": { "<id>": [{"coeff","uShift","target"}, ...], ... } }
// with hAction an exact fraction string "p/q" and coeff an integer or a
// decimal-free integer string.
std::string complex_to_json(const EquivariantComplex& c);
EquivariantComplex complex_from_json(const std::string& text);

EquivariantComplex load_complex_file(const std::string& path);
void save_complex_file(const EquivariantComplex& c, const std::string& path);

}  // namespace tate
