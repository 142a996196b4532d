#pragma once

#include <string>

#include "relesc/density.hpp"

namespace relesc {

/// Parses the density mini-grammar:
///   exp:a=<A> | gauss | uniform:<lo>,<hi> | power:eta=<E>
///   | sg:pstar=<P>,lambda=<L> | grid:<path.csv>
/// Throws SpecSyntax for malformed text, SpecParam for invalid parameters.
DensityModel parse_density_spec(const std::string& text);

}  // namespace relesc
