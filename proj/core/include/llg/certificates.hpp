#pragma once

#include <iosfwd>

namespace llg {

/// Runs the built-in identity and property checks (vector algebra, stencil
/// convergence orders, integral identities, collinearity solutions, gain
/// admissibility, sphere tangency, equilibrium fixed points, energy decay)
/// and prints one line per check. Returns true when everything passes.
bool run_certificates(std::ostream& out, bool quiet = false);

}  // namespace llg
