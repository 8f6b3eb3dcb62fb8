#pragma once

namespace zecap {

// Enumeration guards protect against accidental blow-ups; the environment
// variable ZECAP_GUARD_OVERRIDE (a factor >= 1) raises them all, at your
// own risk.
double guard_factor();

} // namespace zecap
