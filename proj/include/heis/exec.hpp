#pragma once

namespace heis {

// Serial is the reference path; Parallel runs the same loop under OpenMP.
// Both reduce in a fixed order, so results are bitwise identical.
enum class Exec { Serial, Parallel };

inline bool parallel(Exec e) { return e == Exec::Parallel; }

} // namespace heis
