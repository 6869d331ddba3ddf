#pragma once

#include "dualnest/geometry.hpp"

namespace dualnest {

/// Closed region between two Jordan curves; degenerate when they touch.
struct AnnulusRegion {
    Polyline outer;
    Polyline inner;
    std::vector<Complex> pinch_points;  // where the curves touch within tolerance
};

enum class Mark { Critical, SemiCritical, OffCritical, Unresolvable };

inline char mark_letter(Mark m) {
    switch (m) {
        case Mark::Critical: return 'C';
        case Mark::SemiCritical: return 'S';
        case Mark::OffCritical: return 'O';
        default: return 'U';
    }
}

}  // namespace dualnest
