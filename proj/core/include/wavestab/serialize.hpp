#pragma once

#include <string>

#include "wavestab/continuation.hpp"
#include "wavestab/stability.hpp"

namespace wavestab {

// JSON codecs.  Numbers round-trip exactly (shortest representation that
// reparses to the same double), so serialized runs are byte-reproducible.

std::string to_json(const SpectralFunction& f);
SpectralFunction spectral_function_from_json(const std::string& text);

std::string to_json(const WaveState& state);
WaveState wave_state_from_json(const std::string& text);

std::string to_json(const Branch& branch);
Branch branch_from_json(const std::string& text);

std::string to_json(const StabilityReport& report);

/// Free-surface sample CSV with header "X,Y", full double precision.
std::string surface_csv(const WaveState& state, int count);

}  // namespace wavestab
