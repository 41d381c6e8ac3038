#pragma once

#include "nanopair/cli/deck.hpp"
#include "nanopair/cli/report.hpp"

namespace nanopair {

/// Validates the deck, runs it on deck.run.ranks in-process ranks (balancing
/// first when a curve is set), writes the optional XYZ trajectory and returns
/// the report. Errors from any rank propagate as exceptions.
SimReport run_command(const InputDeck& deck);

}  // namespace nanopair
