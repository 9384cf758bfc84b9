#pragma once

#include <string>
#include <vector>

#include "pcops/smoothness.hpp"

namespace pcops::harness {

struct CorpusEntry {
    std::string name;
    smoothness::TestFunction f;
    std::string notes; // which (k, p) memberships hold
};

/// Built-in test functions with closed-form derivatives (order >= 4) and
/// decay metadata: gaussian, cauchy_bump, modulated_gaussian, rational3,
/// plus a degenerate constant entry for smoke runs.
const std::vector<CorpusEntry>& builtin_corpus();

/// Lookup by name; throws std::invalid_argument for unknown names.
const CorpusEntry& corpus_entry(const std::string& name);

/// Constant function c as a TestFunction (degenerate fixture: every
/// derivative vanishes and norms are truncated at a fixed radius).
smoothness::TestFunction constant_function(double c);

} // namespace pcops::harness
