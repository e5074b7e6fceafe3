#pragma once

#include <cstddef>
#include <string>

#include "searchenv/env/state.hpp"

namespace searchenv {

/// Bumped whenever the rendering below changes.
inline constexpr const char* kStateFormatVersion = "state-v1";

struct SerializeOptions {
  /// Character budget for the whole rendering. Only the action history is
  /// shortened to meet it, oldest entries first.
  std::size_t max_chars = 8000;
};

/// Renders S_t as text for the agent modules.
///
///   ⟦question⟧ / ⟦query⟧ / ⟦history⟧ / ⟦previous window⟧ /
///   ⟦current window⟧ / ⟦facts⟧ / ⟦actions remaining⟧
///
/// Each sentinel sits on its own line, in that order. Single-line fields
/// (question, query, history details, fact texts) escape '\' as "\\" and
/// newlines as "\n", and get a leading '\' when they start with '⟦'.
/// Window text keeps its lines; a line that would start with '⟦' or '\'
/// gets a leading '\'. The rendering is therefore unambiguous and
/// deterministic.
std::string serialize_state(const SessionState& state, const SerializeOptions& options = {});

}  // namespace searchenv
