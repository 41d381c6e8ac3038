#pragma once

#include <string>
#include <string_view>

#include "nanopair/core/config.hpp"

namespace nanopair {

/// Parsed input: physics plus run options.
struct InputDeck {
  SimConfig sim{};
  RunOptions run{};

  void validate() const {
    sim.validate();
    run.validate();
  }
  friend bool operator==(const InputDeck&, const InputDeck&) = default;
};

/// Named starting configurations: "lj-32" and "sd-halfdomain".
/// Throws ConfigError for other names.
InputDeck preset(std::string_view name);

/// Applies one `key = value` setting. Throws ParseError (with `line`) for an
/// unknown key or a value that does not parse.
void apply_setting(InputDeck& deck, const std::string& key, const std::string& value, int line);

/// Applies `key = value` lines on top of `base`. Blank lines and text after
/// '#' are ignored. The result is not validated.
InputDeck parse_deck(std::string_view text, InputDeck base = {});

/// Reads and parses a deck file; throws ConfigError when it cannot be read.
InputDeck parse_deck_file(const std::string& path, InputDeck base = {});

/// Inverse of the layout setting: "aos", "soa" or "aosoa:<c>".
LayoutChoice parse_layout(const std::string& text);

}  // namespace nanopair
