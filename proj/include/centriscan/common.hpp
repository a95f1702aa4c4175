#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace centriscan {

inline constexpr std::string_view kToolVersion = "0.3.0";

/// 1-based line/column position inside a source file.
struct SourceLoc
{
    std::uint32_t line = 1;
    std::uint32_t column = 1;

    friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

enum class DiagSeverity { Note, Warning };

struct Diagnostic
{
    std::string message;
    SourceLoc loc;
    DiagSeverity severity = DiagSeverity::Note;
};

using Diagnostics = std::vector<Diagnostic>;

enum class Language { Solidity, Teal };

[[nodiscard]] std::string_view to_string(Language lang);

/// Replaces every malformed UTF-8 sequence with U+FFFD. Returns true when
/// at least one replacement happened.
bool sanitize_utf8(std::string& text);

/// Line/column bounds check used by the location-soundness tests.
[[nodiscard]] bool location_in_bounds(std::string_view source, SourceLoc loc);

}  // namespace centriscan
