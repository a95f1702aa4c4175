#include "centriscan/common.hpp"

namespace centriscan {

std::string_view to_string(Language lang)
{
    return lang == Language::Solidity ? "solidity" : "teal";
}

namespace {

// Length of the well-formed UTF-8 sequence starting at `pos`, or 0.
std::size_t valid_sequence_length(std::string_view s, std::size_t pos)
{
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char lead = byte(pos);
    if (lead < 0x80) {
        return 1;
    }
    std::size_t len = 0;
    unsigned char lo = 0x80;
    unsigned char hi = 0xBF;
    if (lead >= 0xC2 && lead <= 0xDF) {
        len = 2;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
        len = 3;
        if (lead == 0xE0) {
            lo = 0xA0;
        } else if (lead == 0xED) {
            hi = 0x9F;
        }
    } else if (lead >= 0xF0 && lead <= 0xF4) {
        len = 4;
        if (lead == 0xF0) {
            lo = 0x90;
        } else if (lead == 0xF4) {
            hi = 0x8F;
        }
    } else {
        return 0;
    }
    if (pos + len > s.size()) {
        return 0;
    }
    const unsigned char second = byte(pos + 1);
    if (second < lo || second > hi) {
        return 0;
    }
    for (std::size_t i = 2; i < len; ++i) {
        const unsigned char c = byte(pos + i);
        if (c < 0x80 || c > 0xBF) {
            return 0;
        }
    }
    return len;
}

}  // namespace

bool sanitize_utf8(std::string& text)
{
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
    std::string out;
    bool replaced = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t len = valid_sequence_length(text, pos);
        if (len == 0) {
            if (!replaced) {
                out.assign(text, 0, pos);
                replaced = true;
            }
            out += kReplacement;
            ++pos;
            continue;
        }
        if (replaced) {
            out.append(text, pos, len);
        }
        pos += len;
    }
    if (replaced) {
        text = std::move(out);
    }
    return replaced;
}

bool location_in_bounds(std::string_view source, SourceLoc loc)
{
    if (loc.line == 0 || loc.column == 0) {
        return false;
    }
    std::uint32_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < source.size() && line < loc.line; ++i) {
        if (source[i] == '\n') {
            ++line;
            line_start = i + 1;
        }
    }
    if (line != loc.line) {
        return false;
    }
    std::size_t line_end = source.find('\n', line_start);
    if (line_end == std::string_view::npos) {
        line_end = source.size();
    }
    // column may point one past the last character (end-of-line tokens)
    return loc.column <= line_end - line_start + 1;
}

}  // namespace centriscan
