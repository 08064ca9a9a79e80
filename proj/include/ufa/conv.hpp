#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ufa/errors.hpp"

namespace ufa {

// A word a^length over the one-letter alphabet.
struct UnaryWord {
    std::uint64_t length = 0;

    UnaryWord() = default;
    UnaryWord(std::uint64_t n) : length(n) {}  // NOLINT: implicit by design

    friend bool operator==(UnaryWord a, UnaryWord b) { return a.length == b.length; }
    friend bool operator!=(UnaryWord a, UnaryWord b) { return !(a == b); }
    friend bool operator<(UnaryWord a, UnaryWord b) { return a.length < b.length; }
};

// One letter of a convolution: bit i set means track i is still reading 'a'.
// The all-clear pattern never occurs inside a convolution.
using ConvLetter = std::uint32_t;

constexpr int kMaxTracks = 20;

inline ConvLetter all_tracks_letter(int tracks) {
    return tracks >= 32 ? ~ConvLetter(0) : ((ConvLetter(1) << tracks) - 1);
}

// Padding-based encoding of a tuple of unary words as one word over
// track-pattern letters. Output length is the maximum component length.
std::vector<ConvLetter> conv(const std::vector<UnaryWord>& tuple);

// Inverse of conv. Throws NonMonotonePadding if a track resumes after padding.
std::vector<UnaryWord> unconv(const std::vector<ConvLetter>& letters, int tracks);

// Textual form of a letter: one character per track, track 0 leftmost,
// '1' for active and '_' for padding.
std::string letter_text(ConvLetter letter, int tracks);
ConvLetter letter_from_text(const std::string& text);

// Row count of the diagram: a common multiple of the source automaton's loop
// lengths that exceeds its state count.
struct PumpingConstant {
    std::uint64_t value = 1;

    friend bool operator==(PumpingConstant a, PumpingConstant b) { return a.value == b.value; }
};

// Position of a word in the D-row diagram: a^{column*D + row}.
struct DiagramCoord {
    std::uint64_t column = 0;
    std::uint64_t row = 0;

    friend bool operator==(DiagramCoord a, DiagramCoord b) {
        return a.column == b.column && a.row == b.row;
    }
};

inline DiagramCoord coords(UnaryWord u, PumpingConstant d) {
    return {u.length / d.value, u.length % d.value};
}

// Column shift: a^k maps to a^{k + n*D}, undefined when that would fall off
// the left edge of the diagram.
inline std::optional<UnaryWord> shift(UnaryWord u, std::int64_t n, PumpingConstant d) {
    if (n >= 0) return UnaryWord{u.length + static_cast<std::uint64_t>(n) * d.value};
    std::uint64_t dec = static_cast<std::uint64_t>(-n) * d.value;
    if (u.length < dec) return std::nullopt;
    return UnaryWord{u.length - dec};
}

}  // namespace ufa
