#include "ufa/conv.hpp"

#include <algorithm>
#include <stdexcept>

namespace ufa {

std::vector<ConvLetter> conv(const std::vector<UnaryWord>& tuple) {
    if (tuple.empty()) throw std::invalid_argument("conv: empty tuple");
    if (tuple.size() > kMaxTracks) throw std::invalid_argument("conv: too many tracks");
    std::uint64_t max_len = 0;
    for (UnaryWord w : tuple) max_len = std::max(max_len, w.length);
    std::vector<ConvLetter> out;
    out.reserve(max_len);
    for (std::uint64_t t = 0; t < max_len; ++t) {
        ConvLetter letter = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i)
            if (tuple[i].length > t) letter |= ConvLetter(1) << i;
        out.push_back(letter);
    }
    return out;
}

std::vector<UnaryWord> unconv(const std::vector<ConvLetter>& letters, int tracks) {
    if (tracks < 0 || tracks > kMaxTracks) throw std::invalid_argument("unconv: bad track count");
    const ConvLetter mask = all_tracks_letter(tracks);
    ConvLetter prev = mask;
    std::vector<UnaryWord> out(static_cast<std::size_t>(tracks));
    for (std::size_t t = 0; t < letters.size(); ++t) {
        ConvLetter letter = letters[t];
        if (letter == 0)
            throw NonMonotonePadding("all-clear letter at index " + std::to_string(t));
        if ((letter & ~mask) != 0)
            throw NonMonotonePadding("letter uses track beyond arity at index " + std::to_string(t));
        if ((letter & ~prev) != 0)
            throw NonMonotonePadding("track resumes after padding at index " + std::to_string(t));
        for (int i = 0; i < tracks; ++i)
            if (letter & (ConvLetter(1) << i)) ++out[static_cast<std::size_t>(i)].length;
        prev = letter;
    }
    return out;
}

std::string letter_text(ConvLetter letter, int tracks) {
    std::string s(static_cast<std::size_t>(tracks), '_');
    for (int i = 0; i < tracks; ++i)
        if (letter & (ConvLetter(1) << i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

ConvLetter letter_from_text(const std::string& text) {
    ConvLetter letter = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1')
            letter |= ConvLetter(1) << i;
        else if (text[i] != '_')
            throw FormatError("bad letter pattern '" + text + "'");
    }
    return letter;
}

}  // namespace ufa
