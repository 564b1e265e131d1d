#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spectra {

using Letter = int;

// Finite string of positive integer letters with an optional marked position.
struct Word {
    std::vector<Letter> letters;
    std::optional<std::size_t> mark;

    Word() = default;
    Word(std::initializer_list<Letter> ls) : letters(ls) {}
    explicit Word(std::vector<Letter> ls, std::optional<std::size_t> m = std::nullopt)
        : letters(std::move(ls)), mark(m) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Letter operator[](std::size_t i) const { return letters[i]; }
    Letter back() const { return letters.back(); }
    Letter front() const { return letters.front(); }

    Word& append(const Word& o);
    Word& push(Letter a, std::size_t times = 1);
    Word slice(std::size_t from, std::size_t len) const;
    Word without_last() const;
    Word without_first() const;
    Word unmarked() const { return Word(letters); }

    bool starts_with(const Word& p) const;
    bool ends_with(const Word& s) const;

    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    friend bool operator<(const Word& a, const Word& b) { return a.letters < b.letters; }
};

Word operator+(const Word& a, const Word& b);
Word ones(std::size_t n);
Word repeat(const Word& w, std::size_t times);
Word run(Letter a, std::size_t n);

class WordParseError : public std::runtime_error {
public:
    WordParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Grammar: digits are letters ("2 2 1 1"), or comma-separated integers when
// the text contains a comma ("10,3,3"). Runs "L^k", groups "(...)^k",
// a '*' right after a letter marks it, a '|' marks the next letter.
// Whitespace is ignored.
Word parse_word(std::string_view text);

// Run-length rendering that parse_word reads back, e.g. "2 2 1^5 2* 2".
std::string format_word(const Word& w);

// Plain letter string, e.g. "22111".
std::string letters_string(const Word& w);

}  // namespace spectra
