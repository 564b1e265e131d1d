#include "spectra/word.hpp"

#include <cctype>

namespace spectra {

Word& Word::append(const Word& o) {
    if (o.mark && !mark) mark = letters.size() + *o.mark;
    letters.insert(letters.end(), o.letters.begin(), o.letters.end());
    return *this;
}

Word& Word::push(Letter a, std::size_t times) {
    letters.insert(letters.end(), times, a);
    return *this;
}

Word Word::slice(std::size_t from, std::size_t len) const {
    return Word(std::vector<Letter>(letters.begin() + static_cast<long>(from),
                                    letters.begin() + static_cast<long>(from + len)));
}

Word Word::without_last() const { return slice(0, letters.size() - 1); }
Word Word::without_first() const { return slice(1, letters.size() - 1); }

bool Word::starts_with(const Word& p) const {
    if (p.size() > size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (letters[i] != p.letters[i]) return false;
    return true;
}

bool Word::ends_with(const Word& s) const {
    if (s.size() > size()) return false;
    std::size_t off = size() - s.size();
    for (std::size_t i = 0; i < s.size(); ++i)
        if (letters[off + i] != s.letters[i]) return false;
    return true;
}

Word operator+(const Word& a, const Word& b) {
    Word r = a;
    r.append(b);
    return r;
}

Word run(Letter a, std::size_t n) { return Word(std::vector<Letter>(n, a)); }
Word ones(std::size_t n) { return run(1, n); }

Word repeat(const Word& w, std::size_t times) {
    Word r;
    for (std::size_t i = 0; i < times; ++i) r.append(w.unmarked());
    return r;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s), comma_mode_(s.find(',') != std::string_view::npos) {}

    Word parse() {
        Word w = sequence();
        skip_ws();
        if (pos_ < s_.size()) throw WordParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        if (pending_bar_) throw WordParseError("'|' must precede a letter", bar_pos_);
        return w;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || (comma_mode_ && s_[pos_] == ',')))
            ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    std::size_t integer() {
        skip_ws();
        std::size_t start = pos_;
        std::size_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<std::size_t>(s_[pos_] - '0');
            if (v > 100000000) throw WordParseError("number too large", start);
            ++pos_;
        }
        if (pos_ == start) throw WordParseError("expected a number", start);
        return v;
    }

    void set_mark(Word& w, std::size_t idx, std::size_t at) {
        if (w.mark || marked_) throw WordParseError("more than one marked position", at);
        w.mark = idx;
        marked_ = true;
    }

    Word sequence() {
        Word w;
        for (;;) {
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] == ')') return w;
            if (s_[pos_] == '|') {
                if (pending_bar_ || marked_) throw WordParseError("more than one marked position", pos_);
                pending_bar_ = true;
                bar_pos_ = pos_;
                ++pos_;
                continue;
            }
            std::size_t at = pos_;
            bool bar = pending_bar_;
            pending_bar_ = false;
            Word atom_word = atom();
            std::size_t reps = 1;
            if (peek('^')) {
                ++pos_;
                reps = integer();
            }
            std::size_t base = w.size();
            Word block = repeat(atom_word, reps);
            if (atom_word.mark) {
                if (reps != 1) throw WordParseError("marked letter inside a repeated group", at);
                block.mark = atom_word.mark;
            }
            if (bar) {
                if (block.empty()) throw WordParseError("'|' must precede a letter", bar_pos_);
                if (block.mark) throw WordParseError("more than one marked position", at);
                block.mark = 0;
                marked_ = true;
            }
            if (peek('*')) {
                if (block.empty()) throw WordParseError("'*' must follow a letter", pos_);
                std::size_t star = pos_;
                ++pos_;
                if (block.mark) throw WordParseError("more than one marked position", star);
                set_mark(block, block.size() - 1, star);
            }
            if (block.mark) {
                if (w.mark) throw WordParseError("more than one marked position", at);
                w.mark = base + *block.mark;
            }
            w.letters.insert(w.letters.end(), block.letters.begin(), block.letters.end());
        }
    }

    Word atom() {
        skip_ws();
        std::size_t at = pos_;
        if (s_[pos_] == '(') {
            ++pos_;
            Word inner = sequence();
            if (!peek(')')) throw WordParseError("missing ')'", pos_);
            ++pos_;
            return inner;
        }
        if (!std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw WordParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", at);
        Letter v;
        if (comma_mode_) {
            v = static_cast<Letter>(integer());
        } else {
            v = s_[pos_] - '0';
            ++pos_;
        }
        if (v < 1) throw WordParseError("letters must be positive", at);
        return Word({v});
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    bool comma_mode_;
    bool pending_bar_ = false;
    std::size_t bar_pos_ = 0;
    bool marked_ = false;
};

}  // namespace

Word parse_word(std::string_view text) { return Parser(text).parse(); }

std::string format_word(const Word& w) {
    bool wide = false;
    for (Letter a : w.letters) wide = wide || a > 9;
    const std::string sep = wide ? "," : " ";
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        // Split the run at the mark so the '*' lands after the marked letter.
        if (w.mark && *w.mark >= i && *w.mark < j) j = *w.mark + 1;
        std::size_t len = j - i;
        if (!out.empty()) out += sep;
        if (len <= 2) {
            out += std::to_string(w[i]);
            if (len == 2) out += sep + std::to_string(w[i]);
        } else {
            out += std::to_string(w[i]) + "^" + std::to_string(len);
        }
        if (w.mark && *w.mark == j - 1) out += "*";
        i = j;
    }
    return out;
}

std::string letters_string(const Word& w) {
    std::string out;
    bool wide = false;
    for (Letter a : w.letters) wide = wide || a > 9;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (wide && i) out += ",";
        out += std::to_string(w[i]);
    }
    return out;
}

}  // namespace spectra
