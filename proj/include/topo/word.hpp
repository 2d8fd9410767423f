#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace topo {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct MalformedSurfaceWord : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One oriented edge symbol in a polygon boundary word.
struct EdgeLetter {
    std::string label;
    int exponent = +1;  // +1 or -1

    EdgeLetter() = default;
    EdgeLetter(std::string lbl, int exp) : label(std::move(lbl)), exponent(exp) {
        if (exponent != 1 && exponent != -1)
            throw std::invalid_argument("EdgeLetter exponent must be +1 or -1");
    }

    EdgeLetter inverse() const { return EdgeLetter(label, -exponent); }

    bool operator==(const EdgeLetter& o) const {
        return label == o.label && exponent == o.exponent;
    }
};

// Boundary word of a polygon whose sides are glued in pairs.
// Closed-surface words have every label appearing exactly twice.
struct GluingWord {
    std::vector<EdgeLetter> letters;

    GluingWord() = default;
    explicit GluingWord(std::vector<EdgeLetter> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }

    GluingWord rotated(std::size_t k) const;
    GluingWord inverted() const;

    bool operator==(const GluingWord& o) const { return letters == o.letters; }
};

// Grammar: word := term+ ; term := label ('^-1')? ; labels are maximal
// alphanumeric runs, whitespace separates terms.
GluingWord parse_gluing_word(const std::string& text);

// Parses without enforcing the each-label-twice condition (relator words).
std::vector<EdgeLetter> parse_letter_word(const std::string& text);

std::string print_word(const std::vector<EdgeLetter>& letters);
std::string print_word(const GluingWord& w);

// Throws MalformedSurfaceWord unless each label occurs exactly twice.
void require_closed_surface(const GluingWord& w);

}  // namespace topo
