#include "topo/word.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace topo {

GluingWord GluingWord::rotated(std::size_t k) const {
    std::vector<EdgeLetter> out;
    out.reserve(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i)
        out.push_back(letters[(i + k) % letters.size()]);
    return GluingWord(std::move(out));
}

GluingWord GluingWord::inverted() const {
    std::vector<EdgeLetter> out;
    out.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out.push_back(it->inverse());
    return GluingWord(std::move(out));
}

std::vector<EdgeLetter> parse_letter_word(const std::string& text) {
    std::vector<EdgeLetter> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (!std::isalnum(static_cast<unsigned char>(text[i])))
            throw ParseError(i, std::string("unexpected character '") + text[i] + "'");
        std::size_t start = i;
        while (i < n && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
        std::string label = text.substr(start, i - start);
        int exponent = +1;
        if (i < n && text[i] == '^') {
            if (text.compare(i, 3, "^-1") != 0)
                throw ParseError(i, "expected '^-1' after label");
            exponent = -1;
            i += 3;
        }
        out.emplace_back(std::move(label), exponent);
    }
    if (out.empty()) throw ParseError(0, "empty word");
    return out;
}

void require_closed_surface(const GluingWord& w) {
    std::map<std::string, int> counts;
    for (const auto& l : w.letters) ++counts[l.label];
    for (const auto& [label, count] : counts) {
        if (count != 2)
            throw MalformedSurfaceWord("label '" + label + "' occurs " +
                                       std::to_string(count) +
                                       " times; closed-surface words need exactly 2");
    }
}

GluingWord parse_gluing_word(const std::string& text) {
    GluingWord w(parse_letter_word(text));
    require_closed_surface(w);
    return w;
}

std::string print_word(const std::vector<EdgeLetter>& letters) {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << letters[i].label;
        if (letters[i].exponent < 0) os << "^-1";
    }
    return os.str();
}

std::string print_word(const GluingWord& w) { return print_word(w.letters); }

}  // namespace topo
