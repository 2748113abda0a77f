#ifndef RAUZY_PARSE_HPP
#define RAUZY_PARSE_HPP

// Line-based substitution-set files:
//
//   # comment
//   alphabet: abc
//   [sub s1]
//   a -> ab
//   b -> ac
//   c -> a

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rauzy/core.hpp"

namespace rauzy {

struct SubstitutionFile {
    Alphabet alphabet;
    std::vector<Substitution> substitutions;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

} // namespace detail

inline SubstitutionFile parse_substitution_set(std::string_view text) {
    using detail::trim;

    SubstitutionFile out;
    bool have_alphabet = false;

    struct Block {
        std::string name;
        std::size_t line;
        std::vector<std::optional<Word>> images;
    };
    std::vector<Block> blocks;
    std::set<std::string> names;

    auto finish = [&](Block& b) {
        std::vector<Word> images;
        for (std::size_t j = 0; j < b.images.size(); ++j) {
            if (!b.images[j]) {
                throw parse_error(b.line, "substitution '" + b.name + "' has no image for letter '" +
                                              out.alphabet.symbol(letter_at(j)) + "'");
            }
            images.push_back(*b.images[j]);
        }
        out.substitutions.emplace_back(b.name, std::move(images));
    };

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (!have_alphabet) {
            constexpr std::string_view key = "alphabet:";
            if (line.substr(0, key.size()) != key)
                throw parse_error(lineno, "expected 'alphabet:' declaration first");
            auto symbols = trim(line.substr(key.size()));
            try {
                out.alphabet = Alphabet(std::string(symbols));
            } catch (const error& e) {
                throw parse_error(lineno, e.what());
            }
            have_alphabet = true;
            continue;
        }

        if (line.front() == '[') {
            if (line.back() != ']') throw parse_error(lineno, "unterminated block header");
            auto inner = trim(line.substr(1, line.size() - 2));
            constexpr std::string_view key = "sub";
            if (inner.substr(0, key.size()) != key) throw parse_error(lineno, "expected '[sub NAME]'");
            auto name = std::string(trim(inner.substr(key.size())));
            if (name.empty()) throw parse_error(lineno, "substitution name missing");
            if (!names.insert(name).second) throw parse_error(lineno, "duplicate substitution name '" + name + "'");
            if (!blocks.empty()) finish(blocks.back());
            blocks.push_back({name, lineno, std::vector<std::optional<Word>>(out.alphabet.size())});
            continue;
        }

        auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw parse_error(lineno, "expected 'x -> word'");
        if (blocks.empty()) throw parse_error(lineno, "image outside a [sub NAME] block");
        auto lhs = trim(line.substr(0, arrow));
        auto rhs = trim(line.substr(arrow + 2));
        if (lhs.size() != 1) throw parse_error(lineno, "left-hand side must be a single letter");
        auto a = out.alphabet.letter_for(lhs.front());
        if (!a) throw parse_error(lineno, std::string("unknown letter '") + lhs.front() + "'");
        if (rhs.empty()) throw parse_error(lineno, "erasing substitution: empty image");
        Word w;
        for (char c : rhs) {
            if (c == ' ' || c == '\t') continue;
            auto b = out.alphabet.letter_for(c);
            if (!b) throw parse_error(lineno, std::string("unknown letter '") + c + "'");
            w.push_back(*b);
        }
        auto& slot = blocks.back().images[index_of(*a)];
        if (slot) throw parse_error(lineno, std::string("letter '") + lhs.front() + "' defined twice");
        slot = std::move(w);
    }

    if (!have_alphabet) throw parse_error(0, "empty substitution file");
    if (blocks.empty()) throw parse_error(0, "no substitutions defined");
    finish(blocks.back());
    return out;
}

inline SubstitutionFile load_substitution_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_substitution_set(ss.str());
}

} // namespace rauzy

#endif // RAUZY_PARSE_HPP
