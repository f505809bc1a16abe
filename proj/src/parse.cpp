#include "qfix/parse.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "qfix/error.hpp"

namespace qfix {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string_view strip_comment(std::string_view line) {
    auto pos = line.find('#');
    return pos == std::string_view::npos ? line : line.substr(0, pos);
}

}  // namespace

SubstitutionFile parse_substitution(std::string_view text, const ParseOptions& opts) {
    std::optional<Alphabet> alpha;
    std::map<Letter, Word> images;
    std::vector<std::pair<std::string, std::string>> coding_rules;
    std::size_t line_no = 0;

    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto toks = split_ws(strip_comment(raw));
        if (toks.empty()) continue;
        const auto& head = toks.front();
        if (head == "alphabet:" || head == "alphabet") {
            if (alpha) throw ParseError(line_no, "alphabet declared twice");
            std::vector<std::string> letters(toks.begin() + 1, toks.end());
            if (letters.empty()) throw ParseError(line_no, "empty alphabet");
            try {
                alpha.emplace(std::move(letters));
            } catch (const Error& e) {
                throw ParseError(line_no, e.what());
            }
        } else if (head == "map") {
            if (!alpha) throw ParseError(line_no, "map before alphabet declaration");
            if (toks.size() < 3 || toks[2] != "->") throw ParseError(line_no, "expected 'map <letter> -> <letters>'");
            auto a = alpha->find(toks[1]);
            if (!a) throw ParseError(line_no, "undeclared letter '" + toks[1] + "'");
            if (images.count(*a)) throw ParseError(line_no, "duplicate rule for '" + toks[1] + "'");
            Word img;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                auto b = alpha->find(toks[i]);
                if (!b) throw ParseError(line_no, "undeclared letter '" + toks[i] + "'");
                img.push_back(*b);
            }
            if (img.empty()) throw ParseError(line_no, "empty image for '" + toks[1] + "'");
            images[*a] = std::move(img);
        } else if (head == "coding") {
            if (!alpha) throw ParseError(line_no, "coding before alphabet declaration");
            if (toks.size() != 4 || toks[2] != "->") throw ParseError(line_no, "expected 'coding <letter> -> <token>'");
            if (!alpha->find(toks[1])) throw ParseError(line_no, "undeclared letter '" + toks[1] + "'");
            for (const auto& r : coding_rules)
                if (r.first == toks[1]) throw ParseError(line_no, "duplicate coding rule for '" + toks[1] + "'");
            coding_rules.emplace_back(toks[1], toks[3]);
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "'");
        }
    }
    if (!alpha) throw ParseError(line_no, "missing alphabet declaration");
    std::vector<Word> ordered;
    for (Letter a = 0; a < alpha->size(); ++a) {
        auto it = images.find(a);
        if (it == images.end()) throw ParseError(line_no, "no rule for letter '" + alpha->token(a) + "'");
        ordered.push_back(it->second);
    }
    Substitution phi(*alpha, std::move(ordered));
    if (!opts.allow_nongrowing && !is_growing(phi))
        throw Error("substitution is not growing (use --allow-nongrowing to load it anyway)");

    std::optional<Coding> coding;
    if (!coding_rules.empty()) {
        if (coding_rules.size() != alpha->size()) throw ParseError(line_no, "coding must cover every letter");
        std::vector<std::string> targets;
        std::map<std::string, Letter> tindex;
        std::vector<Letter> map(alpha->size());
        for (const auto& [src, dst] : coding_rules) {
            auto [it, fresh] = tindex.emplace(dst, static_cast<Letter>(targets.size()));
            if (fresh) targets.push_back(dst);
            map[alpha->at(src)] = it->second;
        }
        coding.emplace(*alpha, Alphabet(std::move(targets)), std::move(map));
    }
    return SubstitutionFile{std::move(phi), std::move(coding)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SubstitutionFile load_substitution(const std::string& path, const ParseOptions& opts) {
    return parse_substitution(read_file(path), opts);
}

std::string format_substitution(const Substitution& phi, const Coding* coding) {
    const auto& alpha = phi.alphabet();
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& t : alpha.tokens()) out << ' ' << t;
    out << '\n';
    for (Letter a = 0; a < alpha.size(); ++a) {
        out << "map " << alpha.token(a) << " ->";
        for (Letter b : phi.image(a)) out << ' ' << alpha.token(b);
        out << '\n';
    }
    if (coding)
        for (Letter a = 0; a < alpha.size(); ++a)
            out << "coding " << alpha.token(a) << " -> " << coding->target().token((*coding)(a)) << '\n';
    return out.str();
}

}  // namespace qfix
