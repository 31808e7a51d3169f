#include "ef/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "ef/errors.hpp"

namespace ef {

namespace {

inline unsigned char uc(char c) { return static_cast<unsigned char>(c); }

std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](char c) { return static_cast<char>(std::tolower(uc(c))); });
    return out;
}

} // namespace

const char* to_string(Pos pos) {
    switch (pos) {
        case Pos::Noun: return "NOUN";
        case Pos::Verb: return "VERB";
        case Pos::Adj: return "ADJ";
        case Pos::Adv: return "ADV";
        case Pos::Other: return "OTHER";
    }
    return "OTHER";
}

std::optional<Pos> pos_from_string(std::string_view tag) {
    if (tag == "NOUN") return Pos::Noun;
    if (tag == "VERB") return Pos::Verb;
    if (tag == "ADJ") return Pos::Adj;
    if (tag == "ADV") return Pos::Adv;
    if (tag == "OTHER") return Pos::Other;
    return std::nullopt;
}

std::string Sentence::text() const {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i].surface;
    }
    return out;
}

std::vector<Word> tokenize(std::string_view text) {
    std::vector<Word> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(uc(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(uc(text[j]))) ++j;
        if (j > i) {
            std::string tok = lowercase_ascii(text.substr(i, j - i));
            std::size_t b = 0, e = tok.size();
            while (b < e && std::ispunct(uc(tok[b]))) ++b;
            while (e > b && std::ispunct(uc(tok[e - 1]))) --e;
            if (e > b) words.push_back(Word{tok.substr(b, e - b), Pos::Other, false, false});
        }
        i = j;
    }
    if (words.empty()) throw EmptyInput("tokenize: no words survive");
    return words;
}

std::vector<SubwordPiece> split_subwords(const std::string& word,
                                         const std::unordered_set<std::string>& vocab) {
    if (word.empty()) throw EmptyInput("split_subwords: empty word");
    if (vocab.empty()) throw EmptyInput("split_subwords: empty vocabulary");

    std::vector<SubwordPiece> pieces;
    std::size_t pos = 0;
    while (pos < word.size()) {
        std::size_t take = 0;
        for (std::size_t len = word.size() - pos; len >= 1; --len) {
            if (vocab.count(word.substr(pos, len))) {
                take = len;
                break;
            }
        }
        if (take == 0) take = 1;    // nothing matches: fall back to one character
        pieces.push_back(SubwordPiece{word.substr(pos, take), pos > 0, 0.0});
        pos += take;
    }
    return pieces;
}

std::string piece_display(const SubwordPiece& piece) {
    return piece.is_continuation ? "##" + piece.text : piece.text;
}

std::vector<double> merge_scores(const std::vector<SubwordPiece>& pieces, MergeMode mode) {
    std::vector<double> out;
    if (pieces.empty()) return out;
    if (pieces.front().is_continuation)
        throw EmptyGroup("merge_scores: continuation piece with no head");

    std::size_t i = 0;
    while (i < pieces.size()) {
        std::size_t j = i + 1;
        while (j < pieces.size() && pieces[j].is_continuation) ++j;
        if (mode == MergeMode::AbsMax) {
            double best = pieces[i].score;
            for (std::size_t t = i + 1; t < j; ++t)
                if (std::abs(pieces[t].score) > std::abs(best)) best = pieces[t].score;
            out.push_back(best);
        } else {
            double sum = 0.0;
            for (std::size_t t = i; t < j; ++t) sum += pieces[t].score;
            out.push_back(sum / double(j - i));
        }
        i = j;
    }
    return out;
}

StopwordSet StopwordSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword list: " + path);
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = 0, e = line.size();
        while (b < e && std::isspace(uc(line[b]))) ++b;
        while (e > b && std::isspace(uc(line[e - 1]))) --e;
        if (b == e || line[b] == '#') continue;
        set.words_.insert(lowercase_ascii(std::string_view(line).substr(b, e - b)));
    }
    return set;
}

StopwordSet StopwordSet::from_words(const std::vector<std::string>& words) {
    StopwordSet set;
    for (const auto& w : words) set.words_.insert(lowercase_ascii(w));
    return set;
}

} // namespace ef
