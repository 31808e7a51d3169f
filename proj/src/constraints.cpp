#include "ef/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ef/errors.hpp"

namespace ef {

namespace {

std::string lowercase_ascii(const std::string& s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](char c) {
        return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    });
    return out;
}

} // namespace

PosLexicon PosLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open POS lexicon: " + path);
    PosLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string token, tag, extra;
        if (!(ss >> token)) continue;   // blank line
        if (!(ss >> tag) || (ss >> extra))
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected '<token> <TAG>'");
        const auto pos = pos_from_string(tag);
        if (!pos)
            throw ParseError(path + ":" + std::to_string(line_no) + ": unknown tag '" + tag + "'");
        token = lowercase_ascii(token);
        if (lex.tags_.count(token))
            throw ParseError(path + ":" + std::to_string(line_no) + ": duplicate token '" +
                             token + "'");
        lex.tags_.emplace(std::move(token), *pos);
    }
    return lex;
}

PosLexicon PosLexicon::from_entries(const std::vector<std::pair<std::string, Pos>>& entries) {
    PosLexicon lex;
    for (const auto& [token, pos] : entries) lex.tags_[lowercase_ascii(token)] = pos;
    return lex;
}

Pos PosLexicon::tag_of(const std::string& token) const {
    auto it = tags_.find(token);
    return it == tags_.end() ? Pos::Other : it->second;
}

void ConstraintConfig::validate() const {
    if (min_word_cos < -1.0 || min_word_cos > 1.0)
        throw ConfigError("min_word_cos must be in [-1, 1]");
    if (min_sentence_cos < -1.0 || min_sentence_cos > 1.0)
        throw ConfigError("min_sentence_cos must be in [-1, 1]");
    if (!(max_ratio > 0.0) || max_ratio > 1.0)
        throw ConfigError("max_ratio must be in (0, 1]");
}

bool check_repeat(const std::set<int>& perturbed, int index) {
    return perturbed.count(index) == 0;
}

bool check_stopword(const Word& word, const StopwordSet& stopwords) {
    return !stopwords.contains(word.surface);
}

bool check_pos(const Word& orig, Pos cand_pos) {
    return orig.pos == cand_pos;    // OTHER only matches OTHER
}

bool check_word_similarity(const std::string& orig, const std::string& cand,
                           const EmbeddingTable& table, double min_word_cos) {
    return cosine(table.vector_of(orig), table.vector_of(cand)) >= min_word_cos;
}

bool check_sentence_similarity(const Sentence& seed, const Sentence& cand,
                               const EmbeddingTable& table, double min_sentence_cos) {
    const SentenceVector a = sentence_embedding(seed, table);
    const SentenceVector b = sentence_embedding(cand, table);
    return cosine(a.values, b.values) >= min_sentence_cos;
}

bool check_label_preserved(const ToyClassifier& model, const Prediction& seed_pred,
                           const Sentence& cand) {
    return model.predict(cand).label == seed_pred.label;
}

} // namespace ef
