#pragma once

#include <set>
#include <string>
#include <unordered_map>

#include "ef/embedding.hpp"
#include "ef/model.hpp"
#include "ef/text.hpp"

namespace ef {

// Token -> coarse tag lookup. Tokens absent from the lexicon tag as OTHER.
class PosLexicon {
public:
    PosLexicon() = default;

    // One "<token> <TAG>" pair per line, TAG in {NOUN, VERB, ADJ, ADV, OTHER}.
    static PosLexicon load(const std::string& path);
    static PosLexicon from_entries(const std::vector<std::pair<std::string, Pos>>& entries);

    Pos tag_of(const std::string& token) const;
    std::size_t size() const { return tags_.size(); }

private:
    std::unordered_map<std::string, Pos> tags_;
};

struct ConstraintConfig {
    double min_word_cos = 0.5;      // inclusive floor on word-vector cosine
    double min_sentence_cos = 0.5;  // inclusive floor on sentence-vector cosine
    bool enforce_pos = true;
    double max_ratio = 0.5;         // perturbation budget as a fraction of length

    void validate() const;          // ConfigError
};

// Individual admissibility checks. The search applies them in this order:
// repeat, stopword, POS, word similarity, sentence similarity, label.
bool check_repeat(const std::set<int>& perturbed, int index);
bool check_stopword(const Word& word, const StopwordSet& stopwords);
bool check_pos(const Word& orig, Pos cand_pos);
bool check_word_similarity(const std::string& orig, const std::string& cand,
                           const EmbeddingTable& table, double min_word_cos); // UnknownWord
bool check_sentence_similarity(const Sentence& seed, const Sentence& cand,
                               const EmbeddingTable& table,
                               double min_sentence_cos); // AllWordsOOV
bool check_label_preserved(const ToyClassifier& model, const Prediction& seed_pred,
                           const Sentence& cand);

} // namespace ef
