#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ef {

enum class Pos { Noun, Verb, Adj, Adv, Other };

const char* to_string(Pos pos);
std::optional<Pos> pos_from_string(std::string_view tag);

struct Word {
    std::string surface;        // lowercase form
    Pos pos = Pos::Other;
    bool is_stopword = false;
    bool perturbed = false;
};

struct Sentence {
    std::vector<Word> words;
    int label = 0;              // gold class index, >= 0

    std::size_t size() const { return words.size(); }
    std::string text() const;   // surfaces joined by single spaces
};

struct SubwordPiece {
    std::string text;           // raw characters, continuation marker not included
    bool is_continuation = false;
    double score = 0.0;
};

enum class MergeMode { Average, AbsMax };

// Lowercases, splits on whitespace, strips leading/trailing punctuation.
// Internal apostrophes and hyphens survive. Throws EmptyInput when nothing is left.
std::vector<Word> tokenize(std::string_view text);

// Greedy longest-prefix split against the vocabulary, single-character
// fallback when no entry matches. Pieces after the first are continuations.
std::vector<SubwordPiece> split_subwords(const std::string& word,
                                         const std::unordered_set<std::string>& vocab);

// Display form of a piece: continuations carry the fixed "##" marker.
std::string piece_display(const SubwordPiece& piece);

// Collapses per-piece scores back to one score per word group. A group is a
// head piece plus its continuations; a continuation with no head is EmptyGroup.
std::vector<double> merge_scores(const std::vector<SubwordPiece>& pieces, MergeMode mode);

class StopwordSet {
public:
    StopwordSet() = default;

    // One token per line; '#' lines are comments, blank lines ignored.
    static StopwordSet load(const std::string& path);
    static StopwordSet from_words(const std::vector<std::string>& words);

    bool contains(const std::string& token) const { return words_.count(token) != 0; }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

} // namespace ef
