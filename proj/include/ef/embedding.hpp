#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ef/text.hpp"

namespace ef {

// Cosine similarity in [-1, 1]. Either vector with norm below 1e-12 gives 0.
double cosine(std::span<const double> a, std::span<const double> b);

struct SentenceVector {
    std::vector<double> values;
};

// In-memory word-vector table. File format is one entry per line,
// "<token> <f1> ... <fD>", with an optional "<count> <dim>" integer header.
// Tokens are lowercased on load; duplicates and ragged rows are ParseErrors.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    static EmbeddingTable load(const std::string& path);
    static EmbeddingTable from_entries(
        const std::vector<std::pair<std::string, std::vector<double>>>& entries);

    int dim() const { return dim_; }
    std::size_t size() const { return tokens_.size(); }
    bool contains(const std::string& token) const { return index_.count(token) != 0; }

    std::span<const double> vector_of(const std::string& token) const; // UnknownWord
    const std::string& token_at(std::size_t i) const { return tokens_[i]; }
    std::span<const double> vector_at(std::size_t i) const {
        return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }

    // Brute-force scan over the whole table, descending cosine, the query
    // itself excluded. Exact similarity ties break lexicographically so the
    // ordering is reproducible no matter how the scan is executed.
    std::vector<std::pair<std::string, double>> nearest_neighbors(const std::string& token,
                                                                  int k) const;

private:
    int dim_ = 0;
    std::vector<std::string> tokens_;
    std::vector<double> data_;      // row-major size() x dim()
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t> index_;

    void insert(const std::string& token, const std::vector<double>& values,
                const std::string& where);
};

// Mean of the in-vocabulary word vectors; OOV words are skipped.
// Throws AllWordsOOV when no word of the sentence is in the table.
SentenceVector sentence_embedding(const Sentence& sentence, const EmbeddingTable& table);

} // namespace ef
