#include "ef/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
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

bool parse_long(const std::string& s, long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return false;
    out = v;
    return true;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) return false;
    out = v;
    return true;
}

std::string at_line(const std::string& path, std::size_t line_no) {
    return path + ":" + std::to_string(line_no);
}

} // namespace

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("cosine: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (na < 1e-12 || nb < 1e-12) return 0.0;
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

void EmbeddingTable::insert(const std::string& token, const std::vector<double>& values,
                            const std::string& where) {
    if (index_.count(token)) throw ParseError(where + ": duplicate token '" + token + "'");
    index_.emplace(token, tokens_.size());
    tokens_.push_back(token);
    data_.insert(data_.end(), values.begin(), values.end());
    double n = 0.0;
    for (double v : values) n += v * v;
    norms_.push_back(std::sqrt(n));
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embedding table: " + path);

    EmbeddingTable table;
    std::string line;
    std::size_t line_no = 0;
    long declared_count = -1;
    bool saw_content = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::vector<std::string> fields;
        std::string f;
        while (ss >> f) fields.push_back(f);
        if (fields.empty()) continue;

        if (!saw_content) {
            saw_content = true;
            // "<count> <dim>" header: exactly two integer fields.
            long c = 0, d = 0;
            if (fields.size() == 2 && parse_long(fields[0], c) && parse_long(fields[1], d)) {
                if (c <= 0 || d <= 0)
                    throw ParseError(at_line(path, line_no) + ": non-positive header values");
                declared_count = c;
                table.dim_ = static_cast<int>(d);
                continue;
            }
        }

        if (fields.size() < 2)
            throw ParseError(at_line(path, line_no) + ": expected token and values");
        std::string token = lowercase_ascii(fields[0]);
        std::vector<double> values;
        values.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            double v = 0.0;
            if (!parse_double(fields[i], v))
                throw ParseError(at_line(path, line_no) + ": bad value '" + fields[i] + "'");
            values.push_back(v);
        }
        if (table.dim_ == 0) table.dim_ = static_cast<int>(values.size());
        if (static_cast<int>(values.size()) != table.dim_)
            throw ParseError(at_line(path, line_no) + ": expected " + std::to_string(table.dim_) +
                             " values, got " + std::to_string(values.size()));
        table.insert(token, values, at_line(path, line_no));
    }

    if (table.size() == 0) throw ParseError(path + ": no entries");
    if (declared_count >= 0 && static_cast<long>(table.size()) != declared_count)
        throw ParseError(path + ": header declares " + std::to_string(declared_count) +
                         " entries, file has " + std::to_string(table.size()));
    return table;
}

EmbeddingTable EmbeddingTable::from_entries(
    const std::vector<std::pair<std::string, std::vector<double>>>& entries) {
    if (entries.empty()) throw ParseError("from_entries: no entries");
    EmbeddingTable table;
    table.dim_ = static_cast<int>(entries.front().second.size());
    for (const auto& [token, values] : entries) {
        if (static_cast<int>(values.size()) != table.dim_)
            throw DimensionMismatch("from_entries: ragged entry '" + token + "'");
        table.insert(lowercase_ascii(token), values, "from_entries");
    }
    return table;
}

std::span<const double> EmbeddingTable::vector_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) throw UnknownWord("no embedding for '" + token + "'");
    return vector_at(it->second);
}

std::vector<std::pair<std::string, double>> EmbeddingTable::nearest_neighbors(
    const std::string& token, int k) const {
    if (k <= 0) throw Error("nearest_neighbors: k must be positive");
    auto it = index_.find(token);
    if (it == index_.end()) throw UnknownWord("no embedding for '" + token + "'");
    const std::size_t q = it->second;
    const double* qv = data_.data() + q * dim_;

    std::vector<std::pair<std::string, double>> sims;
    sims.reserve(tokens_.size() > 0 ? tokens_.size() - 1 : 0);
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (i == q) continue;
        double sim = 0.0;
        if (norms_[q] >= 1e-12 && norms_[i] >= 1e-12) {
            const double* v = data_.data() + i * dim_;
            double dot = 0.0;
            for (int d = 0; d < dim_; ++d) dot += qv[d] * v[d];
            sim = std::clamp(dot / (norms_[q] * norms_[i]), -1.0, 1.0);
        }
        sims.emplace_back(tokens_[i], sim);
    }
    // Full sort before truncation keeps the result independent of scan order.
    std::sort(sims.begin(), sims.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (sims.size() > static_cast<std::size_t>(k)) sims.resize(static_cast<std::size_t>(k));
    return sims;
}

SentenceVector sentence_embedding(const Sentence& sentence, const EmbeddingTable& table) {
    std::vector<double> acc(static_cast<std::size_t>(table.dim()), 0.0);
    int in_vocab = 0;
    for (const Word& w : sentence.words) {
        if (!table.contains(w.surface)) continue;
        auto v = table.vector_of(w.surface);
        for (int d = 0; d < table.dim(); ++d) acc[static_cast<std::size_t>(d)] += v[d];
        ++in_vocab;
    }
    if (in_vocab == 0) throw AllWordsOOV("sentence_embedding: every word is out of vocabulary");
    for (double& x : acc) x /= in_vocab;
    return SentenceVector{std::move(acc)};
}

} // namespace ef
