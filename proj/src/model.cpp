#include "ef/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ef/errors.hpp"

namespace ef {

using nlohmann::json;

ToyClassifier::ToyClassifier(std::shared_ptr<const EmbeddingTable> table, int num_classes)
    : table_(std::move(table)), num_classes_(num_classes) {
    if (!table_) throw Error("ToyClassifier: null embedding table");
    if (num_classes_ < 2) throw ConfigError("ToyClassifier: need at least 2 classes");
    dim_ = table_->dim();
    W_.assign(static_cast<std::size_t>(num_classes_) * dim_, 0.0);
    b_.assign(static_cast<std::size_t>(num_classes_), 0.0);
    pad_.assign(static_cast<std::size_t>(dim_), 0.0);
}

std::span<const double> ToyClassifier::weights_row(int c) const {
    if (c < 0 || c >= num_classes_)
        throw ClassOutOfRange("weights_row: class " + std::to_string(c));
    return {W_.data() + static_cast<std::size_t>(c) * dim_, static_cast<std::size_t>(dim_)};
}

void ToyClassifier::set_weights(const std::vector<double>& w_row_major,
                                const std::vector<double>& b) {
    if (w_row_major.size() != static_cast<std::size_t>(num_classes_) * dim_ ||
        b.size() != static_cast<std::size_t>(num_classes_))
        throw DimensionMismatch("set_weights: shape mismatch");
    W_ = w_row_major;
    b_ = b;
}

void ToyClassifier::set_pad_vector(const std::vector<double>& pad) {
    if (pad.size() != static_cast<std::size_t>(dim_))
        throw DimensionMismatch("set_pad_vector: dimension mismatch");
    pad_ = pad;
}

std::vector<double> softmax(std::span<const double> logits) {
    const double mx = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - mx);
        sum += out[i];
    }
    for (double& p : out) p /= sum;
    return out;
}

std::vector<std::vector<double>> ToyClassifier::embed_sentence(const Sentence& s) const {
    std::vector<std::vector<double>> out;
    out.reserve(s.words.size());
    for (const Word& w : s.words) {
        if (table_->contains(w.surface)) {
            auto v = table_->vector_of(w.surface);
            out.emplace_back(v.begin(), v.end());
        } else {
            out.push_back(pad_);
        }
    }
    return out;
}

Prediction ToyClassifier::forward_pooled(std::span<const double> mean) const {
    if (static_cast<int>(mean.size()) != dim_)
        throw DimensionMismatch("forward_pooled: dimension mismatch");
    Prediction pred;
    pred.logits.resize(static_cast<std::size_t>(num_classes_));
    for (int c = 0; c < num_classes_; ++c) {
        const double* row = W_.data() + static_cast<std::size_t>(c) * dim_;
        double z = b_[static_cast<std::size_t>(c)];
        for (int d = 0; d < dim_; ++d) z += row[d] * mean[static_cast<std::size_t>(d)];
        pred.logits[static_cast<std::size_t>(c)] = z;
    }
    pred.probs = softmax(pred.logits);
    pred.label = static_cast<int>(
        std::max_element(pred.probs.begin(), pred.probs.end()) - pred.probs.begin());
    return pred;
}

Prediction ToyClassifier::forward(const std::vector<std::vector<double>>& embeddings) const {
    if (embeddings.empty()) throw EmptySentence("forward: no embeddings");
    std::vector<double> mean(static_cast<std::size_t>(dim_), 0.0);
    for (const auto& e : embeddings) {
        if (static_cast<int>(e.size()) != dim_)
            throw DimensionMismatch("forward: embedding dimension mismatch");
        for (int d = 0; d < dim_; ++d) mean[static_cast<std::size_t>(d)] += e[static_cast<std::size_t>(d)];
    }
    for (double& x : mean) x /= double(embeddings.size());
    return forward_pooled(mean);
}

Prediction ToyClassifier::predict(const Sentence& s) const {
    return forward(embed_sentence(s));
}

std::vector<std::vector<double>> ToyClassifier::grad_logit_wrt_embeddings(
    const std::vector<std::vector<double>>& embeddings, int target_class) const {
    if (embeddings.empty()) throw EmptySentence("grad_logit_wrt_embeddings: no embeddings");
    if (target_class < 0 || target_class >= num_classes_)
        throw ClassOutOfRange("grad_logit_wrt_embeddings: class " + std::to_string(target_class));
    std::vector<double> g(static_cast<std::size_t>(dim_));
    const double* row = W_.data() + static_cast<std::size_t>(target_class) * dim_;
    for (int d = 0; d < dim_; ++d) g[static_cast<std::size_t>(d)] = row[d] / double(embeddings.size());
    return std::vector<std::vector<double>>(embeddings.size(), g);
}

void ToyClassifier::save(const std::string& path, const std::string& embeddings_path) const {
    json j;
    j["dim"] = dim_;
    j["num_classes"] = num_classes_;
    json w_rows = json::array();
    for (int c = 0; c < num_classes_; ++c) {
        json row = json::array();
        for (int d = 0; d < dim_; ++d) row.push_back(W_[static_cast<std::size_t>(c) * dim_ + d]);
        w_rows.push_back(std::move(row));
    }
    j["W"] = std::move(w_rows);
    j["b"] = b_;
    j["pad_vector"] = pad_;
    j["embeddings_path"] = embeddings_path;

    std::ofstream out(path);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    out << j.dump(2) << '\n';
}

ToyClassifier ToyClassifier::load(const std::string& path,
                                  std::shared_ptr<const EmbeddingTable> table) {
    if (!table) throw Error("ToyClassifier::load: null embedding table");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    try {
        const int dim = j.at("dim").get<int>();
        const int num_classes = j.at("num_classes").get<int>();
        if (dim <= 0 || num_classes < 2) throw ParseError(path + ": bad dim/num_classes");
        if (dim != table->dim())
            throw ParseError(path + ": checkpoint dim " + std::to_string(dim) +
                             " does not match table dim " + std::to_string(table->dim()));

        ToyClassifier model(std::move(table), num_classes);
        const auto& w_rows = j.at("W");
        if (!w_rows.is_array() || static_cast<int>(w_rows.size()) != num_classes)
            throw ParseError(path + ": W must have num_classes rows");
        std::vector<double> W;
        W.reserve(static_cast<std::size_t>(num_classes) * dim);
        for (const auto& row : w_rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != dim)
                throw ParseError(path + ": W row of wrong length");
            for (const auto& v : row) W.push_back(v.get<double>());
        }
        std::vector<double> b = j.at("b").get<std::vector<double>>();
        std::vector<double> pad = j.at("pad_vector").get<std::vector<double>>();
        if (static_cast<int>(b.size()) != num_classes) throw ParseError(path + ": b of wrong length");
        if (static_cast<int>(pad.size()) != dim) throw ParseError(path + ": pad_vector of wrong length");
        model.set_weights(W, b);
        model.set_pad_vector(pad);
        model.embeddings_path_ = j.value("embeddings_path", std::string{});
        return model;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

ToyClassifier train(const ToyClassifier& init, const std::vector<Sentence>& corpus,
                    const TrainConfig& cfg, std::vector<double>* loss_history) {
    if (corpus.empty()) throw EmptyCorpus("train: empty corpus");
    if (cfg.epochs < 0) throw ConfigError("train: negative epoch count");
    for (const Sentence& s : corpus)
        if (s.label < 0 || s.label >= init.num_classes())
            throw ClassOutOfRange("train: label " + std::to_string(s.label) + " out of range");

    const int C = init.num_classes_;
    const int D = init.dim_;
    const std::size_t N = corpus.size();

    // Embeddings are frozen, so each sentence collapses to its mean up front.
    std::vector<std::vector<double>> means;
    means.reserve(N);
    for (const Sentence& s : corpus) {
        auto embs = init.embed_sentence(s);
        if (embs.empty()) throw EmptySentence("train: sentence with no words");
        std::vector<double> m(static_cast<std::size_t>(D), 0.0);
        for (const auto& e : embs)
            for (int d = 0; d < D; ++d) m[static_cast<std::size_t>(d)] += e[static_cast<std::size_t>(d)];
        for (double& x : m) x /= double(embs.size());
        means.push_back(std::move(m));
    }

    ToyClassifier model = init;
    std::vector<double> gW(static_cast<std::size_t>(C) * D), gb(static_cast<std::size_t>(C));

    auto batch_pass = [&](bool accumulate) {
        double loss = 0.0;
        if (accumulate) {
            std::fill(gW.begin(), gW.end(), 0.0);
            std::fill(gb.begin(), gb.end(), 0.0);
        }
        for (std::size_t i = 0; i < N; ++i) {
            Prediction pred = model.forward_pooled(means[i]);
            const int y = corpus[i].label;
            loss += -std::log(std::max(pred.probs[static_cast<std::size_t>(y)], 1e-300));
            if (accumulate) {
                for (int c = 0; c < C; ++c) {
                    const double delta =
                        pred.probs[static_cast<std::size_t>(c)] - (c == y ? 1.0 : 0.0);
                    gb[static_cast<std::size_t>(c)] += delta;
                    double* gr = gW.data() + static_cast<std::size_t>(c) * D;
                    for (int d = 0; d < D; ++d) gr[d] += delta * means[i][static_cast<std::size_t>(d)];
                }
            }
        }
        return loss / double(N);
    };

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double loss = batch_pass(true);
        if (loss_history) loss_history->push_back(loss);
        const double step = cfg.learning_rate / double(N);
        for (std::size_t k = 0; k < model.W_.size(); ++k) model.W_[k] -= step * gW[k];
        for (std::size_t k = 0; k < model.b_.size(); ++k) model.b_[k] -= step * gb[k];
    }
    if (loss_history) loss_history->push_back(batch_pass(false));
    return model;
}

} // namespace ef
