#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ef/embedding.hpp"
#include "ef/text.hpp"

namespace ef {

struct Prediction {
    std::vector<double> logits;
    std::vector<double> probs;
    int label = 0;              // argmax(probs), lowest index on ties
};

struct TrainConfig {
    int epochs = 200;
    double learning_rate = 0.1;
    // Recorded for provenance only: full-batch descent from a fixed start
    // draws nothing random, so the same inputs always give the same weights.
    std::uint64_t seed = 0;
};

// Mean-pooled linear classifier over frozen word embeddings:
// softmax(W * mean(e_1..e_n) + b). OOV words embed as pad_vector.
class ToyClassifier {
public:
    ToyClassifier() = default;
    // Zero-initialized weights and bias, zero pad vector.
    ToyClassifier(std::shared_ptr<const EmbeddingTable> table, int num_classes);

    int dim() const { return dim_; }
    int num_classes() const { return num_classes_; }
    const EmbeddingTable& table() const { return *table_; }
    std::shared_ptr<const EmbeddingTable> table_ptr() const { return table_; }

    std::span<const double> weights_row(int c) const;
    std::span<const double> bias() const { return b_; }
    std::span<const double> pad_vector() const { return pad_; }

    void set_weights(const std::vector<double>& w_row_major, const std::vector<double>& b);
    void set_pad_vector(const std::vector<double>& pad);

    // One embedding per word, in order; OOV words get pad_vector.
    std::vector<std::vector<double>> embed_sentence(const Sentence& s) const;

    Prediction forward(const std::vector<std::vector<double>>& embeddings) const; // EmptySentence
    Prediction forward_pooled(std::span<const double> mean) const;
    Prediction predict(const Sentence& s) const;

    // d logit_target / d e_t = W[target] / n for every position (mean pooling
    // makes the gradient identical across positions and independent of e).
    std::vector<std::vector<double>> grad_logit_wrt_embeddings(
        const std::vector<std::vector<double>>& embeddings, int target_class) const;

    // JSON checkpoint: dim, num_classes, W (row-major), b, pad_vector, and the
    // embedding-table path the model was trained against.
    void save(const std::string& path, const std::string& embeddings_path) const;
    static ToyClassifier load(const std::string& path,
                              std::shared_ptr<const EmbeddingTable> table);
    const std::string& trained_against() const { return embeddings_path_; }

    friend ToyClassifier train(const ToyClassifier& init, const std::vector<Sentence>& corpus,
                               const TrainConfig& cfg, std::vector<double>* loss_history);

private:
    std::shared_ptr<const EmbeddingTable> table_;
    int dim_ = 0;
    int num_classes_ = 0;
    std::vector<double> W_;     // num_classes x dim, row-major
    std::vector<double> b_;
    std::vector<double> pad_;
    std::string embeddings_path_;
};

std::vector<double> softmax(std::span<const double> logits);

// Full-batch gradient descent on mean cross-entropy, W and b only.
// With epochs = 0 the model comes back unchanged. loss_history, when given,
// receives the loss before each epoch's update plus the final loss.
ToyClassifier train(const ToyClassifier& init, const std::vector<Sentence>& corpus,
                    const TrainConfig& cfg, std::vector<double>* loss_history = nullptr);

} // namespace ef
