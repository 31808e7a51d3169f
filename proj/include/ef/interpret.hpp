#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ef/model.hpp"
#include "ef/text.hpp"

namespace ef {

enum class AttributionMethod { IG, LIME, LOO };

const char* to_string(AttributionMethod method);
std::optional<AttributionMethod> method_from_string(std::string_view name);

struct Interpretation {
    std::vector<double> scores;     // one per word, sentence order
    AttributionMethod method = AttributionMethod::IG;
    int target_class = 0;
    // LIME only: the surrogate fit had no slope at all, so scores were left
    // unnormalized (all zero) instead of being scaled to unit norm.
    bool raw_all_zero = false;
};

// Path integral of d logit_target / d e_t from the pad baseline to the input,
// right-endpoint Riemann sum over `steps` points, summed across dimensions.
// Exact for this model: the gradient is constant along the path.
Interpretation integrated_gradients(const ToyClassifier& model, const Sentence& s,
                                    int steps, int target_class);

// Local linear surrogate on word-keep masks. n_samples masks (the all-ones
// mask is always sample 0, the rest keep each word with p = 1/2), masked
// words dropped from the pooled mean, weighted ridge fit (lambda = 1) with
// kernel exp(-(1 - cos(mask, ones))^2 / 0.25^2), coefficients L2-normalized.
// The explained class is the model's own label on the unmasked sentence.
Interpretation lime(const ToyClassifier& model, const Sentence& s, int n_samples,
                    std::uint64_t seed);

// Word positions ordered by leave-one-out importance on the predicted label:
// p(label | all words) - p(label | word t removed), descending, ties by
// lower index. Needs at least 2 words.
std::vector<int> loo_importance(const ToyClassifier& model, const Sentence& s);

// One-line JSON form: {"method": .., "target_class": .., "scores": [..]}.
std::string interpretation_to_json(const Interpretation& interp);
Interpretation interpretation_from_json(const std::string& line);

} // namespace ef
