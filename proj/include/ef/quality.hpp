#pragma once

#include <string>

namespace ef {

// Hook for external text-quality judges (perplexity under a language model,
// grammar-error counts, and the like). Those depend on models this toolkit
// deliberately does not bundle, so only the interface ships: implement it in
// client code and score candidate texts out of band. Nothing in the library
// calls it.
class QualityScorer {
public:
    virtual ~QualityScorer() = default;

    // Higher means better quality. Implementations define the scale.
    virtual double score(const std::string& text) const = 0;
};

} // namespace ef
