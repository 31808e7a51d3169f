#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ef/constraints.hpp"
#include "ef/interpret.hpp"
#include "ef/metrics.hpp"

namespace ef {

// One committed perturbation level: the working sentence after `level` swaps.
struct Candidate {
    Sentence sentence;
    std::set<int> perturbed_indices;    // ascending; |set| == level
    Interpretation interpretation;
    double divergence = 0.0;            // 0 under the random objective
    Prediction prediction;
    int level = 0;
};

struct AttackStats {
    long interpreter_calls = 0;
    long candidates_evaluated = 0;      // neighbor candidates fed to the checks
    long candidates_admissible = 0;
};

struct AttackResult {
    Sentence seed;
    Prediction seed_prediction;
    Interpretation seed_interpretation;
    std::vector<Candidate> per_level;   // levels 1..m; empty when nothing was admissible
    Objective objective = Objective::L2;
    AttackStats stats;
};

struct AttackConfig {
    Objective objective = Objective::L2;
    AttributionMethod interpreter = AttributionMethod::IG;
    int ig_steps = 50;
    int lime_samples = 500;
    int k_neighbors = 50;
    ConstraintConfig constraints;
    std::uint64_t rng_seed = 0;

    void validate() const;              // ConfigError
};

// Greedy importance-ordered synonym-swap search. Positions are ranked once
// by leave-one-out importance (stop words dropped up front) and visited in
// that order; at each position the k-nearest neighbors of the current word
// are filtered through the full constraint conjunction against the working
// sentence, and the admissible swap with the largest interpretation
// divergence from the seed is committed (random objective: a uniform draw).
// Positions with no admissible swap are skipped without consuming a level.
// The budget is floor(max_ratio * length) committed swaps.
AttackResult explain_fooler(const Sentence& seed, const ToyClassifier& model,
                            const EmbeddingTable& table, const StopwordSet& stopwords,
                            const PosLexicon& lexicon, const AttackConfig& cfg);

struct BucketStats {
    int count = 0;
    double rank_corr_mean = 0.0, rank_corr_std = 0.0;
    double topk_mean = 0.0, topk_std = 0.0;
};

struct BucketTable {
    std::vector<BucketStats> rows;
    static std::string bucket_label(int j, int n_buckets);  // e.g. "0-0.1"
};

// Groups every emitted candidate by perturbation ratio level/length into
// n_buckets half-open buckets over [0, 0.5] (a ratio of exactly 0.5 lands in
// the last bucket) and reports mean/std of rank correlation and top-half
// intersection between the seed and candidate interpretations.
BucketTable bucketize(const std::vector<AttackResult>& results, int n_buckets = 5);

} // namespace ef
