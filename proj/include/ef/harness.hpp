#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ef/search.hpp"

namespace ef {

struct ExperimentConfig {
    std::string dataset_path;
    std::string embeddings_path;
    std::string model_checkpoint_path;
    std::string pos_lexicon_path;
    std::string stopword_path;
    std::string output_dir;

    AttributionMethod interpreter = AttributionMethod::IG;
    Objective objective = Objective::L2;
    int k_neighbors = 50;
    int ig_steps = 50;
    int lime_samples = 500;
    double min_word_cos = 0.5;
    double min_sentence_cos = 0.5;
    double max_ratio = 0.5;
    std::uint64_t rng_seed = 0;
    int max_sentences = 500;
    // Worker-pool width for seed-level parallelism; 0 picks the hardware
    // count. Results are identical for any width: each seed gets an RNG
    // derived from (rng_seed, seed index) and outputs are written in order.
    int workers = 0;
    bool skip_misclassified = false;

    void validate() const;  // ConfigError
};

struct SeedOutcome {
    int index = 0;
    std::string text;
    int label = 0;
    int predicted_label = 0;
    std::string status;     // "ok", "no_candidates", or "error"
    int levels = 0;
    std::string error;      // populated when status == "error"
};

struct Report {
    ExperimentConfig config;
    std::vector<SeedOutcome> seeds;
    BucketTable buckets;
    double wall_seconds = 0.0;

    static Report load(const std::string& path);    // ParseError
};

// JSONL corpus reader: {"text": string, "label": int >= 0} per line.
// Tokenizes, drops sentences of 2 words or fewer, keeps at most
// max_sentences survivors in file order.
std::vector<Sentence> ingest(const std::string& path, int max_sentences);

// Fills in POS tags and stop-word flags from the loaded resources.
void annotate(Sentence& sentence, const PosLexicon& lexicon, const StopwordSet& stopwords);

// Loads every resource, attacks each ingested seed, and writes report.json,
// buckets.csv and candidates.jsonl under config.output_dir. Per-seed failures
// are recorded in the report; they never abort the run. buckets.csv and
// candidates.jsonl are byte-stable for a fixed config and rng_seed.
Report run_experiment(const ExperimentConfig& config);

struct BucketDelta {
    std::string bucket;
    int count_a = 0, count_b = 0;
    bool defined = false;   // both buckets non-empty
    double mean_a = 0.0, mean_b = 0.0;
    double delta = 0.0;     // mean_a - mean_b (rank correlation)
};

// Per-bucket difference of mean rank correlation between two runs over the
// same corpus. Throws SchemeMismatch when the reports are not comparable.
std::vector<BucketDelta> compare_arms(const Report& a, const Report& b);

void write_comparison(const std::vector<BucketDelta>& deltas, const Report& a, const Report& b,
                      const std::string& out_path);

} // namespace ef
