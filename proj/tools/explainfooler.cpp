// Command-line front end: attack a corpus, train the toy classifier, or
// compare two finished runs bucket by bucket.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ef/errors.hpp"
#include "ef/harness.hpp"
#include "ef/model.hpp"

namespace {

struct AttackArgs {
    ef::ExperimentConfig config;
    std::string interpreter = "ig";
    std::string objective = "l2";
};

struct TrainArgs {
    std::string dataset;
    std::string embeddings;
    std::string out;
    int classes = 2;
    int epochs = 200;
    double lr = 0.1;
    std::uint64_t seed = 0;
    int max_sentences = 100000;
};

struct CompareArgs {
    std::string report_a;
    std::string report_b;
    std::string out;
};

int run_attack(const AttackArgs& args) {
    ef::ExperimentConfig config = args.config;
    config.interpreter = *ef::method_from_string(args.interpreter);
    config.objective = *ef::objective_from_string(args.objective);

    const ef::Report report = ef::run_experiment(config);

    int ok = 0, no_candidates = 0, failed = 0;
    for (const auto& seed : report.seeds) {
        if (seed.status == "ok") ++ok;
        else if (seed.status == "no_candidates") ++no_candidates;
        else ++failed;
    }
    std::printf("seeds: %zu (ok %d, no_candidates %d, error %d)\n", report.seeds.size(), ok,
                no_candidates, failed);
    const int n_buckets = static_cast<int>(report.buckets.rows.size());
    std::printf("%-10s %6s %12s %12s\n", "bucket", "count", "rank_corr", "topk");
    for (int b = 0; b < n_buckets; ++b) {
        const auto& row = report.buckets.rows[b];
        const std::string label = ef::BucketTable::bucket_label(b, n_buckets);
        if (row.count == 0) {
            std::printf("%-10s %6d %12s %12s\n", label.c_str(), 0, "-", "-");
        } else {
            std::printf("%-10s %6d %12.4f %12.4f\n", label.c_str(), row.count,
                        row.rank_corr_mean, row.topk_mean);
        }
    }
    std::printf("wall_seconds: %.3f\n", report.wall_seconds);
    std::printf("wrote %s/{report.json,buckets.csv,candidates.jsonl}\n",
                config.output_dir.c_str());
    return 0;
}

int run_train(const TrainArgs& args) {
    auto table = std::make_shared<const ef::EmbeddingTable>(ef::EmbeddingTable::load(args.embeddings));
    const std::vector<ef::Sentence> corpus = ef::ingest(args.dataset, args.max_sentences);

    ef::ToyClassifier init(table, args.classes);
    ef::TrainConfig cfg;
    cfg.epochs = args.epochs;
    cfg.learning_rate = args.lr;
    cfg.seed = args.seed;
    std::vector<double> losses;
    const ef::ToyClassifier model = ef::train(init, corpus, cfg, &losses);

    int correct = 0;
    for (const auto& s : corpus) {
        if (model.predict(s).label == s.label) ++correct;
    }
    model.save(args.out, args.embeddings);
    std::printf("sentences: %zu\n", corpus.size());
    std::printf("loss: %.6f -> %.6f\n", losses.front(), losses.back());
    std::printf("train_accuracy: %.4f\n", double(correct) / double(corpus.size()));
    std::printf("wrote %s\n", args.out.c_str());
    return 0;
}

int run_compare(const CompareArgs& args) {
    const ef::Report a = ef::Report::load(args.report_a);
    const ef::Report b = ef::Report::load(args.report_b);
    const std::vector<ef::BucketDelta> deltas = ef::compare_arms(a, b);
    ef::write_comparison(deltas, a, b, args.out);

    std::printf("%-10s %8s %8s %12s %12s %12s\n", "bucket", "count_a", "count_b", "mean_a",
                "mean_b", "delta");
    for (const auto& d : deltas) {
        if (d.defined) {
            std::printf("%-10s %8d %8d %12.4f %12.4f %12.4f\n", d.bucket.c_str(), d.count_a,
                        d.count_b, d.mean_a, d.mean_b, d.delta);
        } else {
            std::printf("%-10s %8d %8d %12s %12s %12s\n", d.bucket.c_str(), d.count_a,
                        d.count_b, "-", "-", "-");
        }
    }
    std::printf("wrote %s\n", args.out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synonym-swap attacks on feature-attribution explanations"};
    app.require_subcommand(1);

    AttackArgs attack_args;
    CLI::App* attack = app.add_subcommand("attack", "Attack every sentence of a corpus");
    attack->add_option("--dataset", attack_args.config.dataset_path, "JSONL corpus")
        ->required()->envname("EF_DATASET");
    attack->add_option("--embeddings", attack_args.config.embeddings_path, "Word-vector table")
        ->required()->envname("EF_EMBEDDINGS");
    attack->add_option("--model", attack_args.config.model_checkpoint_path, "Model checkpoint")
        ->required()->envname("EF_MODEL");
    attack->add_option("--pos", attack_args.config.pos_lexicon_path, "POS lexicon")
        ->required()->envname("EF_POS");
    attack->add_option("--stopwords", attack_args.config.stopword_path, "Stop-word list")
        ->required()->envname("EF_STOPWORDS");
    attack->add_option("--interpreter", attack_args.interpreter, "Attribution method")
        ->check(CLI::IsMember({"ig", "lime"}))->capture_default_str()->envname("EF_INTERPRETER");
    attack->add_option("--objective", attack_args.objective, "Divergence to maximize")
        ->check(CLI::IsMember({"delta_lom", "l2", "random"}))
        ->capture_default_str()->envname("EF_OBJECTIVE");
    attack->add_option("--k-neighbors", attack_args.config.k_neighbors, "Neighbors per position")
        ->capture_default_str()->envname("EF_K_NEIGHBORS");
    attack->add_option("--ig-steps", attack_args.config.ig_steps, "Riemann steps")
        ->capture_default_str()->envname("EF_IG_STEPS");
    attack->add_option("--lime-samples", attack_args.config.lime_samples, "Surrogate samples")
        ->capture_default_str()->envname("EF_LIME_SAMPLES");
    attack->add_option("--min-word-cos", attack_args.config.min_word_cos,
                       "Word-cosine floor")->capture_default_str()->envname("EF_MIN_WORD_COS");
    attack->add_option("--min-sentence-cos", attack_args.config.min_sentence_cos,
                       "Sentence-cosine floor")
        ->capture_default_str()->envname("EF_MIN_SENTENCE_COS");
    attack->add_option("--max-ratio", attack_args.config.max_ratio, "Perturbation budget")
        ->capture_default_str()->envname("EF_MAX_RATIO");
    attack->add_option("--seed", attack_args.config.rng_seed, "RNG seed")
        ->capture_default_str()->envname("EF_SEED");
    attack->add_option("--max-sentences", attack_args.config.max_sentences, "Corpus cap")
        ->capture_default_str()->envname("EF_MAX_SENTENCES");
    attack->add_option("--workers", attack_args.config.workers, "Worker threads, 0 = hardware")
        ->capture_default_str()->envname("EF_WORKERS");
    attack->add_flag("--skip-misclassified", attack_args.config.skip_misclassified,
                     "Drop seeds the model already gets wrong")->envname("EF_SKIP_MISCLASSIFIED");
    attack->add_option("--out", attack_args.config.output_dir, "Output directory")
        ->required()->envname("EF_OUT");

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train-model", "Fit the mean-pooling classifier");
    train->add_option("--dataset", train_args.dataset, "JSONL corpus")
        ->required()->envname("EF_DATASET");
    train->add_option("--embeddings", train_args.embeddings, "Word-vector table")
        ->required()->envname("EF_EMBEDDINGS");
    train->add_option("--classes", train_args.classes, "Number of classes")
        ->capture_default_str()->envname("EF_CLASSES");
    train->add_option("--epochs", train_args.epochs, "Training epochs")
        ->capture_default_str()->envname("EF_EPOCHS");
    train->add_option("--lr", train_args.lr, "Learning rate")
        ->capture_default_str()->envname("EF_LR");
    train->add_option("--seed", train_args.seed, "Recorded in the checkpoint")
        ->capture_default_str()->envname("EF_SEED");
    train->add_option("--max-sentences", train_args.max_sentences, "Corpus cap")
        ->capture_default_str()->envname("EF_MAX_SENTENCES");
    train->add_option("--out", train_args.out, "Checkpoint path")
        ->required()->envname("EF_OUT");

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand("report-compare", "Bucket-wise delta of two runs");
    compare->add_option("report_a", compare_args.report_a, "First report.json")->required();
    compare->add_option("report_b", compare_args.report_b, "Second report.json")->required();
    compare->add_option("--out", compare_args.out, "Comparison JSON path")
        ->required()->envname("EF_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*attack) return run_attack(attack_args);
        if (*train) return run_train(train_args);
        if (*compare) return run_compare(compare_args);
    } catch (const ef::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ef::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
