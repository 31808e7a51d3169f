#include "ef/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>

#include <json.hpp>

#include "ef/errors.hpp"
#include "ef/rng.hpp"

namespace ef {

using nlohmann::json;
namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    if (dataset_path.empty() || embeddings_path.empty() || model_checkpoint_path.empty() ||
        pos_lexicon_path.empty() || stopword_path.empty())
        throw ConfigError("all input paths are required");
    if (output_dir.empty()) throw ConfigError("output_dir is required");
    if (interpreter != AttributionMethod::IG && interpreter != AttributionMethod::LIME)
        throw ConfigError("interpreter must be ig or lime");
    if (k_neighbors < 1) throw ConfigError("k_neighbors must be positive");
    if (ig_steps < 1) throw ConfigError("ig_steps must be positive");
    if (lime_samples < 1) throw ConfigError("lime_samples must be positive");
    if (max_sentences < 1) throw ConfigError("max_sentences must be positive");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    ConstraintConfig{min_word_cos, min_sentence_cos, true, max_ratio}.validate();
}

std::vector<Sentence> ingest(const std::string& path, int max_sentences) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset: " + path);

    std::vector<Sentence> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (static_cast<int>(out.size()) >= max_sentences) break;

        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception&) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": invalid JSON");
        }
        if (!j.is_object() || !j.contains("text") || !j["text"].is_string() ||
            !j.contains("label") || !j["label"].is_number_integer())
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected {\"text\": string, \"label\": int}");
        const int label = j["label"].get<int>();
        if (label < 0)
            throw ParseError(path + ":" + std::to_string(line_no) + ": negative label");

        Sentence s;
        try {
            s.words = tokenize(j["text"].get<std::string>());
        } catch (const EmptyInput&) {
            continue;   // nothing tokenizable, same fate as a too-short sentence
        }
        if (s.words.size() <= 2) continue;
        s.label = label;
        out.push_back(std::move(s));
    }
    if (out.empty()) throw EmptyCorpus(path + ": no usable sentences");
    return out;
}

void annotate(Sentence& sentence, const PosLexicon& lexicon, const StopwordSet& stopwords) {
    for (Word& w : sentence.words) {
        w.pos = lexicon.tag_of(w.surface);
        w.is_stopword = stopwords.contains(w.surface);
    }
}

namespace {

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["dataset"] = c.dataset_path;
    j["embeddings"] = c.embeddings_path;
    j["model"] = c.model_checkpoint_path;
    j["pos_lexicon"] = c.pos_lexicon_path;
    j["stopwords"] = c.stopword_path;
    j["output_dir"] = c.output_dir;
    j["interpreter"] = to_string(c.interpreter);
    j["objective"] = to_string(c.objective);
    j["k_neighbors"] = c.k_neighbors;
    j["ig_steps"] = c.ig_steps;
    j["lime_samples"] = c.lime_samples;
    j["min_word_cos"] = c.min_word_cos;
    j["min_sentence_cos"] = c.min_sentence_cos;
    j["max_ratio"] = c.max_ratio;
    j["rng_seed"] = c.rng_seed;
    j["max_sentences"] = c.max_sentences;
    j["workers"] = c.workers;
    j["skip_misclassified"] = c.skip_misclassified;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.dataset_path = j.at("dataset").get<std::string>();
    c.embeddings_path = j.at("embeddings").get<std::string>();
    c.model_checkpoint_path = j.at("model").get<std::string>();
    c.pos_lexicon_path = j.at("pos_lexicon").get<std::string>();
    c.stopword_path = j.at("stopwords").get<std::string>();
    c.output_dir = j.at("output_dir").get<std::string>();
    if (auto m = method_from_string(j.at("interpreter").get<std::string>())) c.interpreter = *m;
    if (auto o = objective_from_string(j.at("objective").get<std::string>())) c.objective = *o;
    c.k_neighbors = j.at("k_neighbors").get<int>();
    c.ig_steps = j.at("ig_steps").get<int>();
    c.lime_samples = j.at("lime_samples").get<int>();
    c.min_word_cos = j.at("min_word_cos").get<double>();
    c.min_sentence_cos = j.at("min_sentence_cos").get<double>();
    c.max_ratio = j.at("max_ratio").get<double>();
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    c.max_sentences = j.at("max_sentences").get<int>();
    c.workers = j.value("workers", 0);
    c.skip_misclassified = j.value("skip_misclassified", false);
    return c;
}

json bucket_row_json(const BucketStats& row, int j, int n_buckets) {
    json out;
    out["bucket"] = BucketTable::bucket_label(j, n_buckets);
    out["count"] = row.count;
    if (row.count > 0) {
        out["rank_correlation_mean"] = row.rank_corr_mean;
        out["rank_correlation_std"] = row.rank_corr_std;
        out["topk_intersection_mean"] = row.topk_mean;
        out["topk_intersection_std"] = row.topk_std;
    } else {
        out["rank_correlation_mean"] = nullptr;
        out["rank_correlation_std"] = nullptr;
        out["topk_intersection_mean"] = nullptr;
        out["topk_intersection_std"] = nullptr;
    }
    return out;
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void write_buckets_csv(const BucketTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "bucket,count,rank_correlation_mean,rank_correlation_std,"
           "topk_intersection_mean,topk_intersection_std\n";
    const int n = static_cast<int>(table.rows.size());
    for (int j = 0; j < n; ++j) {
        const BucketStats& row = table.rows[static_cast<std::size_t>(j)];
        out << BucketTable::bucket_label(j, n) << ',' << row.count << ',';
        if (row.count > 0) {
            out << format_fixed(row.rank_corr_mean) << ',' << format_fixed(row.rank_corr_std)
                << ',' << format_fixed(row.topk_mean) << ',' << format_fixed(row.topk_std);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
}

json candidate_line_json(const AttackResult& r) {
    json levels = json::array();
    const std::size_t n = r.seed.words.size();
    for (const Candidate& c : r.per_level) {
        json lv;
        lv["level"] = c.level;
        lv["ratio"] = double(c.level) / double(n);
        lv["text"] = c.sentence.text();
        lv["perturbed_indices"] = c.perturbed_indices;
        lv["divergence"] = c.divergence;
        lv["rank_correlation"] =
            rank_correlation(r.seed_interpretation.scores, c.interpretation.scores);
        lv["topk_intersection"] =
            topk_intersection(r.seed_interpretation.scores, c.interpretation.scores, 0.5);
        levels.push_back(std::move(lv));
    }
    json line;
    line["seed_text"] = r.seed.text();
    line["seed_label"] = r.seed.label;
    line["predicted_label"] = r.seed_prediction.label;
    line["objective"] = to_string(r.objective);
    line["levels"] = std::move(levels);
    return line;
}

} // namespace

Report run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    auto table = std::make_shared<EmbeddingTable>(EmbeddingTable::load(config.embeddings_path));
    const StopwordSet stopwords = StopwordSet::load(config.stopword_path);
    const PosLexicon lexicon = PosLexicon::load(config.pos_lexicon_path);
    const ToyClassifier model = ToyClassifier::load(config.model_checkpoint_path, table);

    std::vector<Sentence> corpus = ingest(config.dataset_path, config.max_sentences);
    for (Sentence& s : corpus) annotate(s, lexicon, stopwords);
    if (config.skip_misclassified) {
        std::vector<Sentence> kept;
        kept.reserve(corpus.size());
        for (Sentence& s : corpus)
            if (model.predict(s).label == s.label) kept.push_back(std::move(s));
        if (kept.empty()) throw EmptyCorpus("every seed is misclassified");
        corpus = std::move(kept);
    }

    AttackConfig base;
    base.objective = config.objective;
    base.interpreter = config.interpreter;
    base.ig_steps = config.ig_steps;
    base.lime_samples = config.lime_samples;
    base.k_neighbors = config.k_neighbors;
    base.constraints =
        ConstraintConfig{config.min_word_cos, config.min_sentence_cos, true, config.max_ratio};

    const std::size_t n = corpus.size();
    std::vector<AttackResult> results(n);
    std::vector<SeedOutcome> outcomes(n);

    // Seed-level pool. Each seed's RNG depends only on (rng_seed, index) and
    // every slot is written by exactly one worker, so the schedule is
    // irrelevant to the results.
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            AttackConfig acfg = base;
            acfg.rng_seed = derive_seed(config.rng_seed, i);
            SeedOutcome& oc = outcomes[i];
            oc.index = static_cast<int>(i);
            oc.text = corpus[i].text();
            oc.label = corpus[i].label;
            try {
                results[i] = explain_fooler(corpus[i], model, *table, stopwords, lexicon, acfg);
                oc.predicted_label = results[i].seed_prediction.label;
                oc.levels = static_cast<int>(results[i].per_level.size());
                oc.status = results[i].per_level.empty() ? "no_candidates" : "ok";
            } catch (const std::exception& e) {
                results[i] = AttackResult{};
                results[i].seed = corpus[i];
                results[i].objective = config.objective;
                results[i].seed_prediction = model.predict(corpus[i]);
                oc.predicted_label = results[i].seed_prediction.label;
                oc.status = "error";
                oc.error = e.what();
            }
        }
    };

    int workers = config.workers > 0
                      ? config.workers
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(n));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    Report report;
    report.config = config;
    report.seeds = std::move(outcomes);
    report.buckets = bucketize(results, 5);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(config.output_dir);
    const fs::path dir(config.output_dir);

    {
        std::ofstream out(dir / "candidates.jsonl", std::ios::binary);
        if (!out) throw IoError("cannot write candidates.jsonl");
        for (const AttackResult& r : results) out << candidate_line_json(r).dump() << '\n';
    }
    write_buckets_csv(report.buckets, (dir / "buckets.csv").string());
    {
        json j;
        j["config"] = config_to_json(config);
        json buckets = json::array();
        const int rows = static_cast<int>(report.buckets.rows.size());
        for (int b = 0; b < rows; ++b)
            buckets.push_back(bucket_row_json(report.buckets.rows[static_cast<std::size_t>(b)], b, rows));
        j["buckets"] = std::move(buckets);
        json seeds = json::array();
        for (const SeedOutcome& oc : report.seeds) {
            json sj;
            sj["index"] = oc.index;
            sj["text"] = oc.text;
            sj["label"] = oc.label;
            sj["predicted_label"] = oc.predicted_label;
            sj["status"] = oc.status;
            sj["levels"] = oc.levels;
            if (!oc.error.empty()) sj["error"] = oc.error;
            seeds.push_back(std::move(sj));
        }
        j["seeds"] = std::move(seeds);
        j["timing"] = json{{"wall_seconds", report.wall_seconds}};
        std::ofstream out(dir / "report.json", std::ios::binary);
        if (!out) throw IoError("cannot write report.json");
        out << j.dump(2) << '\n';
    }
    return report;
}

Report Report::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open report: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        Report report;
        report.config = config_from_json(j.at("config"));
        for (const auto& sj : j.at("seeds")) {
            SeedOutcome oc;
            oc.index = sj.at("index").get<int>();
            oc.text = sj.at("text").get<std::string>();
            oc.label = sj.at("label").get<int>();
            oc.predicted_label = sj.at("predicted_label").get<int>();
            oc.status = sj.at("status").get<std::string>();
            oc.levels = sj.at("levels").get<int>();
            oc.error = sj.value("error", std::string{});
            report.seeds.push_back(std::move(oc));
        }
        for (const auto& bj : j.at("buckets")) {
            BucketStats row;
            row.count = bj.at("count").get<int>();
            if (row.count > 0) {
                row.rank_corr_mean = bj.at("rank_correlation_mean").get<double>();
                row.rank_corr_std = bj.at("rank_correlation_std").get<double>();
                row.topk_mean = bj.at("topk_intersection_mean").get<double>();
                row.topk_std = bj.at("topk_intersection_std").get<double>();
            }
            report.buckets.rows.push_back(row);
        }
        report.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
        return report;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<BucketDelta> compare_arms(const Report& a, const Report& b) {
    if (a.buckets.rows.size() != b.buckets.rows.size())
        throw SchemeMismatch("compare_arms: different bucket schemes");
    if (a.config.dataset_path != b.config.dataset_path)
        throw SchemeMismatch("compare_arms: different corpora");
    if (a.seeds.size() != b.seeds.size())
        throw SchemeMismatch("compare_arms: different seed counts");

    std::vector<BucketDelta> out;
    const int rows = static_cast<int>(a.buckets.rows.size());
    for (int j = 0; j < rows; ++j) {
        const BucketStats& ra = a.buckets.rows[static_cast<std::size_t>(j)];
        const BucketStats& rb = b.buckets.rows[static_cast<std::size_t>(j)];
        BucketDelta d;
        d.bucket = BucketTable::bucket_label(j, rows);
        d.count_a = ra.count;
        d.count_b = rb.count;
        if (ra.count > 0 && rb.count > 0) {
            d.defined = true;
            d.mean_a = ra.rank_corr_mean;
            d.mean_b = rb.rank_corr_mean;
            d.delta = ra.rank_corr_mean - rb.rank_corr_mean;
        }
        out.push_back(std::move(d));
    }
    return out;
}

void write_comparison(const std::vector<BucketDelta>& deltas, const Report& a, const Report& b,
                      const std::string& out_path) {
    json j;
    j["dataset"] = a.config.dataset_path;
    j["arm_a"] = json{{"objective", to_string(a.config.objective)},
                      {"interpreter", to_string(a.config.interpreter)}};
    j["arm_b"] = json{{"objective", to_string(b.config.objective)},
                      {"interpreter", to_string(b.config.interpreter)}};
    json rows = json::array();
    for (const BucketDelta& d : deltas) {
        json r;
        r["bucket"] = d.bucket;
        r["count_a"] = d.count_a;
        r["count_b"] = d.count_b;
        if (d.defined) {
            r["mean_a"] = d.mean_a;
            r["mean_b"] = d.mean_b;
            r["delta"] = d.delta;
        } else {
            r["mean_a"] = nullptr;
            r["mean_b"] = nullptr;
            r["delta"] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    j["buckets"] = std::move(rows);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + out_path);
    out << j.dump(2) << '\n';
}

} // namespace ef
