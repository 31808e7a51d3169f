#include "ef/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ef/errors.hpp"
#include "ef/rng.hpp"

namespace ef {

namespace {

struct Survivor {
    Sentence sentence;
    std::string word;
    double word_sim = 0.0;      // cosine(original, replacement), first tie-break
    Interpretation interp;
    double divergence = 0.0;
};

Interpretation run_interpreter(const ToyClassifier& model, const Sentence& s,
                               const AttackConfig& cfg, int target, std::uint64_t lime_seed,
                               AttackStats& stats) {
    ++stats.interpreter_calls;
    if (cfg.interpreter == AttributionMethod::IG)
        return integrated_gradients(model, s, cfg.ig_steps, target);
    return lime(model, s, cfg.lime_samples, lime_seed);
}

} // namespace

void AttackConfig::validate() const {
    if (interpreter != AttributionMethod::IG && interpreter != AttributionMethod::LIME)
        throw ConfigError("interpreter must be ig or lime");
    if (ig_steps < 1) throw ConfigError("ig_steps must be positive");
    if (lime_samples < 1) throw ConfigError("lime_samples must be positive");
    if (k_neighbors < 1) throw ConfigError("k_neighbors must be positive");
    constraints.validate();
}

AttackResult explain_fooler(const Sentence& seed, const ToyClassifier& model,
                            const EmbeddingTable& table, const StopwordSet& stopwords,
                            const PosLexicon& lexicon, const AttackConfig& cfg) {
    cfg.validate();
    if (seed.words.size() < 3) throw EmptySentence("explain_fooler: seed shorter than 3 words");

    AttackResult result;
    result.seed = seed;
    result.objective = cfg.objective;
    result.seed_prediction = model.predict(seed);
    const int target = result.seed_prediction.label;

    // Independent deterministic streams: one seeds the surrogate sampler per
    // interpreter call, the other drives random-objective commits.
    const std::uint64_t lime_stream = derive_seed(cfg.rng_seed, 1);
    std::uint64_t lime_calls = 0;
    SplitMix64 select_rng(derive_seed(cfg.rng_seed, 2));

    result.seed_interpretation = run_interpreter(model, seed, cfg, target,
                                                 derive_seed(lime_stream, lime_calls++),
                                                 result.stats);
    const Interpretation& I0 = result.seed_interpretation;

    // Importance order is fixed once against the seed and never recomputed.
    std::vector<int> positions;
    for (int p : loo_importance(model, seed))
        if (!seed.words[static_cast<std::size_t>(p)].is_stopword) positions.push_back(p);

    const int budget = static_cast<int>(
        std::floor(cfg.constraints.max_ratio * double(seed.words.size()) + 1e-9));

    Sentence working = seed;
    std::set<int> perturbed;

    for (int pos : positions) {
        if (static_cast<int>(perturbed.size()) >= budget) break;
        const Word orig = working.words[static_cast<std::size_t>(pos)];
        if (!check_repeat(perturbed, pos)) continue;
        if (!check_stopword(orig, stopwords)) continue;
        if (!table.contains(orig.surface)) continue;    // no neighborhood to draw from

        std::vector<Survivor> pool;
        for (const auto& [cand_word, sim] : table.nearest_neighbors(orig.surface, cfg.k_neighbors)) {
            ++result.stats.candidates_evaluated;
            if (cfg.constraints.enforce_pos && !check_pos(orig, lexicon.tag_of(cand_word)))
                continue;
            if (!check_word_similarity(orig.surface, cand_word, table, cfg.constraints.min_word_cos))
                continue;

            Sentence cand = working;
            Word& cw = cand.words[static_cast<std::size_t>(pos)];
            cw.surface = cand_word;
            cw.pos = lexicon.tag_of(cand_word);
            cw.is_stopword = stopwords.contains(cand_word);
            cw.perturbed = true;

            if (!check_sentence_similarity(seed, cand, table, cfg.constraints.min_sentence_cos))
                continue;
            if (!check_label_preserved(model, result.seed_prediction, cand)) continue;
            ++result.stats.candidates_admissible;

            if (cfg.objective == Objective::Random) {
                // No divergence scoring: the commit is drawn uniformly below.
                pool.push_back(Survivor{std::move(cand), cand_word, sim, Interpretation{}, 0.0});
                continue;
            }
            Interpretation interp = run_interpreter(model, cand, cfg, target,
                                                    derive_seed(lime_stream, lime_calls++),
                                                    result.stats);
            double divergence = 0.0;
            try {
                divergence = cfg.objective == Objective::DeltaLom
                                 ? delta_lom(I0.scores, interp.scores)
                                 : l2_diff(I0.scores, interp.scores);
            } catch (const ZeroMass&) {
                continue;   // mass-free attribution, the center of mass is undefined
            }
            pool.push_back(Survivor{std::move(cand), cand_word, sim, std::move(interp), divergence});
        }
        if (pool.empty()) continue;     // nothing admissible here; the level is not consumed

        std::size_t pick = 0;
        if (cfg.objective == Objective::Random) {
            pick = static_cast<std::size_t>(select_rng.below(pool.size()));
            pool[pick].interp = run_interpreter(model, pool[pick].sentence, cfg, target,
                                                derive_seed(lime_stream, lime_calls++),
                                                result.stats);
        } else {
            for (std::size_t i = 1; i < pool.size(); ++i) {
                const Survivor& a = pool[i];
                const Survivor& best = pool[pick];
                const bool better =
                    a.divergence > best.divergence ||
                    (a.divergence == best.divergence &&
                     (a.word_sim > best.word_sim ||
                      (a.word_sim == best.word_sim && a.word < best.word)));
                if (better) pick = i;
            }
        }

        Survivor& chosen = pool[pick];
        working = std::move(chosen.sentence);
        perturbed.insert(pos);

        Candidate committed;
        committed.sentence = working;
        committed.perturbed_indices = perturbed;
        committed.interpretation = std::move(chosen.interp);
        committed.divergence = chosen.divergence;
        committed.prediction = model.predict(working);
        committed.level = static_cast<int>(perturbed.size());
        result.per_level.push_back(std::move(committed));
    }
    return result;
}

std::string BucketTable::bucket_label(int j, int n_buckets) {
    const double width = 0.5 / double(n_buckets);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g-%g", width * j, width * (j + 1));
    return buf;
}

BucketTable bucketize(const std::vector<AttackResult>& results, int n_buckets) {
    if (n_buckets < 1) throw ConfigError("bucketize: n_buckets must be positive");
    if (results.empty()) throw EmptyCorpus("bucketize: no attack results");

    std::vector<std::vector<double>> rc(static_cast<std::size_t>(n_buckets));
    std::vector<std::vector<double>> tk(static_cast<std::size_t>(n_buckets));
    for (const AttackResult& r : results) {
        const std::size_t n = r.seed.words.size();
        for (const Candidate& c : r.per_level) {
            // Integer arithmetic: bucket j holds ratios in [j*w, (j+1)*w) with
            // w = 0.5 / n_buckets; a ratio of exactly 0.5 (or beyond, for
            // max_ratio > 0.5) is clamped into the last bucket.
            std::size_t j = (std::size_t(2 * n_buckets) * std::size_t(c.level)) / n;
            j = std::min(j, std::size_t(n_buckets - 1));
            rc[j].push_back(rank_correlation(r.seed_interpretation.scores,
                                             c.interpretation.scores));
            tk[j].push_back(topk_intersection(r.seed_interpretation.scores,
                                              c.interpretation.scores, 0.5));
        }
    }

    auto mean_std = [](const std::vector<double>& xs) {
        double mean = 0.0, sd = 0.0;
        for (double x : xs) mean += x;
        mean /= double(xs.size());
        if (xs.size() > 1) {
            for (double x : xs) sd += (x - mean) * (x - mean);
            sd = std::sqrt(sd / double(xs.size() - 1));
        }
        return std::pair<double, double>(mean, sd);
    };

    BucketTable table;
    table.rows.resize(static_cast<std::size_t>(n_buckets));
    for (int j = 0; j < n_buckets; ++j) {
        auto& row = table.rows[static_cast<std::size_t>(j)];
        row.count = static_cast<int>(rc[static_cast<std::size_t>(j)].size());
        if (row.count > 0) {
            std::tie(row.rank_corr_mean, row.rank_corr_std) =
                mean_std(rc[static_cast<std::size_t>(j)]);
            std::tie(row.topk_mean, row.topk_std) = mean_std(tk[static_cast<std::size_t>(j)]);
        }
    }
    return table;
}

} // namespace ef
