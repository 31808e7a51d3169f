#include "ef/interpret.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "ef/errors.hpp"
#include "ef/rng.hpp"

namespace ef {

using nlohmann::json;

const char* to_string(AttributionMethod method) {
    switch (method) {
        case AttributionMethod::IG: return "ig";
        case AttributionMethod::LIME: return "lime";
        case AttributionMethod::LOO: return "loo";
    }
    return "ig";
}

std::optional<AttributionMethod> method_from_string(std::string_view name) {
    if (name == "ig") return AttributionMethod::IG;
    if (name == "lime") return AttributionMethod::LIME;
    if (name == "loo") return AttributionMethod::LOO;
    return std::nullopt;
}

Interpretation integrated_gradients(const ToyClassifier& model, const Sentence& s,
                                    int steps, int target_class) {
    if (s.words.empty()) throw EmptySentence("integrated_gradients: empty sentence");
    if (steps < 1) throw ConfigError("integrated_gradients: steps must be positive");
    if (target_class < 0 || target_class >= model.num_classes())
        throw ClassOutOfRange("integrated_gradients: class " + std::to_string(target_class));

    const auto embs = model.embed_sentence(s);
    const auto pad = model.pad_vector();
    const std::size_t n = embs.size();
    const int D = model.dim();

    std::vector<std::vector<double>> avg(n, std::vector<double>(static_cast<std::size_t>(D), 0.0));
    std::vector<std::vector<double>> point(n, std::vector<double>(static_cast<std::size_t>(D)));
    for (int step = 1; step <= steps; ++step) {
        const double a = double(step) / double(steps);
        for (std::size_t t = 0; t < n; ++t)
            for (int d = 0; d < D; ++d)
                point[t][static_cast<std::size_t>(d)] =
                    pad[static_cast<std::size_t>(d)] +
                    a * (embs[t][static_cast<std::size_t>(d)] - pad[static_cast<std::size_t>(d)]);
        const auto grads = model.grad_logit_wrt_embeddings(point, target_class);
        for (std::size_t t = 0; t < n; ++t)
            for (int d = 0; d < D; ++d)
                avg[t][static_cast<std::size_t>(d)] += grads[t][static_cast<std::size_t>(d)];
    }

    Interpretation out;
    out.method = AttributionMethod::IG;
    out.target_class = target_class;
    out.scores.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        double sc = 0.0;
        for (int d = 0; d < D; ++d)
            sc += (embs[t][static_cast<std::size_t>(d)] - pad[static_cast<std::size_t>(d)]) *
                  (avg[t][static_cast<std::size_t>(d)] / double(steps));
        out.scores[t] = sc;
    }
    return out;
}

namespace {

// Weighted ridge regression with an unpenalized intercept. Returns the n
// mask coefficients; the intercept is dropped. Solved by Gaussian
// elimination with partial pivoting; with lambda > 0 the system is positive
// definite whenever any sample carries weight.
std::vector<double> ridge_fit(const std::vector<std::vector<std::uint8_t>>& masks,
                              const std::vector<double>& y, const std::vector<double>& wts,
                              double lambda) {
    const std::size_t m = masks.size();
    const std::size_t n = masks[0].size();
    const std::size_t p = n + 1;    // intercept first

    std::vector<double> A(p * p, 0.0), rhs(p, 0.0), z(p);
    for (std::size_t i = 0; i < m; ++i) {
        z[0] = 1.0;
        for (std::size_t t = 0; t < n; ++t) z[t + 1] = double(masks[i][t]);
        const double w = wts[i];
        for (std::size_t r = 0; r < p; ++r) {
            if (z[r] == 0.0) continue;
            const double wz = w * z[r];
            rhs[r] += wz * y[i];
            double* row = A.data() + r * p;
            for (std::size_t c = 0; c < p; ++c) row[c] += wz * z[c];
        }
    }
    for (std::size_t d = 1; d < p; ++d) A[d * p + d] += lambda;

    for (std::size_t col = 0; col < p; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::abs(A[r * p + col]) > std::abs(A[piv * p + col])) piv = r;
        if (std::abs(A[piv * p + col]) < 1e-12)
            throw DegenerateFit("lime: singular surrogate system");
        if (piv != col) {
            for (std::size_t c = 0; c < p; ++c) std::swap(A[piv * p + c], A[col * p + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        const double pivot = A[col * p + col];
        for (std::size_t r = col + 1; r < p; ++r) {
            const double f = A[r * p + col] / pivot;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < p; ++c) A[r * p + c] -= f * A[col * p + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> beta(p, 0.0);
    for (std::size_t r = p; r-- > 0;) {
        double acc = rhs[r];
        for (std::size_t c = r + 1; c < p; ++c) acc -= A[r * p + c] * beta[c];
        beta[r] = acc / A[r * p + r];
    }
    return {beta.begin() + 1, beta.end()};
}

} // namespace

Interpretation lime(const ToyClassifier& model, const Sentence& s, int n_samples,
                    std::uint64_t seed) {
    const std::size_t n = s.words.size();
    if (n == 0) throw EmptySentence("lime: empty sentence");
    if (n_samples < 1) throw ConfigError("lime: n_samples must be positive");

    const auto embs = model.embed_sentence(s);
    const Prediction full = model.forward(embs);
    const int target = full.label;

    std::vector<std::vector<std::uint8_t>> masks;
    masks.reserve(static_cast<std::size_t>(n_samples));
    masks.emplace_back(n, std::uint8_t{1});
    SplitMix64 rng(seed);
    for (int i = 1; i < n_samples; ++i) {
        std::vector<std::uint8_t> mask(n);
        for (std::size_t t = 0; t < n; ++t) mask[t] = rng.coin() ? 1 : 0;
        masks.push_back(std::move(mask));
    }

    bool any_bit = false;
    for (const auto& mask : masks)
        for (std::uint8_t bit : mask) any_bit = any_bit || bit != 0;
    if (!any_bit) throw DegenerateFit("lime: rank-0 mask design");

    const int D = model.dim();
    const auto pad = model.pad_vector();
    std::vector<double> y(masks.size()), wts(masks.size());
    std::vector<double> mean(static_cast<std::size_t>(D));
    for (std::size_t i = 0; i < masks.size(); ++i) {
        std::fill(mean.begin(), mean.end(), 0.0);
        int kept = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (!masks[i][t]) continue;
            for (int d = 0; d < D; ++d)
                mean[static_cast<std::size_t>(d)] += embs[t][static_cast<std::size_t>(d)];
            ++kept;
        }
        if (kept == 0) {
            // Every word masked out: score the neutral baseline instead.
            std::copy(pad.begin(), pad.end(), mean.begin());
        } else {
            for (double& x : mean) x /= double(kept);
        }
        y[i] = model.forward_pooled(mean).probs[static_cast<std::size_t>(target)];
        const double cos_mask = kept == 0 ? 0.0 : std::sqrt(double(kept) / double(n));
        const double dev = 1.0 - cos_mask;
        wts[i] = std::exp(-(dev * dev) / (0.25 * 0.25));
    }

    Interpretation out;
    out.method = AttributionMethod::LIME;
    out.target_class = target;
    out.scores = ridge_fit(masks, y, wts, 1.0);

    double norm = 0.0;
    for (double c : out.scores) norm += c * c;
    norm = std::sqrt(norm);
    if (norm <= 1e-12) {
        out.raw_all_zero = true;
    } else {
        for (double& c : out.scores) c /= norm;
    }
    return out;
}

std::vector<int> loo_importance(const ToyClassifier& model, const Sentence& s) {
    const std::size_t n = s.words.size();
    if (n < 2) throw EmptySentence("loo_importance: need at least 2 words");

    const auto embs = model.embed_sentence(s);
    const Prediction full = model.forward(embs);
    const int label = full.label;
    const int D = model.dim();

    std::vector<double> sum(static_cast<std::size_t>(D), 0.0);
    for (const auto& e : embs)
        for (int d = 0; d < D; ++d) sum[static_cast<std::size_t>(d)] += e[static_cast<std::size_t>(d)];

    // mean-without-t computed from the shared sum so that two identical
    // words produce bitwise-identical importances (index breaks the tie).
    std::vector<double> imp(n);
    std::vector<double> mean(static_cast<std::size_t>(D));
    for (std::size_t t = 0; t < n; ++t) {
        for (int d = 0; d < D; ++d)
            mean[static_cast<std::size_t>(d)] =
                (sum[static_cast<std::size_t>(d)] - embs[t][static_cast<std::size_t>(d)]) /
                double(n - 1);
        const Prediction without = model.forward_pooled(mean);
        imp[t] = full.probs[static_cast<std::size_t>(label)] -
                 without.probs[static_cast<std::size_t>(label)];
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (imp[static_cast<std::size_t>(a)] != imp[static_cast<std::size_t>(b)])
            return imp[static_cast<std::size_t>(a)] > imp[static_cast<std::size_t>(b)];
        return a < b;
    });
    return order;
}

std::string interpretation_to_json(const Interpretation& interp) {
    json j;
    j["method"] = to_string(interp.method);
    j["target_class"] = interp.target_class;
    j["scores"] = interp.scores;
    if (interp.raw_all_zero) j["raw_all_zero"] = true;
    return j.dump();
}

Interpretation interpretation_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("interpretation_from_json: ") + e.what());
    }
    try {
        Interpretation out;
        const auto method = method_from_string(j.at("method").get<std::string>());
        if (!method) throw ParseError("interpretation_from_json: unknown method");
        out.method = *method;
        out.target_class = j.at("target_class").get<int>();
        out.scores = j.at("scores").get<std::vector<double>>();
        out.raw_all_zero = j.value("raw_all_zero", false);
        return out;
    } catch (const json::exception& e) {
        throw ParseError(std::string("interpretation_from_json: ") + e.what());
    }
}

} // namespace ef
