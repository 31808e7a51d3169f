#include "ef/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ef/errors.hpp"

namespace ef {

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char* who) {
    if (a.size() != b.size())
        throw LengthMismatch(std::string(who) + ": " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
}

// Average ranks (1-based); exact-equal values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return a < b;
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && v[idx[j]] == v[idx[i]]) ++j;
        const double avg = (double(i + 1) + double(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[idx[t]] = avg;
        i = j;
    }
    return ranks;
}

} // namespace

const char* to_string(Objective objective) {
    switch (objective) {
        case Objective::DeltaLom: return "delta_lom";
        case Objective::L2: return "l2";
        case Objective::Random: return "random";
    }
    return "l2";
}

std::optional<Objective> objective_from_string(std::string_view name) {
    if (name == "delta_lom") return Objective::DeltaLom;
    if (name == "l2") return Objective::L2;
    if (name == "random") return Objective::Random;
    return std::nullopt;
}

double lom(std::span<const double> scores) {
    double mass = 0.0, weighted = 0.0;
    for (std::size_t t = 0; t < scores.size(); ++t) {
        mass += scores[t];
        weighted += scores[t] * double(t);
    }
    if (std::abs(mass) < 1e-9) throw ZeroMass("lom: attribution mass below 1e-9");
    return weighted / mass;
}

double delta_lom(std::span<const double> a, std::span<const double> b) {
    return std::abs(lom(a) - lom(b));
}

double l2_diff(std::span<const double> a, std::span<const double> b) {
    require_same_length(a, b, "l2_diff");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double rank_correlation(std::span<const double> a, std::span<const double> b) {
    require_same_length(a, b, "rank_correlation");
    if (a.size() < 2) throw TooShort("rank_correlation: need at least 2 scores");

    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const std::size_t n = ra.size();
    const double mean = double(n + 1) / 2.0;

    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va < 1e-12 || vb < 1e-12) return 0.0;  // constant vector: no ranking signal
    return std::max(0.0, cov / std::sqrt(va * vb));
}

double topk_intersection(std::span<const double> a, std::span<const double> b,
                         double fraction) {
    require_same_length(a, b, "topk_intersection");
    if (a.empty()) throw LengthMismatch("topk_intersection: empty vectors");
    const std::size_t n = a.size();
    // The 1e-9 nudge keeps e.g. 0.3 * 10 from flooring to 2.
    std::size_t k = static_cast<std::size_t>(std::floor(fraction * double(n) + 1e-9));
    k = std::clamp<std::size_t>(k, 1, n);

    auto topk = [k](std::span<const double> v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            const double ax = std::abs(v[x]), ay = std::abs(v[y]);
            if (ax != ay) return ax > ay;
            return x < y;
        });
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    };
    const auto ka = topk(a);
    const auto kb = topk(b);
    std::size_t common = 0;
    std::size_t i = 0, j = 0;
    while (i < ka.size() && j < kb.size()) {
        if (ka[i] == kb[j]) { ++common; ++i; ++j; }
        else if (ka[i] < kb[j]) ++i;
        else ++j;
    }
    return double(common) / double(k);
}

} // namespace ef
