// Deterministic fixture generator: a 2k-word embedding table organized as
// synonym clusters on a sentiment axis, a POS lexicon, a stop-word list, and
// a small labeled review corpus built from templates. Every draw goes through
// one SplitMix64 stream, so a fixed seed always reproduces the same files.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ef/rng.hpp"

namespace {

using ef::SplitMix64;

constexpr int kDim = 24;
// Sentiment clusters span counter-leaning to emphatic synonyms on axis 0.
// Corpus sentences draw the mid-intensity members, which leaves both a much
// weaker and a somewhat stronger substitute inside the admissible cosine
// ball of every seed word. Neutral words jitter around zero; stop words sit
// almost exactly on it.
constexpr double kSentLow = -0.30;
constexpr double kSentHigh = 0.85;
constexpr double kSeedFloor = 0.33;     // corpus words: polarity * loading >= floor
constexpr double kSeedCeil = 0.70;      // ... and <= ceil
constexpr double kSentJitter = 0.03;
constexpr double kNeutJitter = 0.10;
constexpr double kStopJitter = 0.02;
constexpr double kSigmaDir = 0.35;
constexpr int kVocabTarget = 2000;
constexpr int kCorpusSize = 220;

enum class Cat { SentAdj, NeutAdj, Noun, SentVerb, NeutVerb, LinkVerb, SentAdv, DegAdv, Filler };

struct ClusterSpec {
    const char* words;      // space-separated
    const char* tag;        // lexicon tag
    Cat cat;
    int polarity;           // +1, 0, -1
};

// Hand-picked synonym groups. One POS and one polarity per group; every
// token must be globally unique across groups and the stop-word list.
const ClusterSpec kCurated[] = {
    {"good great fine excellent superb wonderful terrific fabulous", "ADJ", Cat::SentAdj, +1},
    {"enjoyable pleasant delightful agreeable satisfying pleasing", "ADJ", Cat::SentAdj, +1},
    {"amazing astonishing astounding incredible remarkable stunning", "ADJ", Cat::SentAdj, +1},
    {"beautiful gorgeous lovely elegant graceful", "ADJ", Cat::SentAdj, +1},
    {"funny hilarious amusing comical witty humorous", "ADJ", Cat::SentAdj, +1},
    {"smart clever intelligent bright brilliant sharp", "ADJ", Cat::SentAdj, +1},
    {"brave courageous bold fearless valiant daring", "ADJ", Cat::SentAdj, +1},
    {"calm peaceful serene tranquil relaxed", "ADJ", Cat::SentAdj, +1},
    {"happy glad cheerful joyful merry delighted upbeat", "ADJ", Cat::SentAdj, +1},
    {"fresh crisp clean pure", "ADJ", Cat::SentAdj, +1},
    {"strong sturdy robust solid durable", "ADJ", Cat::SentAdj, +1},
    {"tasty delicious flavorful savory appetizing yummy", "ADJ", Cat::SentAdj, +1},
    {"friendly kind warm welcoming cordial gracious", "ADJ", Cat::SentAdj, +1},
    {"skillful adept masterful expert proficient capable", "ADJ", Cat::SentAdj, +1},
    {"charming endearing captivating enchanting appealing", "ADJ", Cat::SentAdj, +1},
    {"vivid colorful vibrant lively radiant dazzling", "ADJ", Cat::SentAdj, +1},
    {"honest sincere truthful genuine earnest", "ADJ", Cat::SentAdj, +1},
    {"tidy neat orderly organized immaculate", "ADJ", Cat::SentAdj, +1},
    {"quick fast speedy swift rapid brisk", "ADJ", Cat::SentAdj, +1},
    {"memorable unforgettable striking notable impressive", "ADJ", Cat::SentAdj, +1},
    {"cozy snug comfortable homey inviting", "ADJ", Cat::SentAdj, +1},
    {"polished refined sleek stylish classy", "ADJ", Cat::SentAdj, +1},
    {"bad awful terrible horrible dreadful atrocious abysmal", "ADJ", Cat::SentAdj, -1},
    {"boring dull tedious monotonous dreary bland", "ADJ", Cat::SentAdj, -1},
    {"ugly hideous unsightly grotesque repulsive", "ADJ", Cat::SentAdj, -1},
    {"sad unhappy gloomy miserable sorrowful dejected", "ADJ", Cat::SentAdj, -1},
    {"angry furious irate enraged livid", "ADJ", Cat::SentAdj, -1},
    {"weak feeble frail flimsy fragile brittle", "ADJ", Cat::SentAdj, -1},
    {"dirty filthy grimy dingy squalid", "ADJ", Cat::SentAdj, -1},
    {"stupid foolish idiotic senseless mindless absurd", "ADJ", Cat::SentAdj, -1},
    {"rude impolite disrespectful insolent discourteous", "ADJ", Cat::SentAdj, -1},
    {"scary frightening terrifying creepy eerie sinister", "ADJ", Cat::SentAdj, -1},
    {"noisy loud deafening thunderous blaring", "ADJ", Cat::SentAdj, -1},
    {"slow sluggish lethargic plodding unhurried", "ADJ", Cat::SentAdj, -1},
    {"messy sloppy untidy chaotic cluttered", "ADJ", Cat::SentAdj, -1},
    {"fake phony bogus counterfeit fraudulent", "ADJ", Cat::SentAdj, -1},
    {"cheap shoddy tacky shabby crummy", "ADJ", Cat::SentAdj, -1},
    {"disappointing unsatisfying underwhelming lackluster mediocre", "ADJ", Cat::SentAdj, -1},
    {"confusing puzzling baffling perplexing bewildering", "ADJ", Cat::SentAdj, -1},
    {"broken faulty defective damaged flawed", "ADJ", Cat::SentAdj, -1},
    {"greasy oily soggy stale rancid", "ADJ", Cat::SentAdj, -1},
    {"painful agonizing excruciating unbearable harsh", "ADJ", Cat::SentAdj, -1},
    {"annoying irritating bothersome tiresome vexing", "ADJ", Cat::SentAdj, -1},
    {"big large huge enormous massive giant", "ADJ", Cat::NeutAdj, 0},
    {"small little tiny compact miniature petite", "ADJ", Cat::NeutAdj, 0},
    {"old ancient aged vintage antique", "ADJ", Cat::NeutAdj, 0},
    {"new modern recent contemporary current", "ADJ", Cat::NeutAdj, 0},
    {"long lengthy extended prolonged", "ADJ", Cat::NeutAdj, 0},
    {"short brief concise succinct", "ADJ", Cat::NeutAdj, 0},
    {"quiet silent hushed muted", "ADJ", Cat::NeutAdj, 0},
    {"hot cold cool lukewarm chilly", "ADJ", Cat::NeutAdj, 0},
    {"full packed crowded stuffed brimming", "ADJ", Cat::NeutAdj, 0},
    {"empty vacant bare deserted hollow", "ADJ", Cat::NeutAdj, 0},
    {"simple plain basic modest ordinary", "ADJ", Cat::NeutAdj, 0},
    {"complex complicated intricate elaborate layered", "ADJ", Cat::NeutAdj, 0},
    {"love adore cherish treasure admire", "VERB", Cat::SentVerb, +1},
    {"enjoy relish savor appreciate", "VERB", Cat::SentVerb, +1},
    {"praise applaud commend acclaim compliment", "VERB", Cat::SentVerb, +1},
    {"impress amaze astonish dazzle delight", "VERB", Cat::SentVerb, +1},
    {"hate despise loathe detest abhor", "VERB", Cat::SentVerb, -1},
    {"ruin wreck destroy spoil shatter demolish", "VERB", Cat::SentVerb, -1},
    {"annoy irritate bother irk pester", "VERB", Cat::SentVerb, -1},
    {"disappoint dismay dishearten discourage sadden", "VERB", Cat::SentVerb, -1},
    {"walk stroll wander roam hike", "VERB", Cat::NeutVerb, 0},
    {"talk chat converse mingle", "VERB", Cat::NeutVerb, 0},
    {"begin start commence continue", "VERB", Cat::NeutVerb, 0},
    {"stay linger settle reside remain", "VERB", Cat::NeutVerb, 0},
    {"shine sparkle glow gleam glitter", "VERB", Cat::NeutVerb, 0},
    {"seem appear look feel", "VERB", Cat::LinkVerb, 0},
    {"well nicely superbly splendidly admirably", "ADV", Cat::SentAdv, +1},
    {"smoothly seamlessly effortlessly gracefully beautifully", "ADV", Cat::SentAdv, +1},
    {"badly poorly terribly horribly awfully", "ADV", Cat::SentAdv, -1},
    {"clumsily awkwardly sloppily carelessly haphazardly", "ADV", Cat::SentAdv, -1},
    {"very extremely really truly utterly exceptionally", "ADV", Cat::DegAdv, 0},
    {"movie film picture flick feature", "NOUN", Cat::Noun, 0},
    {"story tale narrative plot storyline", "NOUN", Cat::Noun, 0},
    {"actor performer entertainer artist", "NOUN", Cat::Noun, 0},
    {"music melody tune soundtrack song", "NOUN", Cat::Noun, 0},
    {"book novel volume paperback manuscript", "NOUN", Cat::Noun, 0},
    {"scene sequence moment segment episode", "NOUN", Cat::Noun, 0},
    {"ending finale conclusion climax resolution", "NOUN", Cat::Noun, 0},
    {"director filmmaker producer creator", "NOUN", Cat::Noun, 0},
    {"character protagonist figure persona role", "NOUN", Cat::Noun, 0},
    {"show performance production presentation spectacle", "NOUN", Cat::Noun, 0},
    {"screen display monitor panel", "NOUN", Cat::Noun, 0},
    {"author writer novelist poet", "NOUN", Cat::Noun, 0},
    {"chapter section passage excerpt paragraph", "NOUN", Cat::Noun, 0},
    {"game match contest tournament", "NOUN", Cat::Noun, 0},
    {"meal dish dinner supper feast", "NOUN", Cat::Noun, 0},
    {"restaurant diner eatery bistro cafe", "NOUN", Cat::Noun, 0},
    {"coffee espresso latte brew mocha", "NOUN", Cat::Noun, 0},
    {"dessert cake pastry pudding pie", "NOUN", Cat::Noun, 0},
    {"flavor taste aroma seasoning spice", "NOUN", Cat::Noun, 0},
    {"portion serving helping slice", "NOUN", Cat::Noun, 0},
    {"waiter server attendant bartender", "NOUN", Cat::Noun, 0},
    {"chef cook caterer baker", "NOUN", Cat::Noun, 0},
    {"place spot location venue site", "NOUN", Cat::Noun, 0},
    {"hotel inn lodge motel hostel", "NOUN", Cat::Noun, 0},
    {"room suite chamber lobby", "NOUN", Cat::Noun, 0},
    {"view scenery vista panorama landscape", "NOUN", Cat::Noun, 0},
    {"garden yard lawn courtyard patio", "NOUN", Cat::Noun, 0},
    {"beach shore coast seaside waterfront", "NOUN", Cat::Noun, 0},
    {"mountain peak summit ridge cliff", "NOUN", Cat::Noun, 0},
    {"city town village district neighborhood", "NOUN", Cat::Noun, 0},
    {"street road avenue boulevard lane", "NOUN", Cat::Noun, 0},
    {"journey trip voyage expedition excursion", "NOUN", Cat::Noun, 0},
    {"device gadget appliance instrument machine", "NOUN", Cat::Noun, 0},
    {"phone handset smartphone mobile", "NOUN", Cat::Noun, 0},
    {"camera lens viewfinder camcorder", "NOUN", Cat::Noun, 0},
    {"battery cell charger adapter", "NOUN", Cat::Noun, 0},
    {"keyboard keypad trackpad touchpad", "NOUN", Cat::Noun, 0},
    {"price cost fee charge rate", "NOUN", Cat::Noun, 0},
    {"sound audio acoustics noise", "NOUN", Cat::Noun, 0},
    {"texture consistency grain surface", "NOUN", Cat::Noun, 0},
    {"decor interior styling ambience atmosphere", "NOUN", Cat::Noun, 0},
    {"weather climate sunshine breeze", "NOUN", Cat::Noun, 0},
    {"morning dawn sunrise daybreak noon", "NOUN", Cat::Noun, 0},
    {"evening night dusk sunset midnight", "NOUN", Cat::Noun, 0},
    {"week weekend month season year", "NOUN", Cat::Noun, 0},
    {"crowd audience gathering assembly", "NOUN", Cat::Noun, 0},
    {"child kid youngster toddler infant", "NOUN", Cat::Noun, 0},
    {"friend companion colleague acquaintance neighbor", "NOUN", Cat::Noun, 0},
    {"family household kin tribe", "NOUN", Cat::Noun, 0},
    {"service staff personnel team", "NOUN", Cat::Noun, 0},
};

const char* kStopwords[] = {
    "the", "a", "an", "and", "or", "but", "if", "of", "in", "on", "at", "by", "with",
    "from", "to", "for", "as", "is", "are", "it", "this", "that", "these", "those",
    "i", "we", "you", "they", "he", "she", "there", "here", "not", "no", "so", "too",
    "also", "just", "while", "when", "because", "though", "yet", "still", "can",
    "may", "will", "would", "could", "should", "must", "rather", "quite",
};

// Sentence shapes. Placeholders: {SA} sentiment adjective, {NA} neutral
// adjective, {N} noun, {STV} sentiment verb, {IV} neutral verb, {L} linking
// verb, {SADV} sentiment adverb, {DEG} degree adverb. Everything else is a
// literal stop word. Short shapes stay under 11 words, long shapes at or
// above it.
const char* kShortTemplates[] = {
    "the {SA} {N} is {DEG} {SA}",
    "we {DEG} {STV} the {SA} {N}",
    "the {N} is {SA} and {DEG} {SA}",
    "i {STV} the {N} and the {SA} {N}",
    "the {N} can {L} {SA} but the {N} is {SA}",
    "they {STV} the {N} because it is {SA}",
    "the {NA} {N} is {SA} and {SA}",
    "we {IV} in the {N} and {STV} the {SA} {N}",
};

const char* kLongTemplates[] = {
    "the {N} is {SA} and the {N} is {SA} but the {NA} {N} is {DEG} {SA}",
    "we {STV} the {N} and the {N} is {DEG} {SA} while the {N} is {SA}",
    "i {STV} the {SA} {N} because the {N} and the {N} are {DEG} {SA}",
    "the {SA} {N} can {STV} the {N} and the {N} is {SA} too",
    "they {STV} the {N} in the {N} and the {N} is {SA} and {DEG} {SA}",
    "the {N} is {SA} the {N} is {SA} and the {N} is {DEG} {SA}",
    "we {IV} to the {N} and the {N} can {L} {SA} but the {SA} {N} is {SA}",
    "you {STV} the {N} and i {STV} the {N} because the {N} is {SA}",
    "the {N} and the {N} are {SA} and the {SA} {N} is {DEG} {SA}",
    "the {N} can {IV} {SADV} and the {SA} {N} is {DEG} {SA}",
    "we {STV} the {N} the {N} and the {N} and the {N} is {SA} and {SA}",
    "it is a {SA} {N} and we {DEG} {STV} the {SA} {N} and the {N}",
};

struct Cluster {
    std::vector<std::string> words;
    std::vector<double> loadings;   // axis-0 intensity per word
    std::string tag;
    Cat cat;
    int polarity;
    std::vector<double> direction;  // unit vector over dims 1..kDim-1
};

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::vector<double> random_unit_offaxis(SplitMix64& rng) {
    std::vector<double> v(kDim, 0.0);
    double norm2 = 0.0;
    for (int i = 1; i < kDim; ++i) {
        v[i] = rng.gaussian();
        norm2 += v[i] * v[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 1; i < kDim; ++i) v[i] *= inv;
    return v;
}

// Unit vector with axis-0 loading `ell` and the rest split between the
// cluster direction and a per-word scatter draw.
std::vector<double> make_word_vector(SplitMix64& rng, const std::vector<double>& direction,
                                     double ell) {
    if (ell > 0.95) ell = 0.95;
    if (ell < -0.95) ell = -0.95;
    const std::vector<double> scatter = random_unit_offaxis(rng);
    std::vector<double> d(kDim, 0.0);
    double norm2 = 0.0;
    for (int i = 1; i < kDim; ++i) {
        d[i] = direction[i] + kSigmaDir * scatter[i];
        norm2 += d[i] * d[i];
    }
    const double scale = std::sqrt(1.0 - ell * ell) / std::sqrt(norm2);
    std::vector<double> v(kDim, 0.0);
    v[0] = ell;
    for (int i = 1; i < kDim; ++i) v[i] = d[i] * scale;
    return v;
}

// Pronounceable filler token, 2-3 syllables.
std::string make_filler_token(SplitMix64& rng) {
    static const char* onsets[] = {"b", "br", "d", "dr", "f", "fl", "g", "gl", "gr", "k",
                                   "kl", "kr", "l", "m", "n", "p", "pl", "pr", "r", "s",
                                   "sk", "sl", "sm", "sn", "st", "t", "tr", "v", "vr", "z"};
    static const char* nuclei[] = {"a", "e", "i", "o", "u", "ai", "ea", "io", "ou", "au"};
    static const char* codas[] = {"", "l", "m", "n", "r", "s", "t", "x", "sh", "nd", "rk", "st"};
    const int syllables = 2 + int(rng.below(2));
    std::string word;
    for (int s = 0; s < syllables; ++s) {
        word += onsets[rng.below(std::size(onsets))];
        word += nuclei[rng.below(std::size(nuclei))];
        if (s + 1 == syllables) word += codas[rng.below(std::size(codas))];
    }
    return word;
}

struct Slot {
    Cat cat;
    bool sentiment;
};

bool parse_slot(const std::string& token, Slot* slot) {
    if (token == "{SA}") { *slot = {Cat::SentAdj, true}; return true; }
    if (token == "{NA}") { *slot = {Cat::NeutAdj, false}; return true; }
    if (token == "{N}") { *slot = {Cat::Noun, false}; return true; }
    if (token == "{STV}") { *slot = {Cat::SentVerb, true}; return true; }
    if (token == "{IV}") { *slot = {Cat::NeutVerb, false}; return true; }
    if (token == "{L}") { *slot = {Cat::LinkVerb, false}; return true; }
    if (token == "{SADV}") { *slot = {Cat::SentAdv, true}; return true; }
    if (token == "{DEG}") { *slot = {Cat::DegAdv, false}; return true; }
    return false;
}

void assign_loadings(Cluster& c, SplitMix64& rng) {
    const std::size_t m = c.words.size();
    c.loadings.resize(m);
    if (c.polarity != 0) {
        // Evenly spread intensities, randomly assigned to the members, so
        // every group holds a counter-leaning, a mild and an emphatic synonym.
        for (std::size_t i = 0; i < m; ++i) {
            const double t = m > 1 ? double(i) / double(m - 1) : 0.5;
            c.loadings[i] = c.polarity * (kSentLow + (kSentHigh - kSentLow) * t) +
                            kSentJitter * rng.gaussian();
        }
        for (std::size_t i = m; i > 1; --i) {
            std::swap(c.loadings[i - 1], c.loadings[rng.below(i)]);
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) c.loadings[i] = kNeutJitter * rng.gaussian();
    }
}

std::string fill_template(const std::string& pattern, int polarity, SplitMix64& rng,
                          const std::vector<Cluster>& clusters) {
    const std::vector<std::string> tokens = split_words(pattern);

    std::vector<int> sentiment_slots;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        Slot slot;
        if (parse_slot(tokens[t], &slot) && slot.sentiment) {
            sentiment_slots.push_back(int(t));
        }
    }
    // One opposite-polarity word in 15% of sentences that can spare it;
    // the majority polarity still matches the label.
    int flip_at = -1;
    if (sentiment_slots.size() >= 3 && rng.uniform() < 0.15) {
        flip_at = sentiment_slots[rng.below(sentiment_slots.size())];
    }

    std::set<std::size_t> used_clusters;
    std::set<std::string> used_words;
    std::string out;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        if (!out.empty()) out += ' ';
        Slot slot;
        if (!parse_slot(tokens[t], &slot)) {
            out += tokens[t];
            continue;
        }
        const int want = slot.sentiment ? (int(t) == flip_at ? -polarity : polarity) : 0;
        std::vector<std::size_t> pool;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (clusters[c].cat != slot.cat || clusters[c].polarity != want) continue;
            if (used_clusters.count(c) != 0) continue;
            pool.push_back(c);
        }
        const Cluster& cluster = clusters[pool[rng.below(pool.size())]];
        // Sentences carry the mid-intensity synonyms; the extremes stay in
        // the vocabulary as swap destinations.
        std::vector<std::string> words;
        for (std::size_t i = 0; i < cluster.words.size(); ++i) {
            if (used_words.count(cluster.words[i]) != 0) continue;
            if (slot.sentiment) {
                const double signed_loading = want * cluster.loadings[i];
                if (signed_loading < kSeedFloor || signed_loading > kSeedCeil) continue;
            }
            words.push_back(cluster.words[i]);
        }
        if (words.empty()) {
            for (std::size_t i = 0; i < cluster.words.size(); ++i) {
                if (used_words.count(cluster.words[i]) == 0) words.push_back(cluster.words[i]);
            }
        }
        const std::string& word = words[rng.below(words.size())];
        used_clusters.insert(&cluster - clusters.data());
        used_words.insert(word);
        out += word;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate the embedding, lexicon, stop-word and corpus fixtures"};
    std::string out_dir = "data";
    std::uint64_t seed = 42;
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", seed, "Master RNG seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    SplitMix64 rng(seed);
    std::set<std::string> seen;
    std::vector<Cluster> clusters;

    for (const auto& entry : kCurated) {
        Cluster c;
        c.words = split_words(entry.words);
        c.tag = entry.tag;
        c.cat = entry.cat;
        c.polarity = entry.polarity;
        c.direction = random_unit_offaxis(rng);
        for (const auto& w : c.words) {
            if (!seen.insert(w).second) {
                std::fprintf(stderr, "duplicate token in curated clusters: %s\n", w.c_str());
                return 1;
            }
        }
        assign_loadings(c, rng);
        clusters.push_back(std::move(c));
    }
    for (const char* w : kStopwords) {
        if (!seen.insert(w).second) {
            std::fprintf(stderr, "stop word collides with a cluster token: %s\n", w);
            return 1;
        }
    }

    std::size_t vocab = seen.size();
    const char* filler_tags[] = {"NOUN", "ADJ", "VERB", "ADV"};
    int filler_tag_index = 0;
    while (vocab < std::size_t(kVocabTarget)) {
        Cluster c;
        c.tag = filler_tags[filler_tag_index];
        filler_tag_index = (filler_tag_index + 1) % 4;
        c.cat = Cat::Filler;
        c.polarity = 0;
        c.direction = random_unit_offaxis(rng);
        const std::size_t size = std::min<std::size_t>(5, kVocabTarget - vocab);
        while (c.words.size() < size) {
            const std::string w = make_filler_token(rng);
            if (seen.insert(w).second) c.words.push_back(w);
        }
        vocab += c.words.size();
        assign_loadings(c, rng);
        clusters.push_back(std::move(c));
    }

    std::vector<std::pair<std::string, std::vector<double>>> table;
    for (const auto& c : clusters) {
        for (std::size_t i = 0; i < c.words.size(); ++i) {
            table.emplace_back(c.words[i], make_word_vector(rng, c.direction, c.loadings[i]));
        }
    }
    for (const char* w : kStopwords) {
        const std::vector<double> direction = random_unit_offaxis(rng);
        const double ell = kStopJitter * rng.gaussian();
        table.emplace_back(w, make_word_vector(rng, direction, ell));
    }

    // Corpus: alternate labels, 40% short / 60% long shapes.
    std::vector<std::pair<std::string, int>> corpus;
    for (int i = 0; i < kCorpusSize; ++i) {
        const int label = i % 2;
        const int polarity = label == 1 ? +1 : -1;
        std::string pattern;
        if (i % 5 < 2) {
            pattern = kShortTemplates[rng.below(std::size(kShortTemplates))];
        } else {
            pattern = kLongTemplates[rng.below(std::size(kLongTemplates))];
        }
        corpus.emplace_back(fill_template(pattern, polarity, rng, clusters), label);
    }

    std::filesystem::create_directories(out_dir);
    const std::string embeddings_path = out_dir + "/embeddings.txt";
    {
        std::ofstream out(embeddings_path);
        out << table.size() << ' ' << kDim << '\n';
        char buf[32];
        for (const auto& [word, vec] : table) {
            out << word;
            for (double x : vec) {
                std::snprintf(buf, sizeof buf, " %.6f", x);
                out << buf;
            }
            out << '\n';
        }
    }
    {
        std::ofstream out(out_dir + "/pos_lexicon.txt");
        for (const auto& c : clusters) {
            for (const auto& w : c.words) out << w << ' ' << c.tag << '\n';
        }
        for (const char* w : kStopwords) out << w << " OTHER\n";
    }
    {
        std::ofstream out(out_dir + "/stopwords.txt");
        out << "# function words; everything else is fair game for the search\n";
        for (const char* w : kStopwords) out << w << '\n';
    }
    {
        std::ofstream out(out_dir + "/corpus.jsonl");
        for (const auto& [text, label] : corpus) {
            nlohmann::json j;
            j["text"] = text;
            j["label"] = label;
            out << j.dump() << '\n';
        }
    }

    int long_sentences = 0;
    for (const auto& [text, label] : corpus) {
        if (split_words(text).size() >= 11) ++long_sentences;
    }
    std::printf("vocab: %zu tokens in %zu clusters\n", table.size(), clusters.size());
    std::printf("corpus: %zu sentences, %d with >= 11 words\n", corpus.size(), long_sentences);
    std::printf("wrote %s/{embeddings.txt,pos_lexicon.txt,stopwords.txt,corpus.jsonl}\n",
                out_dir.c_str());
    return 0;
}
