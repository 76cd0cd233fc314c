#include "juribert/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "juribert/rng.hpp"
#include "juribert/utf8.hpp"

namespace juribert {

namespace {

bool is_retained_whitespace(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
           cp == U'\v' || cp == U' ';
}

// The cleaning contract. "Non French characters" is closed here as: ASCII
// letters and digits, the French accented letters in both cases, ASCII
// punctuation, and the typographic marks common in French legal text.
bool is_retained(char32_t cp) {
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9')) {
        return true;
    }
    // ASCII punctuation blocks.
    if ((cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
        (cp >= 0x7B && cp <= 0x7E)) {
        return true;
    }
    static const char32_t accented[] = {
        U'à', U'â', U'æ', U'ç', U'é', U'è', U'ê', U'ë', U'î', U'ï', U'ô', U'œ', U'ù', U'û',
        U'ü', U'ÿ', U'À', U'Â', U'Æ', U'Ç', U'É', U'È', U'Ê', U'Ë', U'Î', U'Ï', U'Ô', U'Œ',
        U'Ù', U'Û', U'Ü', U'Ÿ'};
    for (char32_t c : accented) {
        if (cp == c) {
            return true;
        }
    }
    static const char32_t punctuation[] = {
        U'§', U'°', U'«', U'»', U'‘', U'’', U'“', U'”', U'…', U'–', U'—', U'€'};
    for (char32_t c : punctuation) {
        if (cp == c) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string clean_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    size_t pos = 0;
    while (pos < text.size()) {
        const char32_t cp = utf8_decode_next(text, pos);
        if (cp == kInvalidCodepoint) {
            throw std::invalid_argument("clean_text: invalid UTF-8 at byte " +
                                        std::to_string(pos - 1));
        }
        if (is_retained_whitespace(cp)) {
            pending_space = true;
            continue;
        }
        if (!is_retained(cp)) {
            continue;
        }
        if (pending_space && !out.empty()) {
            out.push_back(' ');
        }
        pending_space = false;
        utf8_append(out, cp);
    }
    return out;
}

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

bool line_is_blank(const std::string& line) {
    for (char c : line) {
        if (!is_ascii_space(c)) {
            return false;
        }
    }
    return true;
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool matches_alors_que_prefix(const std::string& paragraph) {
    size_t i = 0;
    while (i < paragraph.size() &&
           (is_ascii_space(paragraph[i]) || paragraph[i] == '\n')) {
        ++i;
    }
    static const std::string first = "alors";
    static const std::string second = "que";
    for (char c : first) {
        if (i >= paragraph.size() || ascii_lower(paragraph[i]) != c) {
            return false;
        }
        ++i;
    }
    size_t spaces = 0;
    while (i < paragraph.size() &&
           (is_ascii_space(paragraph[i]) || paragraph[i] == '\n')) {
        ++i;
        ++spaces;
    }
    if (spaces == 0) {
        return false;
    }
    for (char c : second) {
        if (i >= paragraph.size() || ascii_lower(paragraph[i]) != c) {
            return false;
        }
        ++i;
    }
    return true;
}

}  // namespace

std::vector<std::string> extract_alors_que(const RawDocument& doc) {
    // Split into paragraphs at runs of blank lines.
    std::vector<std::string> paragraphs;
    std::string current;
    size_t start = 0;
    const std::string& text = doc.text;
    while (start <= text.size()) {
        const size_t nl = text.find('\n', start);
        const std::string line =
            (nl == std::string::npos) ? text.substr(start) : text.substr(start, nl - start);
        if (line_is_blank(line)) {
            if (!current.empty()) {
                paragraphs.push_back(current);
                current.clear();
            }
        } else {
            if (!current.empty()) {
                current.push_back('\n');
            }
            current += line;
        }
        if (nl == std::string::npos) {
            break;
        }
        start = nl + 1;
    }
    if (!current.empty()) {
        paragraphs.push_back(current);
    }

    std::vector<std::string> matches;
    for (const auto& p : paragraphs) {
        if (matches_alors_que_prefix(p)) {
            matches.push_back(p);
        }
    }
    return matches;
}

std::vector<LabeledExample> filter_rare_classes(const std::vector<LabeledExample>& examples,
                                                size_t min_count) {
    std::unordered_map<int, size_t> counts;
    for (const auto& ex : examples) {
        ++counts[ex.label];
    }
    std::vector<LabeledExample> kept;
    kept.reserve(examples.size());
    for (const auto& ex : examples) {
        if (counts[ex.label] >= min_count) {
            kept.push_back(ex);
        }
    }
    if (kept.empty() && !examples.empty()) {
        throw EmptyDataError("filter_rare_classes: every class has fewer than " +
                             std::to_string(min_count) + " examples");
    }
    return kept;
}

namespace {

size_t rounded_count(size_t n, double fraction) {
    return static_cast<size_t>(std::llround(static_cast<double>(n) * fraction));
}

}  // namespace

DatasetSplit split_dataset(const std::vector<LabeledExample>& examples, const SplitSpec& spec) {
    if (spec.dev_fraction < 0.0 || spec.test_fraction < 0.0 ||
        spec.dev_fraction + spec.test_fraction >= 1.0) {
        throw std::invalid_argument("split_dataset: fractions must be >= 0 and sum below 1");
    }
    {
        std::unordered_set<std::string> seen;
        for (const auto& ex : examples) {
            if (!seen.insert(ex.doc_id).second) {
                throw std::invalid_argument("split_dataset: duplicate doc_id '" + ex.doc_id + "'");
            }
        }
    }

    DatasetSplit split;
    const size_t n = examples.size();
    if (n == 0) {
        return split;
    }

    if (!spec.stratified) {
        std::vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i) {
            order[i] = i;
        }
        Rng rng(spec.seed);
        rng.shuffle(order);
        const size_t n_dev = rounded_count(n, spec.dev_fraction);
        const size_t n_test = rounded_count(n, spec.test_fraction);
        for (size_t i = 0; i < n; ++i) {
            const LabeledExample& ex = examples[order[i]];
            if (i < n_dev) {
                split.dev.push_back(ex);
            } else if (i < n_dev + n_test) {
                split.test.push_back(ex);
            } else {
                split.train.push_back(ex);
            }
        }
        return split;
    }

    // Stratified: per-class shuffle then per-class proportional slicing.
    // std::map keeps class iteration order independent of input order.
    std::map<int, std::vector<size_t>> by_class;
    for (size_t i = 0; i < n; ++i) {
        by_class[examples[i].label].push_back(i);
    }
    for (const auto& [label, members] : by_class) {
        if (members.size() < 3) {
            throw std::invalid_argument("split_dataset: stratified split needs >= 3 examples "
                                        "per class; class " +
                                        std::to_string(label) + " has " +
                                        std::to_string(members.size()));
        }
    }

    for (auto& [label, members] : by_class) {
        Rng rng(mix_seed(spec.seed, static_cast<uint64_t>(label)));
        rng.shuffle(members);
        const size_t m = members.size();
        size_t n_dev = rounded_count(m, spec.dev_fraction);
        size_t n_test = rounded_count(m, spec.test_fraction);
        // Every non-empty subset receives at least one member of each class.
        if (spec.dev_fraction > 0.0 && n_dev == 0) {
            n_dev = 1;
        }
        if (spec.test_fraction > 0.0 && n_test == 0) {
            n_test = 1;
        }
        while (n_dev + n_test + 1 > m) {
            if (n_test >= n_dev && n_test > 0) {
                --n_test;
            } else {
                --n_dev;
            }
        }
        for (size_t i = 0; i < m; ++i) {
            const LabeledExample& ex = examples[members[i]];
            if (i < n_dev) {
                split.dev.push_back(ex);
            } else if (i < n_dev + n_test) {
                split.test.push_back(ex);
            } else {
                split.train.push_back(ex);
            }
        }
    }
    return split;
}

std::vector<ClassSupport> corpus_stats(const std::vector<LabeledExample>& examples) {
    std::map<int, size_t> counts;
    for (const auto& ex : examples) {
        ++counts[ex.label];
    }
    std::vector<ClassSupport> table;
    table.reserve(counts.size());
    for (const auto& [label, count] : counts) {
        table.push_back({label, count});
    }
    std::sort(table.begin(), table.end(), [](const ClassSupport& a, const ClassSupport& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        return a.label < b.label;
    });
    return table;
}

LabelMap::LabelMap(std::vector<std::string> sorted_names) : names_(std::move(sorted_names)) {}

LabelMap LabelMap::from_names(const std::vector<std::string>& names) {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return LabelMap(std::move(sorted));
}

int LabelMap::index_of(const std::string& name) const {
    const auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) {
        return -1;
    }
    return static_cast<int>(it - names_.begin());
}

const std::string& LabelMap::name_of(int index) const {
    return names_.at(static_cast<size_t>(index));
}

}  // namespace juribert
