#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "juribert/common.hpp"

namespace juribert {

struct RawDocument {
    std::string doc_id;
    std::string text;  // UTF-8
    std::optional<std::string> chamber_label;
    std::optional<std::string> matiere_label;
};

struct LabeledExample {
    std::string doc_id;
    std::string text;  // UTF-8, non-empty
    int label = -1;    // index into the task's class list
};

struct SplitSpec {
    double dev_fraction = 0.0;
    double test_fraction = 0.0;
    bool stratified = false;
    uint64_t seed = 0;
};

struct DatasetSplit {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> dev;
    std::vector<LabeledExample> test;
};

// Bidirectional class-name <-> index mapping. Indices are assigned by sorted
// name order so the mapping is independent of corpus iteration order.
class LabelMap {
public:
    LabelMap() = default;
    explicit LabelMap(std::vector<std::string> sorted_names);

    static LabelMap from_names(const std::vector<std::string>& names);

    int index_of(const std::string& name) const;  // -1 if unknown
    const std::string& name_of(int index) const;
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

struct ClassSupport {
    int label = -1;
    size_t count = 0;
};

// Removes every character outside the retained set (ASCII letters and digits,
// the French accented letters, ASCII punctuation plus common French
// typographic marks), collapses whitespace runs to one space and trims.
// Throws std::invalid_argument on invalid UTF-8.
std::string clean_text(const std::string& text);

// Paragraphs are separated by one or more blank lines. Returns, in document
// order, every paragraph whose first non-whitespace characters read
// "ALORS QUE" case-insensitively, with any amount of whitespace between the
// two words.
std::vector<std::string> extract_alors_que(const RawDocument& doc);

// Drops every example whose class has fewer than min_count members, keeping
// relative order. Throws EmptyDataError when nothing survives.
std::vector<LabeledExample> filter_rare_classes(const std::vector<LabeledExample>& examples,
                                                size_t min_count);

// Deterministic split. Non-stratified: dev/test sizes are the whole-set
// fractions rounded to nearest, train takes the remainder. Stratified: the
// same rounding applied per class, with at least one example of each class
// forced into every non-empty subset.
DatasetSplit split_dataset(const std::vector<LabeledExample>& examples, const SplitSpec& spec);

// Per-class support, sorted by count descending (ties by label ascending).
std::vector<ClassSupport> corpus_stats(const std::vector<LabeledExample>& examples);

}  // namespace juribert
