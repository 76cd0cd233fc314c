#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "juribert/common.hpp"

namespace juribert {

// The five MLM special tokens, pinned to the five lowest ids in this order.
struct SpecialTokens {
    std::string sequence_start = "<s>";
    std::string sequence_end = "</s>";
    std::string padding = "<pad>";
    std::string unknown = "<unk>";
    std::string mask = "<mask>";

    static constexpr int start_id = 0;
    static constexpr int end_id = 1;
    static constexpr int pad_id = 2;
    static constexpr int unk_id = 3;
    static constexpr int mask_id = 4;
    static constexpr int count = 5;

    static bool is_special(int id) { return id >= 0 && id < count; }
};

struct MergeRule {
    std::string left;   // raw bytes
    std::string right;  // raw bytes
    int rank = 0;
};

struct Encoding {
    std::vector<int> token_ids;
    std::vector<uint8_t> attention_mask;  // 1 at non-padding positions
};

class TokenizerModel {
public:
    static constexpr int byte_alphabet_size = 256;
    static constexpr int base_vocab_size = byte_alphabet_size + SpecialTokens::count;

    TokenizerModel() = default;
    TokenizerModel(std::vector<MergeRule> merges, int max_sequence_length);

    int vocab_size() const { return base_vocab_size + static_cast<int>(merges_.size()); }
    int max_sequence_length() const { return max_sequence_length_; }
    const std::vector<MergeRule>& merges() const { return merges_; }
    const SpecialTokens& specials() const { return specials_; }

    // Raw byte content of a token id; specials map to their literal strings.
    const std::string& token_bytes(int id) const;
    int id_of_bytes(const std::string& bytes) const;  // -1 if absent

    Encoding encode(const std::string& text, std::optional<int> pad_to = std::nullopt) const;

    // Applies merges to raw text without specials, truncation or padding.
    // Used for streaming corpora into fixed windows.
    std::vector<int> encode_raw(const std::string& text) const;

    std::string decode(const std::vector<int>& ids) const;

private:
    void build_tables();
    void apply_merges(std::vector<int>& piece) const;

    SpecialTokens specials_;
    std::vector<MergeRule> merges_;
    int max_sequence_length_ = 512;
    std::vector<std::string> id_to_bytes_;
    std::unordered_map<std::string, int> bytes_to_id_;
    // (left_id << 32 | right_id) -> merged id, used during encoding.
    std::unordered_map<uint64_t, int> pair_to_merged_;
};

// Greedy byte-level BPE. Repeatedly merges the most frequent adjacent token
// pair with count >= min_frequency until the vocabulary is full or no pair
// qualifies; ties break by lexicographic (left, right) byte order. Merges
// never cross a pre-tokenization boundary (a space attaches as prefix to the
// following word).
TokenizerModel train_bpe(const std::vector<std::string>& corpus, int vocab_size,
                         int min_frequency, int max_sequence_length = 512);

// vocab.json (display-form token -> id) and merges.txt ("#version: 1" header,
// then one "left right" pair per line in rank order).
void save_tokenizer(const TokenizerModel& model, const std::string& dir);
TokenizerModel load_tokenizer(const std::string& dir, int max_sequence_length = 512);

// GPT-2 style reversible byte <-> printable-codepoint mapping used for the
// on-disk display form of tokens.
std::string bytes_to_display(const std::string& raw);
std::string display_to_bytes(const std::string& display);

}  // namespace juribert
