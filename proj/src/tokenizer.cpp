#include "juribert/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "juribert/utf8.hpp"

namespace juribert {

namespace {

bool is_space_byte(uint8_t b) {
    return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\f' || b == '\v';
}

constexpr uint64_t pair_key(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

// GPT-2 byte <-> codepoint table: printable bytes map to themselves, the rest
// to codepoints from U+0100 up.
struct ByteDisplayTable {
    std::array<char32_t, 256> to_display{};
    std::map<char32_t, uint8_t> to_byte;

    ByteDisplayTable() {
        auto self_mapped = [](int b) {
            return (b >= 0x21 && b <= 0x7E) || (b >= 0xA1 && b <= 0xAC) || (b >= 0xAE && b <= 0xFF);
        };
        char32_t next = 0x100;
        for (int b = 0; b < 256; ++b) {
            const char32_t cp = self_mapped(b) ? static_cast<char32_t>(b) : next++;
            to_display[static_cast<size_t>(b)] = cp;
            to_byte[cp] = static_cast<uint8_t>(b);
        }
    }
};

const ByteDisplayTable& display_table() {
    static const ByteDisplayTable table;
    return table;
}

// Pre-tokenization boundaries: a split occurs between a non-space byte and a
// following space byte, so leading spaces stay attached to the next word.
template <typename ChunkFn>
void for_each_chunk(const std::string& text, ChunkFn&& fn) {
    size_t start = 0;
    for (size_t i = 1; i < text.size(); ++i) {
        if (!is_space_byte(static_cast<uint8_t>(text[i - 1])) &&
            is_space_byte(static_cast<uint8_t>(text[i]))) {
            fn(text.data() + start, i - start);
            start = i;
        }
    }
    if (start < text.size()) {
        fn(text.data() + start, text.size() - start);
    }
}

int byte_token_id(uint8_t b) {
    return SpecialTokens::count + static_cast<int>(b);
}

}  // namespace

std::string bytes_to_display(const std::string& raw) {
    std::string out;
    out.reserve(raw.size() * 2);
    for (char c : raw) {
        utf8_append(out, display_table().to_display[static_cast<uint8_t>(c)]);
    }
    return out;
}

std::string display_to_bytes(const std::string& display) {
    std::string out;
    out.reserve(display.size());
    size_t pos = 0;
    while (pos < display.size()) {
        const char32_t cp = utf8_decode_next(display, pos);
        if (cp == kInvalidCodepoint) {
            throw ParseError("display_to_bytes: invalid UTF-8 in token");
        }
        const auto it = display_table().to_byte.find(cp);
        if (it == display_table().to_byte.end()) {
            throw ParseError("display_to_bytes: codepoint outside the byte mapping");
        }
        out.push_back(static_cast<char>(it->second));
    }
    return out;
}

TokenizerModel::TokenizerModel(std::vector<MergeRule> merges, int max_sequence_length)
    : merges_(std::move(merges)), max_sequence_length_(max_sequence_length) {
    build_tables();
}

void TokenizerModel::build_tables() {
    id_to_bytes_.clear();
    bytes_to_id_.clear();
    pair_to_merged_.clear();

    id_to_bytes_.push_back(specials_.sequence_start);
    id_to_bytes_.push_back(specials_.sequence_end);
    id_to_bytes_.push_back(specials_.padding);
    id_to_bytes_.push_back(specials_.unknown);
    id_to_bytes_.push_back(specials_.mask);
    for (int b = 0; b < byte_alphabet_size; ++b) {
        id_to_bytes_.push_back(std::string(1, static_cast<char>(b)));
    }

    for (size_t rank = 0; rank < merges_.size(); ++rank) {
        const MergeRule& rule = merges_[rank];
        if (rule.rank != static_cast<int>(rank)) {
            throw std::invalid_argument("TokenizerModel: merge ranks must be contiguous from 0");
        }
        id_to_bytes_.push_back(rule.left + rule.right);
    }

    for (size_t id = 0; id < id_to_bytes_.size(); ++id) {
        bytes_to_id_.emplace(id_to_bytes_[id], static_cast<int>(id));
    }

    for (size_t rank = 0; rank < merges_.size(); ++rank) {
        const MergeRule& rule = merges_[rank];
        const int left = id_of_bytes(rule.left);
        const int right = id_of_bytes(rule.right);
        if (left < 0 || right < 0) {
            throw std::invalid_argument("TokenizerModel: merge rule " + std::to_string(rank) +
                                        " references tokens absent from the vocabulary");
        }
        pair_to_merged_.emplace(pair_key(left, right), base_vocab_size + static_cast<int>(rank));
    }
}

const std::string& TokenizerModel::token_bytes(int id) const {
    if (id < 0 || id >= vocab_size()) {
        throw std::invalid_argument("token_bytes: id " + std::to_string(id) +
                                    " outside vocabulary of size " + std::to_string(vocab_size()));
    }
    return id_to_bytes_[static_cast<size_t>(id)];
}

int TokenizerModel::id_of_bytes(const std::string& bytes) const {
    const auto it = bytes_to_id_.find(bytes);
    return it == bytes_to_id_.end() ? -1 : it->second;
}

void TokenizerModel::apply_merges(std::vector<int>& piece) const {
    if (pair_to_merged_.empty()) {
        return;
    }
    while (piece.size() >= 2) {
        // Lowest-rank applicable merge first.
        int best_rank = std::numeric_limits<int>::max();
        int best_left = -1;
        int best_right = -1;
        int best_merged = -1;
        for (size_t i = 0; i + 1 < piece.size(); ++i) {
            const auto it = pair_to_merged_.find(pair_key(piece[i], piece[i + 1]));
            if (it == pair_to_merged_.end()) {
                continue;
            }
            const int rank = it->second - base_vocab_size;
            if (rank < best_rank) {
                best_rank = rank;
                best_left = piece[i];
                best_right = piece[i + 1];
                best_merged = it->second;
            }
        }
        if (best_merged < 0) {
            break;
        }
        size_t out = 0;
        size_t in = 0;
        while (in < piece.size()) {
            if (in + 1 < piece.size() && piece[in] == best_left && piece[in + 1] == best_right) {
                piece[out++] = best_merged;
                in += 2;
            } else {
                piece[out++] = piece[in++];
            }
        }
        piece.resize(out);
    }
}

std::vector<int> TokenizerModel::encode_raw(const std::string& text) const {
    std::vector<int> ids;
    ids.reserve(text.size() / 2 + 4);
    std::vector<int> piece;
    for_each_chunk(text, [&](const char* data, size_t len) {
        piece.clear();
        for (size_t i = 0; i < len; ++i) {
            piece.push_back(byte_token_id(static_cast<uint8_t>(data[i])));
        }
        apply_merges(piece);
        ids.insert(ids.end(), piece.begin(), piece.end());
    });
    return ids;
}

Encoding TokenizerModel::encode(const std::string& text, std::optional<int> pad_to) const {
    if (pad_to && *pad_to > max_sequence_length_) {
        throw std::invalid_argument("encode: pad_to " + std::to_string(*pad_to) +
                                    " exceeds max_sequence_length " +
                                    std::to_string(max_sequence_length_));
    }
    std::vector<int> content = encode_raw(text);
    const size_t budget = static_cast<size_t>(max_sequence_length_) - 2;
    if (content.size() > budget) {
        content.resize(budget);  // keep the head of the document
    }

    Encoding enc;
    enc.token_ids.reserve(content.size() + 2);
    enc.token_ids.push_back(SpecialTokens::start_id);
    enc.token_ids.insert(enc.token_ids.end(), content.begin(), content.end());
    enc.token_ids.push_back(SpecialTokens::end_id);
    enc.attention_mask.assign(enc.token_ids.size(), 1);

    if (pad_to) {
        while (enc.token_ids.size() < static_cast<size_t>(*pad_to)) {
            enc.token_ids.push_back(SpecialTokens::pad_id);
            enc.attention_mask.push_back(0);
        }
    }
    return enc;
}

std::string TokenizerModel::decode(const std::vector<int>& ids) const {
    std::string bytes;
    for (int id : ids) {
        if (id < 0 || id >= vocab_size()) {
            throw std::invalid_argument("decode: id " + std::to_string(id) +
                                        " outside vocabulary of size " +
                                        std::to_string(vocab_size()));
        }
        if (SpecialTokens::is_special(id)) {
            continue;
        }
        bytes += id_to_bytes_[static_cast<size_t>(id)];
    }
    if (!utf8_valid(bytes)) {
        throw std::invalid_argument("decode: token bytes do not form valid UTF-8 "
                                    "(sequence was likely truncated mid-codepoint)");
    }
    return bytes;
}

TokenizerModel train_bpe(const std::vector<std::string>& corpus, int vocab_size,
                         int min_frequency, int max_sequence_length) {
    if (vocab_size <= TokenizerModel::base_vocab_size) {
        throw std::invalid_argument("train_bpe: vocab_size must exceed " +
                                    std::to_string(TokenizerModel::base_vocab_size) +
                                    " (byte alphabet + special tokens)");
    }
    if (min_frequency < 1) {
        throw std::invalid_argument("train_bpe: min_frequency must be >= 1");
    }

    // Word-frequency table over pre-tokenized chunks.
    std::map<std::string, long> word_counts;
    size_t total_bytes = 0;
    for (const std::string& doc : corpus) {
        total_bytes += doc.size();
        for_each_chunk(doc, [&](const char* data, size_t len) {
            ++word_counts[std::string(data, len)];
        });
    }
    if (total_bytes == 0) {
        throw EmptyDataError("train_bpe: corpus is empty");
    }

    struct Word {
        std::vector<int> tokens;
        long count = 0;
    };
    std::vector<Word> words;
    words.reserve(word_counts.size());
    for (const auto& [chunk, count] : word_counts) {
        Word w;
        w.count = count;
        w.tokens.reserve(chunk.size());
        for (char c : chunk) {
            w.tokens.push_back(byte_token_id(static_cast<uint8_t>(c)));
        }
        words.push_back(std::move(w));
    }

    // Token byte strings; grows as merges are created.
    std::vector<std::string> token_bytes;
    token_bytes.reserve(static_cast<size_t>(vocab_size));
    for (int i = 0; i < SpecialTokens::count; ++i) {
        token_bytes.emplace_back();  // placeholders, never compared
    }
    for (int b = 0; b < TokenizerModel::byte_alphabet_size; ++b) {
        token_bytes.push_back(std::string(1, static_cast<char>(b)));
    }

    std::unordered_map<uint64_t, long> pair_counts;
    std::unordered_map<uint64_t, std::vector<int>> pair_words;  // may hold stale indices
    for (size_t idx = 0; idx < words.size(); ++idx) {
        const Word& w = words[idx];
        for (size_t i = 0; i + 1 < w.tokens.size(); ++i) {
            const uint64_t key = pair_key(w.tokens[i], w.tokens[i + 1]);
            pair_counts[key] += w.count;
            pair_words[key].push_back(static_cast<int>(idx));
        }
    }

    // Existing token byte strings; a pair whose concatenation collides with
    // one of these is never merged, so ids and byte strings stay one-to-one.
    std::unordered_set<std::string> existing_bytes;
    existing_bytes.insert("<s>");
    existing_bytes.insert("</s>");
    existing_bytes.insert("<pad>");
    existing_bytes.insert("<unk>");
    existing_bytes.insert("<mask>");
    for (int b = 0; b < TokenizerModel::byte_alphabet_size; ++b) {
        existing_bytes.insert(std::string(1, static_cast<char>(b)));
    }
    std::unordered_set<uint64_t> banned;

    std::vector<MergeRule> merges;
    while (TokenizerModel::base_vocab_size + static_cast<int>(merges.size()) < vocab_size) {
        long best_count = 0;
        int best_a = -1;
        int best_b = -1;
        for (const auto& [key, count] : pair_counts) {
            if (count < min_frequency || banned.count(key) != 0) {
                continue;
            }
            const int a = static_cast<int>(key >> 32);
            const int b = static_cast<int>(key & 0xFFFFFFFF);
            if (count > best_count) {
                best_count = count;
                best_a = a;
                best_b = b;
            } else if (count == best_count) {
                // Tie-break: lexicographically smallest (left, right) bytes.
                if (token_bytes[static_cast<size_t>(a)] < token_bytes[static_cast<size_t>(best_a)] ||
                    (token_bytes[static_cast<size_t>(a)] == token_bytes[static_cast<size_t>(best_a)] &&
                     token_bytes[static_cast<size_t>(b)] < token_bytes[static_cast<size_t>(best_b)])) {
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) {
            break;  // no pair reaches min_frequency
        }

        const std::string merged_bytes =
            token_bytes[static_cast<size_t>(best_a)] + token_bytes[static_cast<size_t>(best_b)];
        if (!existing_bytes.insert(merged_bytes).second) {
            banned.insert(pair_key(best_a, best_b));
            continue;
        }

        const int merged_id = static_cast<int>(token_bytes.size());
        merges.push_back({token_bytes[static_cast<size_t>(best_a)],
                          token_bytes[static_cast<size_t>(best_b)],
                          static_cast<int>(merges.size())});
        token_bytes.push_back(merged_bytes);

        const uint64_t merged_key = pair_key(best_a, best_b);
        std::vector<int> affected = std::move(pair_words[merged_key]);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        pair_words.erase(merged_key);
        pair_counts.erase(merged_key);

        auto drop_count = [&](uint64_t key, long count) {
            const auto it = pair_counts.find(key);
            if (it == pair_counts.end()) {
                return;
            }
            it->second -= count;
            if (it->second <= 0) {
                pair_counts.erase(it);
            }
        };

        for (int widx : affected) {
            Word& w = words[static_cast<size_t>(widx)];
            bool contains = false;
            for (size_t i = 0; i + 1 < w.tokens.size(); ++i) {
                if (w.tokens[i] == best_a && w.tokens[i + 1] == best_b) {
                    contains = true;
                    break;
                }
            }
            if (!contains) {
                continue;  // stale index
            }
            for (size_t i = 0; i + 1 < w.tokens.size(); ++i) {
                const uint64_t key = pair_key(w.tokens[i], w.tokens[i + 1]);
                if (key != merged_key) {
                    drop_count(key, w.count);
                }
            }
            size_t out = 0;
            size_t in = 0;
            while (in < w.tokens.size()) {
                if (in + 1 < w.tokens.size() && w.tokens[in] == best_a &&
                    w.tokens[in + 1] == best_b) {
                    w.tokens[out++] = merged_id;
                    in += 2;
                } else {
                    w.tokens[out++] = w.tokens[in++];
                }
            }
            w.tokens.resize(out);
            for (size_t i = 0; i + 1 < w.tokens.size(); ++i) {
                const uint64_t key = pair_key(w.tokens[i], w.tokens[i + 1]);
                pair_counts[key] += w.count;
                pair_words[key].push_back(widx);
            }
        }
    }

    return TokenizerModel(std::move(merges), max_sequence_length);
}

void save_tokenizer(const TokenizerModel& model, const std::string& dir) {
    nlohmann::ordered_json vocab;
    for (int id = 0; id < model.vocab_size(); ++id) {
        const std::string display = SpecialTokens::is_special(id)
                                        ? model.token_bytes(id)
                                        : bytes_to_display(model.token_bytes(id));
        vocab[display] = id;
    }
    {
        std::ofstream out(dir + "/vocab.json");
        if (!out) {
            throw MissingInputError("save_tokenizer: cannot write " + dir + "/vocab.json");
        }
        out << vocab.dump(2) << "\n";
    }
    {
        std::ofstream out(dir + "/merges.txt");
        if (!out) {
            throw MissingInputError("save_tokenizer: cannot write " + dir + "/merges.txt");
        }
        out << "#version: 1\n";
        for (const MergeRule& rule : model.merges()) {
            out << bytes_to_display(rule.left) << " " << bytes_to_display(rule.right) << "\n";
        }
    }
}

TokenizerModel load_tokenizer(const std::string& dir, int max_sequence_length) {
    std::ifstream merges_in(dir + "/merges.txt");
    if (!merges_in) {
        throw MissingInputError("load_tokenizer: cannot open " + dir + "/merges.txt");
    }
    std::vector<MergeRule> merges;
    std::string line;
    int line_no = 0;
    while (std::getline(merges_in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (line_no == 1) {
            if (line.rfind("#version:", 0) != 0) {
                throw ParseError(dir + "/merges.txt:1: expected '#version: 1' header");
            }
            continue;
        }
        const size_t space = line.find(' ');
        if (space == std::string::npos || space == 0 || space + 1 >= line.size() ||
            line.find(' ', space + 1) != std::string::npos) {
            throw ParseError(dir + "/merges.txt:" + std::to_string(line_no) +
                             ": expected exactly two space-separated tokens");
        }
        MergeRule rule;
        try {
            rule.left = display_to_bytes(line.substr(0, space));
            rule.right = display_to_bytes(line.substr(space + 1));
        } catch (const ParseError& e) {
            throw ParseError(dir + "/merges.txt:" + std::to_string(line_no) + ": " + e.what());
        }
        rule.rank = static_cast<int>(merges.size());
        merges.push_back(std::move(rule));
    }

    TokenizerModel model(std::move(merges), max_sequence_length);

    // Cross-check vocab.json against the vocabulary the merges imply.
    std::ifstream vocab_in(dir + "/vocab.json");
    if (!vocab_in) {
        throw MissingInputError("load_tokenizer: cannot open " + dir + "/vocab.json");
    }
    nlohmann::json vocab;
    try {
        vocab_in >> vocab;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(dir + "/vocab.json: " + e.what());
    }
    if (!vocab.is_object()) {
        throw ParseError(dir + "/vocab.json: expected a JSON object of token -> id");
    }
    if (static_cast<int>(vocab.size()) != model.vocab_size()) {
        throw ParseError(dir + "/vocab.json: has " + std::to_string(vocab.size()) +
                         " entries, merges imply " + std::to_string(model.vocab_size()));
    }
    std::vector<bool> id_seen(static_cast<size_t>(model.vocab_size()), false);
    for (const auto& [display, id_json] : vocab.items()) {
        if (!id_json.is_number_integer()) {
            throw ParseError(dir + "/vocab.json: id for token '" + display +
                             "' is not an integer");
        }
        const int id = id_json.get<int>();
        if (id < 0 || id >= model.vocab_size()) {
            throw ParseError(dir + "/vocab.json: id " + std::to_string(id) +
                             " out of range for vocabulary of size " +
                             std::to_string(model.vocab_size()));
        }
        if (id_seen[static_cast<size_t>(id)]) {
            throw ParseError(dir + "/vocab.json: duplicate id " + std::to_string(id));
        }
        id_seen[static_cast<size_t>(id)] = true;
        const std::string bytes =
            SpecialTokens::is_special(id) ? display : display_to_bytes(display);
        if (bytes != model.token_bytes(id)) {
            throw ParseError(dir + "/vocab.json: token '" + display + "' at id " +
                             std::to_string(id) + " does not match the merge-implied vocabulary");
        }
    }
    return model;
}

}  // namespace juribert
