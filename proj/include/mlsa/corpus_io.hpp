#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mlsa {

enum class Label : int { negative = 0, positive = 1 };

inline int to_int(Label l) { return static_cast<int>(l); }
Label label_from_int(int v);

struct RawDocument {
  std::string id;  // path relative to the corpus root, e.g. "pos/a.txt"
  Label label;
  std::string text;
};

struct Token {
  std::string surface;
  std::size_t position;  // index in the pre-stripping token sequence
};

/// Half-open range of token indices [begin, end).
struct SentenceRange {
  std::size_t begin;
  std::size_t end;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const SentenceRange&, const SentenceRange&) = default;
};

struct Segmentation {
  std::vector<Token> tokens;
  std::vector<SentenceRange> sentences;
};

struct TokenizedDocument {
  std::string id;
  Label label;
  std::vector<Token> tokens;
  std::vector<SentenceRange> sentences;
  std::vector<std::string> lemmas;
};

struct SegmentationConfig {
  std::u32string boundaries = U".!?؟؛\n";
};

/// Surface-to-lemma map with a light-stemming fallback on misses.
class LemmaDictionary {
 public:
  LemmaDictionary();

  /// TSV `surface<TAB>lemma`, '#' comment lines and blank lines ignored.
  static LemmaDictionary load(const std::filesystem::path& path);

  void add(std::string_view surface, std::string lemma);
  void set_prefixes(std::vector<std::string> prefixes);
  void set_suffixes(std::vector<std::string> suffixes);

  /// Dictionary hit, else one longest prefix then one longest suffix
  /// stripped (each only if two or more letters remain), else identity.
  std::string lemmatize(std::string_view surface) const;

  std::size_t size() const { return map_.size(); }

  static const std::vector<std::string>& default_prefixes();
  static const std::vector<std::string>& default_suffixes();

 private:
  std::unordered_map<std::string, std::string> map_;
  std::vector<std::u32string> prefixes_;  // longest first
  std::vector<std::u32string> suffixes_;  // longest first
};

/// Loads `<root>/pos/*.txt` (label 1) and `<root>/neg/*.txt` (label 0),
/// ordered by relative path.
std::vector<RawDocument> load_corpus(const std::filesystem::path& root);

/// Drops tokens that carry no letter (numbers, punctuation, symbols).
std::vector<Token> strip_noise(const std::vector<Token>& tokens);

/// Whitespace tokenisation; boundary characters both end a sentence and
/// separate tokens. Empty sentences are not emitted.
Segmentation tokenize_and_segment(std::string_view text, const SegmentationConfig& cfg = {});

std::string lemmatize(const Token& token, const LemmaDictionary& dict);

/// tokenize_and_segment -> strip_noise -> lemmatize. Sentences emptied by
/// noise stripping are dropped; a document may end up with zero tokens.
TokenizedDocument preprocess(const RawDocument& doc, const LemmaDictionary& dict,
                             const SegmentationConfig& cfg = {});

std::vector<TokenizedDocument> preprocess_corpus(const std::vector<RawDocument>& docs,
                                                 const LemmaDictionary& dict,
                                                 const SegmentationConfig& cfg = {});

}  // namespace mlsa
