#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace mlsa {

/// Knobs for the synthetic corpus + lexicon generator.
struct SynthConfig {
  std::size_t positive_lemmas = 60;
  std::size_t negative_lemmas = 60;
  std::size_t neutral_lemmas = 300;
  std::size_t docs_per_class = 250;
  std::size_t min_tokens = 40;
  std::size_t max_tokens = 120;
  std::size_t min_sentence = 4;
  std::size_t max_sentence = 14;
  /// Probability that a token of a positive / negative document is a sentiment token.
  double positive_density = 0.3;
  double negative_density = 0.3;
  /// Probability that a sentiment token takes the document's own polarity (> 0.5).
  double polarity_bias = 0.85;
  /// Fraction of sentiment tokens given a negation before or an intensifier next to them.
  double rule_fraction = 0.0;
  /// Fraction of tokens replaced by numbers or symbols.
  double noise_fraction = 0.02;
  std::size_t min_senses = 1;
  std::size_t max_senses = 5;
  bool arabic_tool_words = false;
  std::uint64_t seed = 7;

  /// Throws ConfigError on out-of-range knobs.
  void validate() const;

  /// High density, every sentiment token on the document's side: the TERM8
  /// dataset is separable by construction.
  static SynthConfig separable(std::uint64_t seed = 7);
};

struct SynthOutput {
  std::filesystem::path corpus_dir;    // pos/ and neg/ beneath
  std::filesystem::path lexicon;       // lemma<TAB>positive<TAB>negative
  std::filesystem::path dictionary;    // surface<TAB>lemma
  std::filesystem::path negations;     // one word per line
  std::filesystem::path intensifiers;  // one word per line
};

/// Writes the corpus, lexicon, lemma dictionary and tool-word lists under
/// out_dir. Output bytes depend only on the config.
SynthOutput generate(const SynthConfig& config, const std::filesystem::path& out_dir);

}  // namespace mlsa
