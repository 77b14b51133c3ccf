#include "mlsa/corpus_io.hpp"

#include <algorithm>

#include "mlsa/error.hpp"
#include "mlsa/io_util.hpp"
#include "mlsa/text.hpp"

namespace fs = std::filesystem;

namespace mlsa {

Label label_from_int(int v) {
  if (v == 0) return Label::negative;
  if (v == 1) return Label::positive;
  throw DataError("label must be 0 or 1, got " + std::to_string(v));
}

namespace {

std::vector<std::u32string> to_affixes(const std::vector<std::string>& list) {
  std::vector<std::u32string> out;
  for (const auto& a : list) {
    auto cps = text::decode_utf8(a);
    if (!cps) throw ConfigError("affix is not valid UTF-8: " + a);
    if (!cps->empty()) out.push_back(std::move(*cps));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

constexpr std::size_t kMinStem = 2;

std::vector<RawDocument> load_class_dir(const fs::path& root, const char* sub, Label label) {
  const fs::path dir = root / sub;
  if (!fs::is_directory(dir)) {
    throw ConfigError("corpus root " + root.string() + " has no '" + sub + "/' subdirectory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<RawDocument> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    std::string bytes = io::read_file(f);
    if (auto bad = text::find_invalid_utf8(bytes)) {
      throw DataError("decode error: " + f.string() + " is not valid UTF-8 (byte offset " +
                      std::to_string(*bad) + ")");
    }
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.erase(0, 3);
    docs.push_back({fs::relative(f, root).generic_string(), label, std::move(bytes)});
  }
  return docs;
}

}  // namespace

LemmaDictionary::LemmaDictionary()
    : prefixes_(to_affixes(default_prefixes())), suffixes_(to_affixes(default_suffixes())) {}

const std::vector<std::string>& LemmaDictionary::default_prefixes() {
  static const std::vector<std::string> p = {"و", "ف", "ال", "وال", "بال", "كال", "فال", "لل"};
  return p;
}

const std::vector<std::string>& LemmaDictionary::default_suffixes() {
  static const std::vector<std::string> s = {"ها", "ان", "ات", "ون", "ين", "ه", "ة", "ي"};
  return s;
}

LemmaDictionary LemmaDictionary::load(const fs::path& path) {
  LemmaDictionary dict;
  const std::string contents = io::read_file(path);
  if (auto bad = text::find_invalid_utf8(contents)) {
    throw DataError("decode error: " + path.string() + " is not valid UTF-8 (byte offset " +
                    std::to_string(*bad) + ")");
  }
  const auto all = io::lines(contents);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string& line = all[i];
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path.string(), i + 1, "expected 'surface<TAB>lemma'");
    }
    dict.add(fields[0], std::string(fields[1]));
  }
  return dict;
}

void LemmaDictionary::add(std::string_view surface, std::string lemma) {
  map_[text::lookup_key(surface)] = std::move(lemma);
}

void LemmaDictionary::set_prefixes(std::vector<std::string> prefixes) {
  prefixes_ = to_affixes(prefixes);
}

void LemmaDictionary::set_suffixes(std::vector<std::string> suffixes) {
  suffixes_ = to_affixes(suffixes);
}

std::string LemmaDictionary::lemmatize(std::string_view surface) const {
  const std::string key = text::lookup_key(surface);
  if (auto it = map_.find(key); it != map_.end()) return it->second;

  auto cps = text::decode_utf8(key);
  if (!cps) return key;
  std::u32string_view stem = *cps;
  for (const auto& p : prefixes_) {
    if (text::starts_with(stem, p) && stem.size() - p.size() >= kMinStem) {
      stem.remove_prefix(p.size());
      break;
    }
  }
  for (const auto& s : suffixes_) {
    if (text::ends_with(stem, s) && stem.size() - s.size() >= kMinStem) {
      stem.remove_suffix(s.size());
      break;
    }
  }
  return text::encode_utf8(stem);
}

std::vector<RawDocument> load_corpus(const fs::path& root) {
  if (!fs::is_directory(root)) throw ConfigError("corpus root is not a directory: " + root.string());
  auto docs = load_class_dir(root, "neg", Label::negative);
  auto pos = load_class_dir(root, "pos", Label::positive);
  if (pos.empty()) throw DataError("no positive documents under " + (root / "pos").string());
  if (docs.empty()) throw DataError("no negative documents under " + (root / "neg").string());
  docs.insert(docs.end(), std::make_move_iterator(pos.begin()), std::make_move_iterator(pos.end()));
  return docs;
}

std::vector<Token> strip_noise(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto cps = text::decode_utf8(t.surface);
    if (!cps) continue;
    if (std::any_of(cps->begin(), cps->end(), text::is_letter)) out.push_back(t);
  }
  return out;
}

Segmentation tokenize_and_segment(std::string_view input, const SegmentationConfig& cfg) {
  Segmentation seg;
  const auto cps = text::decode_utf8(input);
  if (!cps) throw DataError("text is not valid UTF-8");

  std::string current;
  std::size_t sentence_start = 0;
  auto flush_token = [&] {
    if (current.empty()) return;
    seg.tokens.push_back({std::move(current), seg.tokens.size()});
    current.clear();
  };
  auto close_sentence = [&] {
    flush_token();
    if (seg.tokens.size() > sentence_start) {
      seg.sentences.push_back({sentence_start, seg.tokens.size()});
      sentence_start = seg.tokens.size();
    }
  };

  for (char32_t cp : *cps) {
    if (cfg.boundaries.find(cp) != std::u32string::npos) {
      close_sentence();
    } else if (text::is_space(cp)) {
      flush_token();
    } else {
      text::append_utf8(current, cp);
    }
  }
  close_sentence();
  return seg;
}

std::string lemmatize(const Token& token, const LemmaDictionary& dict) {
  return dict.lemmatize(token.surface);
}

TokenizedDocument preprocess(const RawDocument& doc, const LemmaDictionary& dict,
                             const SegmentationConfig& cfg) {
  const Segmentation seg = tokenize_and_segment(doc.text, cfg);

  TokenizedDocument out{doc.id, doc.label, {}, {}, {}};
  for (const auto& range : seg.sentences) {
    const std::vector<Token> slice(seg.tokens.begin() + static_cast<std::ptrdiff_t>(range.begin),
                                   seg.tokens.begin() + static_cast<std::ptrdiff_t>(range.end));
    auto kept = strip_noise(slice);
    if (kept.empty()) continue;
    const std::size_t begin = out.tokens.size();
    for (auto& t : kept) {
      out.lemmas.push_back(lemmatize(t, dict));
      out.tokens.push_back(std::move(t));
    }
    out.sentences.push_back({begin, out.tokens.size()});
  }
  return out;
}

std::vector<TokenizedDocument> preprocess_corpus(const std::vector<RawDocument>& docs,
                                                 const LemmaDictionary& dict,
                                                 const SegmentationConfig& cfg) {
  std::vector<TokenizedDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(preprocess(d, dict, cfg));
  return out;
}

}  // namespace mlsa
