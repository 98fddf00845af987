#include "continuo/features.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace continuo {

std::string Representation::tag() const {
  if (kind == Kind::intervals) return "intervals";
  if (n == 1) return "griff";
  return std::to_string(n) + "gram";
}

Representation Representation::from_tag(const std::string& tag) {
  if (tag == "intervals") return intervals();
  if (tag == "griff") return griff(1);
  const std::size_t suffix = tag.rfind("gram");
  if (suffix != std::string::npos && suffix > 0 && suffix + 4 == tag.size()) {
    const std::string digits = tag.substr(0, suffix);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int n = std::stoi(digits);
      if (n >= 1) return griff(n);
    }
  }
  throw std::invalid_argument("unknown representation tag '" + tag + "'");
}

bool excluded_token(const GriffToken& token, const Representation& repr) {
  if (token.empty()) return true;
  return repr.kind == Representation::Kind::griff_ngram && token == "0";
}

long GriffProfile::total() const {
  long total = 0;
  for (const auto& [token, count] : counts) total += count;
  return total;
}

std::optional<std::size_t> Vocabulary::find(const GriffToken& token) const {
  auto it = index.find(token);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

GriffProfile profile(const std::vector<GriffToken>& tokens, Representation repr,
                     PerformanceKey source) {
  GriffProfile p;
  p.repr = repr;
  p.source = std::move(source);
  for (const GriffToken& token : tokens)
    if (!excluded_token(token, repr)) p.counts[token] += 1;
  return p;
}

GriffProfile profile(const GriffSequence& seq, Representation repr) {
  if (repr.kind != Representation::Kind::griff_ngram)
    throw std::invalid_argument("profile(seq): interval profiles are built from token lists");
  return profile(make_ngrams(seq, repr.n), repr, seq.source);
}

Vocabulary build_vocabulary(std::span<const GriffProfile> profiles) {
  Vocabulary vocab;
  if (!profiles.empty()) vocab.repr = profiles.front().repr;
  std::set<GriffToken> tokens;
  for (const GriffProfile& p : profiles) {
    if (!(p.repr == vocab.repr))
      throw std::invalid_argument("build_vocabulary: mixed representation tags (" +
                                  p.repr.tag() + " vs " + vocab.repr.tag() + ")");
    for (const auto& [token, count] : p.counts)
      if (!excluded_token(token, vocab.repr)) tokens.insert(token);
  }
  vocab.tokens.assign(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i < vocab.tokens.size(); ++i) vocab.index[vocab.tokens[i]] = i;
  return vocab;
}

FeatureMatrix bow_matrix(std::span<const GriffProfile> profiles, const Vocabulary& vocab) {
  FeatureMatrix m;
  m.vocab = vocab;
  m.values.assign(profiles.size() * vocab.size(), 0.0);
  m.keys.reserve(profiles.size());
  for (std::size_t r = 0; r < profiles.size(); ++r) {
    m.keys.push_back(profiles[r].source);
    m.labels.push_back(profiles[r].source.player);
    for (const auto& [token, count] : profiles[r].counts)
      if (auto col = vocab.find(token))
        m.values[r * vocab.size() + *col] = static_cast<double>(count);
  }
  return m;
}

void write_vocabulary(const Vocabulary& vocab, std::ostream& out) {
  for (const GriffToken& token : vocab.tokens) out << token << '\n';
}

void write_matrix_csv(const FeatureMatrix& matrix, std::ostream& out) {
  out << "score,player,take";
  for (const GriffToken& token : matrix.vocab.tokens) out << ',' << token;
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const PerformanceKey& key = matrix.keys[r];
    out << key.score << ',' << key.player << ',' << key.take;
    const auto row = matrix.row(r);
    for (double v : row) out << ',' << static_cast<long>(v);
    out << '\n';
  }
}

std::string matrix_triplets_json(const FeatureMatrix& matrix) {
  nlohmann::json j;
  j["rows"] = matrix.rows();
  j["cols"] = matrix.cols();
  j["tokens"] = matrix.vocab.tokens;
  nlohmann::json rows = nlohmann::json::array();
  for (const PerformanceKey& key : matrix.keys)
    rows.push_back({key.score, key.player, key.take});
  j["row_keys"] = std::move(rows);
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] != 0.0) entries.push_back({r, c, static_cast<long>(row[c])});
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

}  // namespace continuo
