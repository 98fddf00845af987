#include "continuo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "continuo/dataset.hpp"
#include "continuo/errors.hpp"
#include "json.hpp"

namespace continuo {

namespace {

// The stdlib distributions are implementation-defined, and a corpus must
// not drift across standard libraries; draws are spelled out instead.
double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // 53 bits in [0,1)
}

double rand_normal(std::mt19937_64& rng) {
  double u1 = rand_unit(rng);
  while (u1 <= 0.0) u1 = rand_unit(rng);
  const double u2 = rand_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void check_config(const SynthConfig& c) {
  if (c.players < 1 || c.takes < 1 || c.score_length < 1 || c.palette_size < 1)
    throw std::invalid_argument("synth: players, takes, score length, and palette size must be positive");
  if (c.overlap < 0.0 || c.overlap > 1.0)
    throw std::invalid_argument("synth: overlap outside [0,1]");
  if (c.deletion_prob < 0.0 || c.deletion_prob > 1.0)
    throw std::invalid_argument("synth: deletion probability outside [0,1]");
  if (c.jitter_ms < 0.0) throw std::invalid_argument("synth: negative jitter");
  if (c.window_ms <= 0.0) throw std::invalid_argument("synth: window must be positive");
  if (c.palettes) {
    if (c.palettes->size() != static_cast<std::size_t>(c.players))
      throw std::invalid_argument("synth: need one palette per player");
    for (const auto& palette : *c.palettes)
      if (palette.empty()) throw std::invalid_argument("synth: empty palette");
  }
}

std::vector<std::vector<Griff>> build_palettes(const SynthConfig& c) {
  if (c.palettes) return *c.palettes;
  const int shared = static_cast<int>(std::llround(c.overlap * c.palette_size));
  const int unique = c.palette_size - shared;
  const auto pool =
      shape_pool(static_cast<std::size_t>(shared) +
                 static_cast<std::size_t>(c.players) * static_cast<std::size_t>(unique));
  std::vector<std::vector<Griff>> palettes(c.players);
  for (int p = 0; p < c.players; ++p) {
    auto& palette = palettes[p];
    palette.insert(palette.end(), pool.begin(), pool.begin() + shared);
    const auto base = pool.begin() + shared + static_cast<std::ptrdiff_t>(p) * unique;
    palette.insert(palette.end(), base, base + unique);
  }
  return palettes;
}

}  // namespace

std::vector<Griff> shape_pool(std::size_t count) {
  std::vector<Griff> shapes;
  shapes.reserve(count);
  for (int i = 1; i <= 24 && shapes.size() < count; ++i) shapes.push_back(Griff{{{i}}});
  for (int i = 1; i <= 24 && shapes.size() < count; ++i)
    for (int j = i + 1; j <= 24 && shapes.size() < count; ++j)
      shapes.push_back(Griff{{{i, j}}});
  for (int i = 1; i <= 24 && shapes.size() < count; ++i)
    for (int j = 1; j <= 24 && shapes.size() < count; ++j)
      shapes.push_back(Griff{{{i}, {j}}});
  if (shapes.size() < count)
    throw std::invalid_argument("synth: palette demand exceeds the shape pool");
  return shapes;
}

SynthCorpus generate(const SynthConfig& config) {
  check_config(config);
  const auto palettes = build_palettes(config);

  SynthCorpus corpus;
  corpus.config = config;

  std::vector<ScoreNote> score;
  for (int o = 0; o < config.score_length; ++o)
    score.push_back({"n" + std::to_string(o), o, 36 + (o * 7) % 12});
  corpus.dataset.scores[config.score_name] = score;

  const double gap = 3.0 * config.window_ms;
  for (int p = 0; p < config.players; ++p) {
    for (int t = 0; t < config.takes; ++t) {
      const PerformanceKey key{config.score_name, "P" + std::to_string(p + 1),
                               "t" + std::to_string(t + 1)};
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                        static_cast<std::uint32_t>(config.seed >> 32),
                        static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(t)};
      std::mt19937_64 rng(seq);

      struct Placed {
        double onset;
        int pitch;
        int velocity;
        std::string score_id;
      };
      std::vector<Placed> placed;
      std::vector<GriffToken> tokens;
      double cursor = 0.0;
      for (int o = 0; o < config.score_length; ++o) {
        const auto& palette = palettes[p];
        const Griff& shape = palette[rng() % palette.size()];
        const bool deleted = rand_unit(rng) < config.deletion_prob;
        const double base = cursor;
        if (deleted) {
          tokens.push_back("");
          cursor = base + gap;
          continue;
        }
        tokens.push_back(encode(shape));
        for (std::size_t v = 0; v < shape.vectors.size(); ++v) {
          for (int interval : shape.vectors[v]) {
            const int pitch = score[o].pitch + interval;
            if (pitch < 0 || pitch > 127)
              throw std::invalid_argument("synth: palette interval leaves the midi range");
            double onset = base + static_cast<double>(v) * gap;
            if (config.jitter_ms > 0.0) onset += config.jitter_ms * rand_normal(rng);
            if (onset < 0.0) onset = 0.0;
            placed.push_back({onset, pitch, 64 + static_cast<int>(rng() % 32), score[o].id});
          }
        }
        cursor = base + static_cast<double>(shape.vectors.size()) * gap;
      }
      std::stable_sort(placed.begin(), placed.end(), [](const Placed& a, const Placed& b) {
        if (a.onset != b.onset) return a.onset < b.onset;
        return a.pitch < b.pitch;
      });

      Performance perf;
      for (std::size_t i = 0; i < placed.size(); ++i) {
        const std::string id = "p" + std::to_string(i);
        perf.notes.push_back({id, placed[i].onset, placed[i].onset + 100.0,
                              placed[i].pitch, placed[i].velocity});
        perf.alignment.pairs.emplace_back(id, placed[i].score_id);
      }
      corpus.dataset.performances[key] = std::move(perf);
      corpus.truth[key] = std::move(tokens);
    }
  }
  validate_dataset(corpus.dataset);
  return corpus;
}

namespace {

using nlohmann::json;

// 480 ticks per quarter at 500000 us per quarter: 0.96 ticks per ms.
constexpr double kTicksPerMs = 0.96;

long long to_tick(double ms) { return std::llround(ms * kTicksPerMs); }

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_vlq(std::vector<std::uint8_t>& out, std::uint32_t v) {
  std::uint8_t digits[5];
  int n = 0;
  do {
    digits[n++] = static_cast<std::uint8_t>(v & 0x7f);
    v >>= 7;
  } while (v != 0);
  while (n > 1) out.push_back(digits[--n] | 0x80);
  out.push_back(digits[0]);
}

struct TickNote {
  long long on = 0;
  long long off = 0;
  int pitch = 0;
  int velocity = 0;
};

std::vector<std::uint8_t> smf_bytes(const std::vector<TickNote>& notes) {
  struct Event {
    long long tick;
    int order;  // note-offs land before note-ons at the same tick
    std::uint8_t status, a, b;
  };
  std::vector<Event> events;
  for (const TickNote& note : notes) {
    events.push_back({note.on, 1, 0x90, static_cast<std::uint8_t>(note.pitch),
                      static_cast<std::uint8_t>(note.velocity)});
    events.push_back({note.off, 0, 0x80, static_cast<std::uint8_t>(note.pitch), 0x40});
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.tick != b.tick) return a.tick < b.tick;
    if (a.order != b.order) return a.order < b.order;
    return a.a < b.a;
  });

  std::vector<std::uint8_t> track;
  put_vlq(track, 0);  // tempo 500000 at tick 0
  track.insert(track.end(), {0xff, 0x51, 0x03, 0x07, 0xa1, 0x20});
  long long cursor = 0;
  for (const Event& e : events) {
    put_vlq(track, static_cast<std::uint32_t>(e.tick - cursor));
    cursor = e.tick;
    track.push_back(e.status);
    track.push_back(e.a);
    track.push_back(e.b);
  }
  put_vlq(track, 0);
  track.insert(track.end(), {0xff, 0x2f, 0x00});

  std::vector<std::uint8_t> bytes;
  bytes.insert(bytes.end(), {'M', 'T', 'h', 'd'});
  put_u32(bytes, 6);
  put_u16(bytes, 0);  // format 0
  put_u16(bytes, 1);
  put_u16(bytes, 480);
  bytes.insert(bytes.end(), {'M', 'T', 'r', 'k'});
  put_u32(bytes, static_cast<std::uint32_t>(track.size()));
  bytes.insert(bytes.end(), track.begin(), track.end());
  return bytes;
}

void write_file(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw DataError("short write: " + path.string());
}

}  // namespace

std::filesystem::path export_corpus(const SynthCorpus& corpus,
                                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  json manifest;
  manifest["scores"] = json::array();
  for (const auto& [name, notes] : corpus.dataset.scores) {
    json score;
    score["name"] = name;
    score["notes"] = json::array();
    for (const ScoreNote& note : notes)
      score["notes"].push_back(
          {{"id", note.id}, {"ordinal", note.ordinal}, {"midi_pitch", note.pitch}});
    manifest["scores"].push_back(std::move(score));
  }

  manifest["performances"] = json::array();
  for (const auto& [key, perf] : corpus.dataset.performances) {
    std::map<std::string, std::string> score_of;
    for (const auto& [perf_id, score_id] : perf.alignment.pairs) score_of[perf_id] = score_id;

    struct Row {
      long long on, off;
      int pitch, velocity;
      std::string score_id;
    };
    std::vector<Row> rows;
    for (const PerformanceNote& note : perf.notes)
      rows.push_back({to_tick(note.onset_ms), to_tick(note.offset_ms), note.pitch,
                      note.velocity, score_of.at(note.note_id)});
    // Rounding can reorder nearly simultaneous notes, so ids are re-derived
    // from the (tick, pitch) order the parser will see.
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (a.on != b.on) return a.on < b.on;
      return a.pitch < b.pitch;
    });

    std::vector<TickNote> tick_notes;
    std::string csv = "perf_note_id,score_note_id\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      tick_notes.push_back({rows[i].on, rows[i].off, rows[i].pitch, rows[i].velocity});
      csv += "p" + std::to_string(i) + "," + rows[i].score_id + "\n";
    }

    const std::string label = key.label();
    const auto midi_bytes = smf_bytes(tick_notes);
    write_file(dir / (label + ".mid"), midi_bytes.data(), midi_bytes.size());
    write_file(dir / (label + ".csv"), csv.data(), csv.size());
    manifest["performances"].push_back({{"score", key.score},
                                        {"player", key.player},
                                        {"take", key.take},
                                        {"midi_path", label + ".mid"},
                                        {"alignment_path", label + ".csv"}});
  }

  const std::filesystem::path manifest_path = dir / "manifest.json";
  const std::string text = manifest.dump(2) + "\n";
  write_file(manifest_path, text.data(), text.size());
  return manifest_path;
}

std::string synth_config_json(const SynthConfig& config) {
  json j;
  j["players"] = config.players;
  j["takes"] = config.takes;
  j["score_length"] = config.score_length;
  j["palette_size"] = config.palette_size;
  j["overlap"] = config.overlap;
  j["jitter_ms"] = config.jitter_ms;
  j["deletion_prob"] = config.deletion_prob;
  j["seed"] = config.seed;
  j["score_name"] = config.score_name;
  j["window_ms"] = config.window_ms;
  if (config.palettes) {
    json palettes = json::array();
    for (const auto& palette : *config.palettes) {
      json tokens = json::array();
      for (const Griff& shape : palette) tokens.push_back(encode(shape));
      palettes.push_back(std::move(tokens));
    }
    j["palettes"] = std::move(palettes);
  }
  return j.dump(2);
}

SynthConfig synth_config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("synth config: ") + e.what());
  }
  SynthConfig config;
  try {
    config.players = j.value("players", config.players);
    config.takes = j.value("takes", config.takes);
    config.score_length = j.value("score_length", config.score_length);
    config.palette_size = j.value("palette_size", config.palette_size);
    config.overlap = j.value("overlap", config.overlap);
    config.jitter_ms = j.value("jitter_ms", config.jitter_ms);
    config.deletion_prob = j.value("deletion_prob", config.deletion_prob);
    config.seed = j.value("seed", config.seed);
    config.score_name = j.value("score_name", config.score_name);
    config.window_ms = j.value("window_ms", config.window_ms);
    if (j.contains("palettes")) {
      std::vector<std::vector<Griff>> palettes;
      for (const json& tokens : j.at("palettes")) {
        std::vector<Griff> palette;
        for (const json& token : tokens) palette.push_back(parse_token(token.get<std::string>()));
        palettes.push_back(std::move(palette));
      }
      config.palettes = std::move(palettes);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("synth config: ") + e.what());
  }
  return config;
}

}  // namespace continuo
