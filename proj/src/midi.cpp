#include "continuo/midi.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "continuo/errors.hpp"

namespace continuo {

namespace {

constexpr std::uint32_t kDefaultTempo = 500000;  // microseconds per quarter note

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("midi: " + what + " at byte " + std::to_string(pos));
  }

  std::uint8_t u8() {
    if (pos >= bytes.size()) fail("unexpected end of file");
    return bytes[pos++];
  }

  std::uint16_t u16() { return static_cast<std::uint16_t>(u8() << 8 | u8()); }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | u8();
    return v;
  }

  std::uint32_t vlq() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t b = u8();
      v = v << 7 | (b & 0x7f);
      if (!(b & 0x80)) return v;
    }
    fail("variable-length quantity longer than 4 bytes");
  }

  void skip(std::size_t n) {
    if (pos + n > bytes.size()) fail("chunk truncated");
    pos += n;
  }

  void expect_tag(const char* tag) {
    for (int i = 0; i < 4; ++i) {
      if (u8() != static_cast<std::uint8_t>(tag[i])) {
        --pos;
        fail(std::string("expected '") + tag + "' chunk tag");
      }
    }
  }
};

struct RawNoteEvent {
  std::int64_t tick;
  int track;
  std::size_t order;  // event index within the file, for stable ordering
  bool on;
  int channel;
  int pitch;
  int velocity;
};

struct TempoEvent {
  std::int64_t tick;
  int track;
  std::size_t order;
  std::uint32_t us_per_quarter;
};

/// Tick -> ms, accumulated piecewise over tempo segments.
class TempoMap {
 public:
  TempoMap(std::vector<TempoEvent> events, int ppq) : ppq_(ppq) {
    std::sort(events.begin(), events.end(), [](const TempoEvent& a, const TempoEvent& b) {
      return std::tie(a.tick, a.track, a.order) < std::tie(b.tick, b.track, b.order);
    });
    std::int64_t tick = 0;
    double ms = 0.0;
    std::uint32_t tempo = kDefaultTempo;
    segments_.push_back({0, 0.0, tempo});
    for (const TempoEvent& e : events) {
      ms += ms_per_tick(tempo) * static_cast<double>(e.tick - tick);
      tick = e.tick;
      tempo = e.us_per_quarter;
      // the last tempo at a given tick wins
      if (!segments_.empty() && segments_.back().tick == tick)
        segments_.back() = {tick, ms, tempo};
      else
        segments_.push_back({tick, ms, tempo});
    }
  }

  double to_ms(std::int64_t tick) const {
    const Segment* seg = &segments_.front();
    for (const Segment& s : segments_) {
      if (s.tick > tick) break;
      seg = &s;
    }
    return seg->ms + ms_per_tick(seg->tempo) * static_cast<double>(tick - seg->tick);
  }

 private:
  struct Segment {
    std::int64_t tick;
    double ms;
    std::uint32_t tempo;
  };

  double ms_per_tick(std::uint32_t tempo) const {
    return static_cast<double>(tempo) / (1000.0 * ppq_);
  }

  int ppq_;
  std::vector<Segment> segments_;
};

}  // namespace

MidiParseResult parse_midi(std::span<const std::uint8_t> bytes) {
  Cursor c{bytes};
  c.expect_tag("MThd");
  const std::uint32_t header_len = c.u32();
  if (header_len < 6) c.fail("header chunk shorter than 6 bytes");
  const std::uint16_t format = c.u16();
  const std::uint16_t ntrks = c.u16();
  const std::uint16_t division = c.u16();
  c.skip(header_len - 6);
  if (format != 0 && format != 1)
    throw ParseError("midi: unsupported format " + std::to_string(format) +
                     " (only 0 and 1)");
  if (format == 0 && ntrks != 1)
    throw ParseError("midi: format 0 file declares " + std::to_string(ntrks) + " tracks");

  const bool smpte = (division & 0x8000) != 0;
  double smpte_ms_per_tick = 0.0;
  int ppq = 0;
  if (smpte) {
    const int fps = -static_cast<std::int8_t>(division >> 8);
    const int tpf = division & 0xff;
    if (fps <= 0 || tpf == 0) c.fail("invalid SMPTE division");
    smpte_ms_per_tick = 1000.0 / (fps * tpf);
  } else {
    ppq = division & 0x7fff;
    if (ppq == 0) c.fail("zero ticks-per-quarter division");
  }

  std::vector<RawNoteEvent> events;
  std::vector<TempoEvent> tempos;
  std::vector<std::string> warnings;
  std::size_t order = 0;
  std::vector<std::int64_t> track_end(ntrks, 0);

  for (int track = 0; track < ntrks; ++track) {
    c.expect_tag("MTrk");
    const std::uint32_t track_len = c.u32();
    const std::size_t track_end_pos = c.pos + track_len;
    if (track_end_pos > bytes.size()) c.fail("track length exceeds file size");

    std::int64_t tick = 0;
    std::uint8_t running_status = 0;
    bool ended = false;
    while (c.pos < track_end_pos && !ended) {
      tick += c.vlq();
      std::uint8_t status = c.u8();
      if (status < 0x80) {
        if (running_status == 0) c.fail("data byte without running status");
        --c.pos;
        status = running_status;
      }
      if (status == 0xff) {
        const std::uint8_t type = c.u8();
        const std::uint32_t len = c.vlq();
        if (type == 0x51) {
          if (len != 3) c.fail("tempo event with length != 3");
          std::uint32_t tempo = 0;
          for (int i = 0; i < 3; ++i) tempo = tempo << 8 | c.u8();
          if (tempo == 0) c.fail("zero tempo");
          tempos.push_back({tick, track, order++, tempo});
        } else if (type == 0x2f) {
          c.skip(len);
          ended = true;
        } else {
          c.skip(len);
        }
        running_status = 0;
      } else if (status == 0xf0 || status == 0xf7) {
        c.skip(c.vlq());
        running_status = 0;
      } else {
        const std::uint8_t kind = status & 0xf0;
        const int channel = status & 0x0f;
        running_status = status;
        switch (kind) {
          case 0x80: {
            const int pitch = c.u8() & 0x7f;
            c.u8();  // release velocity
            events.push_back({tick, track, order++, false, channel, pitch, 0});
            break;
          }
          case 0x90: {
            const int pitch = c.u8() & 0x7f;
            const int vel = c.u8() & 0x7f;
            // note-on with velocity 0 is a note-off
            events.push_back({tick, track, order++, vel > 0, channel, pitch, vel});
            break;
          }
          case 0xa0:
          case 0xb0:
          case 0xe0:
            c.skip(2);
            break;
          case 0xc0:
          case 0xd0:
            c.skip(1);
            break;
          default:
            c.fail("unknown status byte " + std::to_string(status));
        }
      }
    }
    if (c.pos != track_end_pos) {
      // tolerate events declared past the end-of-track meta, but never read
      // beyond the declared chunk length
      if (c.pos > track_end_pos) c.fail("event ran past declared track length");
      c.pos = track_end_pos;
    }
    track_end[track] = tick;
  }

  TempoMap tempo_map(std::move(tempos), smpte ? 1 : ppq);
  auto tick_to_ms = [&](std::int64_t tick) {
    return smpte ? smpte_ms_per_tick * static_cast<double>(tick) : tempo_map.to_ms(tick);
  };

  // Pair note-ons with note-offs per (track, channel, pitch), first-on
  // first-off for overlapping same-pitch notes.
  struct OpenNote {
    std::int64_t tick;
    int velocity;
  };
  std::map<std::tuple<int, int, int>, std::deque<OpenNote>> open;
  struct ClosedNote {
    std::int64_t on_tick, off_tick;
    int track, pitch, velocity;
  };
  std::vector<ClosedNote> closed;

  std::stable_sort(events.begin(), events.end(), [](const RawNoteEvent& a, const RawNoteEvent& b) {
    return std::tie(a.track, a.order) < std::tie(b.track, b.order);
  });
  for (const RawNoteEvent& e : events) {
    const auto key = std::make_tuple(e.track, e.channel, e.pitch);
    if (e.on) {
      open[key].push_back({e.tick, e.velocity});
    } else {
      auto it = open.find(key);
      if (it == open.end() || it->second.empty()) {
        warnings.push_back("note-off without matching note-on: pitch " +
                           std::to_string(e.pitch) + " at tick " + std::to_string(e.tick));
        continue;
      }
      const OpenNote on = it->second.front();
      it->second.pop_front();
      closed.push_back({on.tick, e.tick, e.track, e.pitch, on.velocity});
    }
  }
  for (auto& [key, queue] : open) {
    for (const OpenNote& on : queue) {
      const int track = std::get<0>(key);
      const int pitch = std::get<2>(key);
      warnings.push_back("note-on without note-off: pitch " + std::to_string(pitch) +
                         " at tick " + std::to_string(on.tick) + ", closed at end of track");
      closed.push_back({on.tick, track_end[track], track, pitch, on.velocity});
    }
  }

  MidiParseResult result;
  result.warnings = std::move(warnings);
  for (const ClosedNote& n : closed) {
    PerformanceNote note;
    note.onset_ms = tick_to_ms(n.on_tick);
    note.offset_ms = tick_to_ms(n.off_tick);
    note.pitch = n.pitch;
    note.velocity = n.velocity;
    if (note.offset_ms <= note.onset_ms)
      result.warnings.push_back("zero-length note: pitch " + std::to_string(n.pitch) +
                                " at tick " + std::to_string(n.on_tick));
    result.notes.push_back(std::move(note));
  }
  std::stable_sort(result.notes.begin(), result.notes.end(),
                   [](const PerformanceNote& a, const PerformanceNote& b) {
                     return std::tie(a.onset_ms, a.pitch) < std::tie(b.onset_ms, b.pitch);
                   });
  for (std::size_t i = 0; i < result.notes.size(); ++i)
    result.notes[i].note_id = "p" + std::to_string(i);
  return result;
}

}  // namespace continuo
