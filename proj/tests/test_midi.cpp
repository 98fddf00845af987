#include <cstdint>
#include <string>
#include <vector>

#include "continuo/errors.hpp"
#include "continuo/midi.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace continuo;
using testutil::SmfBuilder;

TEST_CASE("one note at the default tempo") {
  SmfBuilder b;
  b.on(0, 60, 100);
  b.off(480, 60);
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 1);
  const PerformanceNote& note = result.notes[0];
  CHECK(note.note_id == "p0");
  CHECK(note.onset_ms == doctest::Approx(0.0));
  CHECK(note.offset_ms == doctest::Approx(500.0));  // 480 ticks at 500000 us/quarter
  CHECK(note.pitch == 60);
  CHECK(note.velocity == 100);
  CHECK(result.warnings.empty());
}

TEST_CASE("tempo change applies piecewise") {
  SmfBuilder b;
  b.on(0, 60, 90);
  b.on(240, 64, 90);
  b.tempo(0, 250000);  // at tick 240
  b.off(240, 60);      // tick 480
  b.off(0, 64);
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 2);
  CHECK(result.notes[0].onset_ms == doctest::Approx(0.0));
  CHECK(result.notes[0].offset_ms == doctest::Approx(375.0));  // 250ms + 125ms
  CHECK(result.notes[1].onset_ms == doctest::Approx(250.0));
  CHECK(result.notes[1].offset_ms == doctest::Approx(375.0));
}

TEST_CASE("tempo in a format 1 tempo track governs note tracks") {
  SmfBuilder b;
  b.format = 1;
  b.tempo(0, 250000);
  b.end_track();
  b.on(0, 50, 80);
  b.off(480, 50);
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 1);
  CHECK(result.notes[0].offset_ms == doctest::Approx(250.0));
}

TEST_CASE("SMPTE division converts directly and ignores tempo events") {
  SmfBuilder b;
  b.division = static_cast<std::uint16_t>(((256 - 25) << 8) | 40);  // 25 fps, 40 tpf
  b.tempo(0, 250000);
  b.on(0, 60, 70);
  b.off(100, 60);
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 1);
  CHECK(result.notes[0].offset_ms == doctest::Approx(100.0));  // 1 ms per tick
}

TEST_CASE("running status reuses the previous status byte") {
  SmfBuilder b;
  b.on(0, 60, 100);
  b.raw({10, 64, 100});  // delta 10, note-on 64 under running status
  b.raw({10, 60, 0});    // velocity 0 acts as note-off
  b.raw({10, 64, 0});
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 2);
  CHECK(result.notes[0].pitch == 60);
  CHECK(result.notes[0].offset_ms > result.notes[0].onset_ms);
  CHECK(result.notes[1].pitch == 64);
}

TEST_CASE("overlapping equal pitches pair first-on with first-off") {
  SmfBuilder b;
  b.on(0, 60, 100);
  b.on(96, 60, 100);
  b.off(96, 60);  // tick 192
  b.off(96, 60);  // tick 288
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 2);
  CHECK(result.notes[0].onset_ms == doctest::Approx(0.0));
  CHECK(result.notes[0].offset_ms == doctest::Approx(200.0));
  CHECK(result.notes[1].onset_ms == doctest::Approx(100.0));
  CHECK(result.notes[1].offset_ms == doctest::Approx(300.0));
}

TEST_CASE("ids are assigned after sorting by onset then pitch") {
  SmfBuilder b;
  b.format = 1;
  b.on(0, 70, 100);
  b.off(480, 70);
  b.end_track();
  b.on(0, 40, 100);  // same onset, lower pitch: sorts first
  b.off(480, 40);
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 2);
  CHECK(result.notes[0].note_id == "p0");
  CHECK(result.notes[0].pitch == 40);
  CHECK(result.notes[1].note_id == "p1");
  CHECK(result.notes[1].pitch == 70);
}

TEST_CASE("orphan note events produce warnings") {
  SmfBuilder b;
  b.off(0, 60);  // no matching note-on
  b.on(10, 62, 90);
  b.on(20, 40, 80);
  b.off(460, 40);
  b.end_track();  // note 62 never closed; runs to the end-of-track tick
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 2);
  CHECK(result.notes[0].pitch == 62);
  CHECK(result.notes[0].offset_ms > result.notes[0].onset_ms);
  REQUIRE(result.warnings.size() == 2);
  CHECK(result.warnings[0].find("note-off without matching note-on") != std::string::npos);
  CHECK(result.warnings[1].find("note-on without note-off") != std::string::npos);
}

TEST_CASE("zero-length notes are kept with a warning") {
  SmfBuilder b;
  b.on(0, 60, 100);
  b.off(0, 60);
  b.end_track();
  const auto result = parse_midi(b.bytes());
  REQUIRE(result.notes.size() == 1);
  CHECK(result.notes[0].onset_ms == result.notes[0].offset_ms);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("zero-length note") != std::string::npos);
}

TEST_CASE("malformed files raise ParseError with a byte offset") {
  SUBCASE("truncated header") {
    const std::vector<std::uint8_t> bytes{'M', 'T', 'h', 'd', 0, 0};
    try {
      parse_midi(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("at byte") != std::string::npos);
    }
  }
  SUBCASE("wrong chunk tag") {
    std::vector<std::uint8_t> bytes{'M', 'T', 'h', 'X', 0, 0, 0, 6, 0, 0, 0, 1, 1, 0xe0};
    CHECK_THROWS_AS(parse_midi(bytes), ParseError);
  }
  SUBCASE("unsupported format 2") {
    SmfBuilder b;
    b.format = 2;
    b.end_track();
    CHECK_THROWS_AS(parse_midi(b.bytes()), ParseError);
  }
  SUBCASE("format 0 with two tracks") {
    SmfBuilder b;
    b.format = 0;
    b.end_track();
    b.end_track();
    CHECK_THROWS_AS(parse_midi(b.bytes()), ParseError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse_midi(std::vector<std::uint8_t>{}), ParseError);
  }
}

TEST_CASE("empty track parses to no notes") {
  SmfBuilder b;
  b.end_track();
  const auto result = parse_midi(b.bytes());
  CHECK(result.notes.empty());
  CHECK(result.warnings.empty());
}
