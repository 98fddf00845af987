#include "continuo/types.hpp"

namespace continuo {

std::string midi_pitch_name(int pitch) {
  static const char* names[12] = {"C",  "C#", "D",  "D#", "E",  "F",
                                  "F#", "G",  "G#", "A",  "A#", "B"};
  const int octave = pitch / 12 - 1;
  return std::string(names[((pitch % 12) + 12) % 12]) + std::to_string(octave);
}

}  // namespace continuo
