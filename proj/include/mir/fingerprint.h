#ifndef MIR_FINGERPRINT_H
#define MIR_FINGERPRINT_H

#include <cstdint>
#include <string>
#include <vector>

#include "mir/audio_io.h"

namespace mir {

/// Compact binary fingerprint: one 32-bit sub-fingerprint per analysis
/// frame, built from the signs of band-energy differences.
struct Fingerprint {
  std::vector<std::uint32_t> words;
  double frame_rate_hz = 0.0;
};

/// Extracts a sub-band sign fingerprint with fixed parameters: block 2048,
/// hop 64, 33 logarithmic bands between 300 Hz and 2000 Hz. Bit m of frame
/// n is set iff the frame-to-frame change of the band-energy difference
/// E(n,m) - E(n,m+1) is positive. Gain-invariant by construction.
/// Throws AudioTooShort for input below one analysis block.
Fingerprint extract_fingerprint(const AudioBuffer& audio);

/// Mean per-bit Hamming distance in [0, 1]. Throws LengthMismatch.
double fingerprint_distance(const Fingerprint& a, const Fingerprint& b);

/// Binary container: 16-byte header {magic "ACAF", version u32 = 1,
/// frame rate f64}, then little-endian 32-bit words.
void write_fingerprint(const std::string& path, const Fingerprint& fp);
Fingerprint read_fingerprint(const std::string& path);

}  // namespace mir

#endif  // MIR_FINGERPRINT_H
