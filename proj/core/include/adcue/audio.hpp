#pragma once

#include <filesystem>
#include <vector>

namespace adcue {

// Mono samples in [-1, 1] full scale.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 16000;

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Throws Error(kInvalidArgument) unless sample_rate >= 8000 and every sample
// is finite.
void validate_audio(const AudioBuffer& audio);

// RIFF/WAVE reader for PCM 8/16/24/32-bit and IEEE float 32/64-bit.
// Multi-channel input is downmixed by averaging.
AudioBuffer read_wav(const std::filesystem::path& path);

enum class WavEncoding { kPcm16, kFloat32 };
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavEncoding encoding = WavEncoding::kPcm16);

}  // namespace adcue
