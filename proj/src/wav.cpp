#include <algorithm>
#include <cmath>
#include <cstring>

#include "hamse/audio.h"
#include "hamse/error.h"

namespace hamse {
namespace {

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return std::uint32_t(b[at]) | std::uint32_t(b[at + 1]) << 8 | std::uint32_t(b[at + 2]) << 16 |
         std::uint32_t(b[at + 3]) << 24;
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

AudioClip read_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw BinaryParseError("file too short for a RIFF header", 0);
  if (std::memcmp(bytes.data(), "RIFX", 4) == 0) throw BinaryParseError("big-endian RIFX files are not supported", 0);
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0) throw BinaryParseError("missing RIFF header", 0);
  if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) throw BinaryParseError("RIFF form type is not WAVE", 8);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    std::uint32_t len = le32(bytes, pos + 4);
    std::size_t body = pos + 8;
    bool is_data = std::memcmp(bytes.data() + pos, "data", 4) == 0;
    if (std::memcmp(bytes.data() + pos, "fmt ", 4) == 0) {
      if (len < 16 || body + len > bytes.size()) throw BinaryParseError("truncated fmt chunk", pos);
      format = le16(bytes, body);
      channels = le16(bytes, body + 2);
      rate = le32(bytes, body + 4);
      bits = le16(bytes, body + 14);
      if (format == kFormatExtensible) {
        if (len < 26) throw BinaryParseError("truncated extensible fmt chunk", pos);
        format = le16(bytes, body + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (is_data) {
      if (!have_fmt) throw BinaryParseError("data chunk before fmt chunk", pos);
      if (len > bytes.size() - body) throw BinaryParseError("truncated data chunk", pos);
      if (format != kFormatPcm && format != kFormatFloat)
        throw UnsupportedFormat("unsupported WAV encoding " + std::to_string(format));
      if ((format == kFormatPcm && bits != 16) || (format == kFormatFloat && bits != 32))
        throw UnsupportedFormat("unsupported sample width " + std::to_string(bits));
      if (channels < 1 || channels > 2) throw UnsupportedFormat("only mono and stereo are supported");
      if (rate == 0) throw BinaryParseError("sample rate is zero", pos);

      const std::size_t width = bits / 8;
      const std::size_t frames = len / (width * channels);
      AudioClip clip;
      clip.sample_rate = static_cast<int>(rate);
      clip.samples.resize(frames);
      for (std::size_t f = 0; f < frames; ++f) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
          std::size_t at = body + (f * channels + c) * width;
          if (format == kFormatPcm) {
            acc += static_cast<std::int16_t>(le16(bytes, at)) / 32768.0;
          } else {
            std::uint32_t raw = le32(bytes, at);
            float v;
            std::memcpy(&v, &raw, sizeof v);
            acc += v;
          }
        }
        clip.samples[f] = acc / channels;
      }
      return clip;
    }
    pos = body + len + (len & 1);
  }
  throw BinaryParseError(have_fmt ? "missing data chunk" : "missing fmt chunk", pos);
}

namespace {

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::vector<std::uint8_t> header(std::uint16_t format, std::uint16_t bits, int rate, std::uint32_t data_len) {
  std::vector<std::uint8_t> out{'R', 'I', 'F', 'F'};
  put32(out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, format);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(rate));
  put32(out, static_cast<std::uint32_t>(rate) * bits / 8);
  put16(out, bits / 8);
  put16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, data_len);
  return out;
}

}  // namespace

std::vector<std::uint8_t> write_wav_pcm16(const AudioClip& clip) {
  auto out = header(kFormatPcm, 16, clip.sample_rate, static_cast<std::uint32_t>(clip.samples.size() * 2));
  for (double s : clip.samples) {
    long v = std::lround(std::clamp(s, -1.0, 1.0) * 32768.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::clamp(v, -32768L, 32767L))));
  }
  return out;
}

std::vector<std::uint8_t> write_wav_float32(const AudioClip& clip) {
  auto out = header(kFormatFloat, 32, clip.sample_rate, static_cast<std::uint32_t>(clip.samples.size() * 4));
  for (double s : clip.samples) {
    float f = static_cast<float>(s);
    std::uint32_t raw;
    std::memcpy(&raw, &f, sizeof raw);
    put32(out, raw);
  }
  return out;
}

}  // namespace hamse
