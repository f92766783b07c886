#include "flep/payload.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "flep/errors.hpp"

namespace flep {

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'L', 'E', 'P'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get_le() {
    need(sizeof(T));
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<T>(bytes_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return value;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw ParseError("payload: truncated");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_payload(const EncryptedPayload& payload) {
  if (payload.key_id.size() > 0xffff) throw ParseError("payload: key_id longer than 65535 bytes");
  std::vector<std::uint8_t> out;
  out.reserve(16 + payload.key_id.size() + 8 * payload.plane.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le<std::uint16_t>(out, payload.format_version);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(payload.width()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(payload.height()));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(payload.key_id.size()));
  out.insert(out.end(), payload.key_id.begin(), payload.key_id.end());
  for (double v : payload.plane.values()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

EncryptedPayload deserialize_payload(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw ParseError("payload: bad magic");
  const auto version = r.get_le<std::uint16_t>();
  if (version != kPayloadVersion) {
    throw ParseError("payload: unsupported version " + std::to_string(version));
  }
  const std::size_t width = r.get_le<std::uint32_t>();
  const std::size_t height = r.get_le<std::uint32_t>();
  const auto id_len = r.get_le<std::uint16_t>();
  auto id = r.take(id_len);
  std::string key_id(id.begin(), id.end());
  const std::size_t count = width * height;
  if (count == 0) throw ParseError("payload: empty plane");
  if (r.remaining() < count * 8) throw ParseError("payload: truncated");
  if (r.remaining() > count * 8) throw ParseError("payload: trailing bytes");
  std::vector<double> values(count);
  for (auto& v : values) v = std::bit_cast<double>(r.get_le<std::uint64_t>());
  try {
    return EncryptedPayload{RealPlane(width, height, std::move(values)), std::move(key_id), version};
  } catch (const DimensionError& e) {
    throw ParseError(std::string("payload: ") + e.what());
  }
}

void save_payload(const EncryptedPayload& payload, const std::filesystem::path& path) {
  const auto bytes = serialize_payload(payload);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

EncryptedPayload load_payload(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_payload(bytes);
}

}  // namespace flep
