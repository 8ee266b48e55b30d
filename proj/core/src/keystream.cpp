#include "cqz/keystream.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cqz/error.hpp"
#include "cqz/splitmix64.hpp"

namespace cqz {

namespace {

constexpr double kGuardEpsilon = 1e-12;
constexpr double kDegenerateThreshold = 1e-10;
constexpr double kDegenerateReset = 0.123456789;
constexpr int kBurnInIterations = 1000;
constexpr int kMinWordBits = 1;
constexpr int kMaxWordBits = 24;

double guard_denominator(double d) {
  if (std::fabs(d) < kGuardEpsilon) {
    return d < 0.0 ? -kGuardEpsilon : kGuardEpsilon;
  }
  return d;
}

// frac into [0, 1). The explicit wrap covers negative r so tiny that
// r - floor(r) rounds up to 1.
double mod_unit(double r) {
  double f = r - std::floor(r);
  return f < 1.0 ? f : 0.0;
}

void check_control(double value, const char* name) {
  if (!(value > 0.5 && value < 4.0)) {
    throw ParameterOutOfRange(std::string(name) +
                              " must lie strictly inside (0.5, 4)");
  }
}

void check_initial(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ParameterOutOfRange(std::string(name) + " must lie in [0, 1]");
  }
}

ChaoticState reset_degenerate(ChaoticState s) {
  if (s.x < kDegenerateThreshold) s.x = kDegenerateReset;
  if (s.y < kDegenerateThreshold) s.y = kDegenerateReset;
  if (s.z < kDegenerateThreshold) s.z = kDegenerateReset;
  return s;
}

}  // namespace

ChaoticKey validate_key(const ChaoticKey& key) {
  check_control(key.alpha, "alpha");
  check_control(key.beta, "beta");
  check_control(key.gamma, "gamma");
  check_initial(key.x0, "x0");
  check_initial(key.y0, "y0");
  check_initial(key.z0, "z0");
  return key;
}

ChaoticState iterate_map(const ChaoticState& state, const ChaoticKey& key) {
  const double dx = state.x - state.x * state.x;
  const double nx = key.alpha * dx;
  const double dy = state.y - state.y * state.y;
  const double rx = nx / guard_denominator(dy);
  const double x_next = mod_unit(rx);

  const double dy2 = state.y - state.y * state.y;
  const double ny = key.beta * dy2;
  const double dz = state.z - state.z * state.z;
  const double ry = ny / guard_denominator(dz);
  const double y_next = mod_unit(ry);

  const double dz2 = state.z - state.z * state.z;
  const double nz = key.gamma * dz2;
  const double dx2 = state.x - state.x * state.x;
  const double rz = nz / guard_denominator(dx2);
  const double z_next = mod_unit(rz);

  return {x_next, y_next, z_next};
}

KeystreamGenerator::KeystreamGenerator(const ChaoticKey& key, int word_bits)
    : key_(validate_key(key)),
      state_{key.x0, key.y0, key.z0},
      word_bits_(word_bits) {
  if (word_bits < kMinWordBits || word_bits > kMaxWordBits) {
    throw ParameterOutOfRange("word_bits must lie in [1, 24]");
  }
  mask_ = (1u << word_bits) - 1u;
  for (int i = 0; i < kBurnInIterations; ++i) {
    advance();
  }
}

void KeystreamGenerator::advance() {
  state_ = reset_degenerate(iterate_map(state_, key_));
}

std::uint32_t KeystreamGenerator::next_word() {
  advance();
  // Mid-scale bit field of the x component: bits (32-word_bits)..32 below the
  // binary point. Multiplying by 2^32 is exact; the marginal density of the
  // orbit is smooth at integer scale, so these bits are uniform while the
  // leading bits of x are not.
  const auto scaled = static_cast<std::uint64_t>(state_.x * 0x1.0p32);
  return static_cast<std::uint32_t>(scaled) & mask_;
}

void KeystreamGenerator::skip(std::int64_t count) {
  if (count < 0) {
    throw ParameterOutOfRange("skip count must be non-negative");
  }
  for (std::int64_t i = 0; i < count; ++i) {
    advance();
  }
}

Keystream generate_keystream(const ChaoticKey& key, std::int64_t count,
                             int word_bits) {
  if (count < 0) {
    throw ParameterOutOfRange("keystream count must be non-negative");
  }
  KeystreamGenerator gen(key, word_bits);
  Keystream out;
  out.word_bits = word_bits;
  out.words.resize(static_cast<std::size_t>(count));
  for (auto& w : out.words) {
    w = gen.next_word();
  }
  return out;
}

double key_space_bits(double precision, int num_components) {
  if (!(precision > 0.0 && precision < 1.0)) {
    throw ParameterOutOfRange("precision must lie in (0, 1)");
  }
  if (num_components < 1) {
    throw ParameterOutOfRange("num_components must be at least 1");
  }
  return -static_cast<double>(num_components) * std::log2(precision);
}

ChaoticKey key_from_seed(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const auto control = [&] { return 0.6 + rng.next_unit_open() * 3.3; };
  const auto initial = [&] { return 0.05 + rng.next_unit_open() * 0.9; };
  ChaoticKey key;
  key.alpha = control();
  key.beta = control();
  key.gamma = control();
  key.x0 = initial();
  key.y0 = initial();
  key.z0 = initial();
  return key;
}

ChaoticKey load_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoFailure("cannot open key file: " + path.string());
  }
  double values[6];
  int found = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') {
      continue;
    }
    if (found == 6) {
      throw MalformedKeyFile("key file has more than six values: " +
                             path.string());
    }
    std::istringstream parser(line.substr(begin));
    std::string token;
    parser >> token;
    std::size_t used = 0;
    try {
      values[found] = std::stod(token, &used);
    } catch (const std::exception&) {
      throw MalformedKeyFile("key file line is not a decimal literal: " +
                             line);
    }
    std::string trailing;
    if (used != token.size() || (parser >> trailing)) {
      throw MalformedKeyFile("key file line is not a decimal literal: " +
                             line);
    }
    ++found;
  }
  if (found != 6) {
    throw MalformedKeyFile("key file must contain six values, got " +
                           std::to_string(found));
  }
  ChaoticKey key{values[0], values[1], values[2],
                 values[3], values[4], values[5]};
  return validate_key(key);
}

void save_key_file(const ChaoticKey& key, const std::filesystem::path& path) {
  validate_key(key);
  std::ofstream out(path);
  if (!out) {
    throw IoFailure("cannot create key file: " + path.string());
  }
  out << "# chaotic key: alpha, beta, gamma, x0, y0, z0\n";
  const double fields[6] = {key.alpha, key.beta, key.gamma,
                            key.x0,    key.y0,   key.z0};
  char buf[64];
  for (double v : fields) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << '\n';
  }
  if (!out.flush()) {
    throw IoFailure("failed to write key file: " + path.string());
  }
}

}  // namespace cqz
