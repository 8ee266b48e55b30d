// Command line front end: key generation, encode/decode, characteristic
// export, SQNR measurement, SQNR-vs-bits sweeps, key-space size.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqz/codec.hpp"
#include "cqz/error.hpp"
#include "cqz/eval.hpp"
#include "cqz/keystream.hpp"
#include "cqz/quantizers.hpp"
#include "cqz/sources.hpp"

namespace {

std::vector<cqz::QuantizerKind> parse_quantizer_list(const std::string& text) {
  std::vector<cqz::QuantizerKind> kinds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string name =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    if (name == "uniform") {
      kinds.push_back(cqz::QuantizerKind::uniform);
    } else if (name == "nonuniform") {
      kinds.push_back(cqz::QuantizerKind::nonuniform);
    } else if (name == "chaotic") {
      kinds.push_back(cqz::QuantizerKind::chaotic);
    } else {
      throw CLI::ValidationError("--quantizers",
                                 "unknown quantizer '" + name + "'");
    }
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return kinds;
}

std::pair<int, int> parse_bits_range(const std::string& text) {
  int lo = 0;
  int hi = 0;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%d..%d%c", &lo, &hi, &trailing) != 2 ||
      lo > hi) {
    throw CLI::ValidationError("--bits", "expected an inclusive range a..b");
  }
  return {lo, hi};
}

void add_keygen(CLI::App& app) {
  auto* cmd = app.add_subcommand("keygen", "derive a key file from a seed");
  auto seed = std::make_shared<std::uint64_t>(0);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--seed", *seed, "64-bit seed")->required();
  cmd->add_option("--out", *out, "key file to write")->required();
  cmd->callback([seed, out] {
    const cqz::ChaoticKey key = cqz::key_from_seed(*seed);
    cqz::save_key_file(key, *out);
    std::printf("wrote key file %s\n", out->c_str());
  });
}

void add_encode(CLI::App& app) {
  auto* cmd = app.add_subcommand("encode", "encode a WAV file to .cqz");
  auto in = std::make_shared<std::string>();
  auto key_path = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto q1 = std::make_shared<int>(12);
  auto q2 = std::make_shared<int>(6);
  auto xmax = std::make_shared<double>(0.0);
  cmd->add_option("--in", *in, "input WAV (16-bit PCM)")->required();
  cmd->add_option("--key", *key_path, "key file")->required();
  cmd->add_option("--out", *out, "output .cqz path")->required();
  cmd->add_option("--q1-bits", *q1, "fine stage bits")->check(CLI::Range(1, 16));
  cmd->add_option("--q2-bits", *q2, "coarse (transmitted) stage bits")
      ->check(CLI::Range(1, 16));
  cmd->add_option("--xmax", *xmax,
                  "support half-width (default: input peak amplitude)");
  cmd->callback([in, key_path, out, q1, q2, xmax] {
    const cqz::ChaoticKey key = cqz::load_key_file(*key_path);
    const cqz::SignalBuffer signal = cqz::load_wav(*in);
    double support = *xmax;
    if (support <= 0.0) {
      for (double x : signal.samples) {
        support = std::max(support, std::fabs(x));
      }
      if (support <= 0.0) {
        support = 1.0;
      }
    }
    const cqz::CodecConfig config{*q1, *q2, support};
    cqz::save_stream(cqz::encode(signal, key, config), *out);
    std::printf("encoded %zu samples (q1=%d q2=%d xmax=%.6g) -> %s\n",
                signal.samples.size(), *q1, *q2, support, out->c_str());
  });
}

void add_decode(CLI::App& app) {
  auto* cmd = app.add_subcommand("decode", "decode a .cqz file to WAV");
  auto in = std::make_shared<std::string>();
  auto key_path = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto ref = std::make_shared<std::string>();
  auto rate = std::make_shared<int>(0);
  cmd->add_option("--in", *in, "input .cqz path")->required();
  cmd->add_option("--key", *key_path, "key file")->required();
  cmd->add_option("--out", *out, "output WAV path")->required();
  cmd->add_option("--ref", *ref, "reference WAV; prints SQNR against it");
  cmd->add_option("--rate", *rate,
                  "sample rate override when the stream header has none");
  cmd->callback([in, key_path, out, ref, rate] {
    const cqz::ChaoticKey key = cqz::load_key_file(*key_path);
    cqz::SignalBuffer decoded = cqz::decode(cqz::load_stream(*in), key);
    if (decoded.sample_rate == 0 && *rate > 0) {
      decoded.sample_rate = *rate;
    }
    cqz::save_wav(decoded, *out);
    std::printf("decoded %zu samples -> %s\n", decoded.samples.size(),
                out->c_str());
    if (!ref->empty()) {
      const cqz::SignalBuffer original = cqz::load_wav(*ref);
      std::printf("sqnr_db=%.4f\n", cqz::sqnr_db(original, decoded));
    }
  });
}

void add_characteristic(CLI::App& app) {
  auto* cmd = app.add_subcommand("characteristic",
                                 "export a quantizer input-output table");
  auto kind = std::make_shared<std::string>();
  auto bits = std::make_shared<int>(4);
  auto xmax = std::make_shared<double>(1.0);
  auto mu = std::make_shared<double>(255.0);
  auto key_path = std::make_shared<std::string>();
  auto position = std::make_shared<std::int64_t>(0);
  auto points = std::make_shared<int>(1024);
  auto grid_min = std::make_shared<double>(0.0);
  auto grid_max = std::make_shared<double>(0.0);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--quantizer", *kind, "uniform, nonuniform, or chaotic")
      ->required()
      ->check(CLI::IsMember({"uniform", "nonuniform", "chaotic"}));
  cmd->add_option("--bits", *bits, "bit depth (fine stage for chaotic)")
      ->required()
      ->check(CLI::Range(1, 16));
  cmd->add_option("--xmax", *xmax, "support half-width");
  cmd->add_option("--mu", *mu, "companding constant (nonuniform)");
  cmd->add_option("--key", *key_path, "key file (chaotic)");
  cmd->add_option("--position", *position, "keystream position (chaotic)");
  cmd->add_option("--points", *points, "grid size");
  cmd->add_option("--min", *grid_min, "grid start (default -xmax)");
  cmd->add_option("--max", *grid_max, "grid end (default +xmax)");
  cmd->add_option("--out", *out, "output CSV path")->required();
  cmd->callback([kind, bits, xmax, mu, key_path, position, points, grid_min,
                 grid_max, out, cmd] {
    const double lo = cmd->count("--min") ? *grid_min : -*xmax;
    const double hi = cmd->count("--max") ? *grid_max : *xmax;
    cqz::CharacteristicTable table;
    if (*kind == "uniform") {
      const cqz::UniformQuantizerSpec spec{*bits, *xmax};
      table = cqz::characteristic(
          [&](double x) { return cqz::quantize_reconstruct(x, spec); }, lo, hi,
          *points);
    } else if (*kind == "nonuniform") {
      const cqz::MuLawQuantizerSpec spec{*bits, *xmax, *mu};
      table = cqz::characteristic(
          [&](double x) { return cqz::quantize_nonuniform(x, spec); }, lo, hi,
          *points);
    } else {
      if (key_path->empty()) {
        throw CLI::ValidationError("--key",
                                   "required for the chaotic quantizer");
      }
      const cqz::ChaoticKey key = cqz::load_key_file(*key_path);
      const cqz::CodecConfig config{*bits, *bits, *xmax};
      table = cqz::chaotic_characteristic(key, config, *position, lo, hi,
                                          *points);
    }
    cqz::write_characteristic_csv(table, *out);
    std::printf("wrote %zu rows -> %s\n", table.rows.size(), out->c_str());
  });
}

void add_sqnr(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("sqnr", "SQNR between a reference and a test WAV");
  auto in = std::make_shared<std::string>();
  auto ref = std::make_shared<std::string>();
  cmd->add_option("--in", *in, "test WAV")->required();
  cmd->add_option("--ref", *ref, "reference WAV")->required();
  cmd->callback([in, ref] {
    const cqz::SignalBuffer original = cqz::load_wav(*ref);
    const cqz::SignalBuffer test = cqz::load_wav(*in);
    std::printf("sqnr_db=%.4f\n", cqz::sqnr_db(original, test));
  });
}

void add_sweep(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("sweep", "SQNR versus bits-per-symbol comparison");
  auto source = std::make_shared<std::string>("laplacian");
  auto in = std::make_shared<std::string>();
  auto n = std::make_shared<std::int64_t>(1000000);
  auto sigma = std::make_shared<double>(1.0);
  auto seed = std::make_shared<std::uint64_t>(1);
  auto bits = std::make_shared<std::string>("2..8");
  auto quantizers =
      std::make_shared<std::string>("uniform,nonuniform,chaotic");
  auto q1 = std::make_shared<int>(12);
  auto key_path = std::make_shared<std::string>();
  auto xmax = std::make_shared<double>(0.0);
  auto out = std::make_shared<std::string>();
  auto report_path = std::make_shared<std::string>();
  cmd->add_option("--source", *source, "laplacian or wav")
      ->check(CLI::IsMember({"laplacian", "wav"}));
  cmd->add_option("--in", *in, "input WAV (source=wav)");
  cmd->add_option("--n", *n, "Laplacian sample count");
  cmd->add_option("--sigma", *sigma, "Laplacian standard deviation");
  cmd->add_option("--seed", *seed, "Laplacian seed");
  cmd->add_option("--bits", *bits, "inclusive bit range a..b");
  cmd->add_option("--quantizers", *quantizers, "comma-separated subset");
  cmd->add_option("--q1-bits", *q1, "chaotic fine stage bits")
      ->check(CLI::Range(1, 16));
  cmd->add_option("--key", *key_path, "key file (required for chaotic)");
  cmd->add_option("--xmax", *xmax,
                  "fixed support half-width (default: 4*sigma for laplacian, "
                  "peak for wav)");
  cmd->add_option("--out", *out, "output CSV path")->required();
  cmd->add_option("--report", *report_path,
                  "also write the comparison report to this path");
  cmd->callback([source, in, n, sigma, seed, bits, quantizers, q1, key_path,
                 xmax, out, report_path] {
    cqz::SweepConfig config;
    const auto [lo, hi] = parse_bits_range(*bits);
    config.bits_min = lo;
    config.bits_max = hi;
    config.quantizers = parse_quantizer_list(*quantizers);
    config.q1_bits = *q1;
    if (*source == "laplacian") {
      config.source = cqz::LaplacianSourceSpec{*seed, *n, *sigma};
      config.xmax_policy = cqz::XmaxPolicy::four_sigma();
    } else {
      if (in->empty()) {
        throw CLI::ValidationError("--in", "required when --source wav");
      }
      config.source = cqz::WavSourceSpec{*in};
      config.xmax_policy = cqz::XmaxPolicy::peak();
    }
    if (*xmax > 0.0) {
      config.xmax_policy = cqz::XmaxPolicy::fixed(*xmax);
    }
    const bool chaotic =
        std::find(config.quantizers.begin(), config.quantizers.end(),
                  cqz::QuantizerKind::chaotic) != config.quantizers.end();
    if (chaotic) {
      if (key_path->empty()) {
        throw CLI::ValidationError("--key",
                                   "required for the chaotic quantizer");
      }
      config.key = cqz::load_key_file(*key_path);
    }
    const std::vector<cqz::SweepRow> rows = cqz::run_sweep(config);
    cqz::export_csv(rows, *out);
    const std::string report = cqz::delta_report(rows);
    if (!report_path->empty()) {
      std::ofstream rf(*report_path);
      if (!rf || !(rf << report).flush()) {
        throw cqz::IoFailure("failed to write report: " + *report_path);
      }
    }
    std::fputs(report.c_str(), stdout);
    std::printf("wrote %zu rows -> %s\n", rows.size(), out->c_str());
  });
}

void add_keyspace(CLI::App& app) {
  auto* cmd = app.add_subcommand("keyspace", "key-space size in bits");
  auto precision = std::make_shared<double>(0.0);
  auto components = std::make_shared<int>(6);
  cmd->add_option("--precision", *precision, "per-component precision, e.g. 1e-15")
      ->required();
  cmd->add_option("--components", *components, "number of secret components");
  cmd->callback([precision, components] {
    const double bits = cqz::key_space_bits(*precision, *components);
    std::printf("%.2f bits (≈ 2^%.0f)\n", bits, std::round(bits));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaotic uniform quantizer codec"};
  app.require_subcommand(1);
  add_keygen(app);
  add_encode(app);
  add_decode(app);
  add_characteristic(app);
  add_sqnr(app);
  add_sweep(app);
  add_keyspace(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cqz: " << e.what() << "\n";
    return 1;
  } catch (const cqz::Error& e) {
    std::cerr << "cqz: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cqz: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
