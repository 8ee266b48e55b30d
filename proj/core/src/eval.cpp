#include "cqz/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include "cqz/codec.hpp"
#include "cqz/error.hpp"
#include "cqz/quantizers.hpp"
#include "cqz/sources.hpp"

namespace cqz {

namespace {

struct MaterializedSource {
  SignalBuffer buffer;
  std::string label;
  double configured_sigma = 0.0;  // > 0 for the Laplacian source
};

MaterializedSource materialize(const SourceSpec& source) {
  MaterializedSource out;
  if (const auto* lap = std::get_if<LaplacianSourceSpec>(&source)) {
    out.buffer = laplacian_source(lap->seed, lap->count, lap->sigma);
    out.label = "laplacian";
    out.configured_sigma = lap->sigma;
  } else {
    out.buffer = load_wav(std::get<WavSourceSpec>(source).path);
    out.label = "speech";
  }
  return out;
}

double resolve_xmax(const XmaxPolicy& policy, const MaterializedSource& src) {
  switch (policy.kind) {
    case XmaxPolicy::Kind::fixed:
      if (!(policy.value > 0.0) || !std::isfinite(policy.value)) {
        throw ParameterOutOfRange("fixed xmax must be positive and finite");
      }
      return policy.value;
    case XmaxPolicy::Kind::four_sigma: {
      if (src.configured_sigma > 0.0) {
        return 4.0 * src.configured_sigma;
      }
      double sum_sq = 0.0;
      for (double x : src.buffer.samples) {
        sum_sq += x * x;
      }
      const double rms = src.buffer.samples.empty()
                             ? 0.0
                             : std::sqrt(sum_sq / src.buffer.samples.size());
      return rms > 0.0 ? 4.0 * rms : 1.0;
    }
    case XmaxPolicy::Kind::peak: {
      double peak = 0.0;
      for (double x : src.buffer.samples) {
        peak = std::max(peak, std::fabs(x));
      }
      return peak > 0.0 ? peak : 1.0;
    }
  }
  throw ParameterOutOfRange("unknown xmax policy");
}

SweepRow measure_uniform(const MaterializedSource& src, int bits, double xmax) {
  const UniformQuantizerSpec spec{bits, xmax};
  SignalBuffer recon;
  recon.samples.resize(src.buffer.samples.size());
  for (std::size_t i = 0; i < recon.samples.size(); ++i) {
    recon.samples[i] = quantize_reconstruct(src.buffer.samples[i], spec);
  }
  return {src.label, QuantizerKind::uniform, bits,
          sqnr_db(src.buffer, recon), std::nullopt};
}

SweepRow measure_nonuniform(const MaterializedSource& src, int bits,
                            double xmax) {
  const MuLawQuantizerSpec spec{bits, xmax, 255.0};
  SignalBuffer recon;
  recon.samples.resize(src.buffer.samples.size());
  for (std::size_t i = 0; i < recon.samples.size(); ++i) {
    recon.samples[i] = quantize_nonuniform(src.buffer.samples[i], spec);
  }
  return {src.label, QuantizerKind::nonuniform, bits,
          sqnr_db(src.buffer, recon), std::nullopt};
}

SweepRow measure_chaotic(const MaterializedSource& src, int bits, double xmax,
                         const ChaoticKey& key, int q1_bits) {
  const CodecConfig config{q1_bits, bits, xmax};
  const SignalBuffer decoded = decode(encode(src.buffer, key, config), key);
  SweepRow row{src.label, QuantizerKind::chaotic, bits,
               sqnr_db(src.buffer, decoded), std::nullopt};

  SignalBuffer encrypted;
  encrypted.samples = encrypted_signal(src.buffer, key, config);
  const UniformQuantizerSpec coarse{bits, xmax};
  SignalBuffer coarse_recon;
  coarse_recon.samples.resize(encrypted.samples.size());
  for (std::size_t i = 0; i < encrypted.samples.size(); ++i) {
    coarse_recon.samples[i] =
        quantize_reconstruct(encrypted.samples[i], coarse);
  }
  try {
    row.sqnr_encrypted_domain_db = sqnr_db(encrypted, coarse_recon);
  } catch (const DistortionZero&) {
    // bits == q1_bits: the coarse stage is lossless and the encrypted-domain
    // SQNR is unbounded; leave the field absent.
  }
  return row;
}

}  // namespace

const char* quantizer_name(QuantizerKind kind) {
  switch (kind) {
    case QuantizerKind::uniform:
      return "uniform";
    case QuantizerKind::nonuniform:
      return "nonuniform";
    case QuantizerKind::chaotic:
      return "chaotic";
  }
  return "unknown";
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.bits_min < 1 || config.bits_max > 12 ||
      config.bits_min > config.bits_max) {
    throw ParameterOutOfRange("bits range must lie within [1, 12]");
  }
  if (config.quantizers.empty()) {
    throw ParameterOutOfRange("at least one quantizer must be selected");
  }
  const bool wants_chaotic =
      std::find(config.quantizers.begin(), config.quantizers.end(),
                QuantizerKind::chaotic) != config.quantizers.end();
  if (wants_chaotic) {
    if (config.q1_bits < 1 || config.q1_bits > 16) {
      throw ParameterOutOfRange("q1_bits must lie in [1, 16]");
    }
    if (config.bits_max > config.q1_bits) {
      throw ParameterOutOfRange(
          "every swept bit depth must be <= q1_bits for the chaotic "
          "quantizer");
    }
    validate_key(config.key);
  }

  const MaterializedSource src = materialize(config.source);
  if (src.buffer.samples.empty()) {
    throw ParameterOutOfRange("sweep source is empty");
  }
  const double xmax = resolve_xmax(config.xmax_policy, src);

  // Fixed (quantizer, bits) order; parallel measurement, ordered collection.
  std::vector<QuantizerKind> kinds = {QuantizerKind::uniform,
                                      QuantizerKind::nonuniform,
                                      QuantizerKind::chaotic};
  std::erase_if(kinds, [&](QuantizerKind k) {
    return std::find(config.quantizers.begin(), config.quantizers.end(), k) ==
           config.quantizers.end();
  });

  std::vector<std::future<SweepRow>> futures;
  for (QuantizerKind kind : kinds) {
    for (int bits = config.bits_min; bits <= config.bits_max; ++bits) {
      futures.push_back(std::async(std::launch::async, [&, kind, bits] {
        switch (kind) {
          case QuantizerKind::uniform:
            return measure_uniform(src, bits, xmax);
          case QuantizerKind::nonuniform:
            return measure_nonuniform(src, bits, xmax);
          default:
            return measure_chaotic(src, bits, xmax, config.key,
                                   config.q1_bits);
        }
      }));
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) {
    rows.push_back(f.get());
  }
  return rows;
}

void export_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "source,quantizer,bits,sqnr_db,sqnr_encrypted_domain_db\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", row.sqnr_db);
    out << row.source_label << ',' << quantizer_name(row.quantizer) << ','
        << row.bits << ',' << buf << ',';
    if (row.sqnr_encrypted_domain_db) {
      std::snprintf(buf, sizeof(buf), "%.17g", *row.sqnr_encrypted_domain_db);
      out << buf;
    }
    out << '\n';
  }
}

void export_csv(const std::vector<SweepRow>& rows,
                const std::filesystem::path& path) {
  if (rows.empty()) {
    throw EmptyResult("no sweep rows to export");
  }
  std::ofstream out(path);
  if (!out) {
    throw IoFailure("cannot create file: " + path.string());
  }
  export_csv(rows, out);
  if (!out.flush()) {
    throw IoFailure("failed to write file: " + path.string());
  }
}

std::string delta_report(const std::vector<SweepRow>& rows) {
  if (rows.empty()) {
    throw EmptyResult("no sweep rows to report on");
  }
  const std::string& label = rows.front().source_label;
  int bits_lo = rows.front().bits;
  int bits_hi = rows.front().bits;
  std::map<QuantizerKind, std::pair<double, int>> decoded_mean;
  double encrypted_sum = 0.0;
  int encrypted_count = 0;
  for (const auto& row : rows) {
    bits_lo = std::min(bits_lo, row.bits);
    bits_hi = std::max(bits_hi, row.bits);
    auto& [sum, count] = decoded_mean[row.quantizer];
    sum += row.sqnr_db;
    ++count;
    if (row.sqnr_encrypted_domain_db) {
      encrypted_sum += *row.sqnr_encrypted_domain_db;
      ++encrypted_count;
    }
  }

  const bool is_laplacian = label == "laplacian";
  const double ref_vs_uniform = is_laplacian ? 3.0 : 2.5;
  const double ref_vs_nonuniform = is_laplacian ? 1.0 : 0.8;

  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "sweep report: source=%s bits=%d..%d\n",
                label.c_str(), bits_lo, bits_hi);
  out << buf;
  out << "mean sqnr_db over the swept range (decoded output):\n";
  for (QuantizerKind kind : {QuantizerKind::uniform, QuantizerKind::nonuniform,
                             QuantizerKind::chaotic}) {
    const auto it = decoded_mean.find(kind);
    if (it == decoded_mean.end()) {
      continue;
    }
    std::snprintf(buf, sizeof(buf), "  %-11s %8.2f dB\n",
                  quantizer_name(kind), it->second.first / it->second.second);
    out << buf;
  }
  if (encrypted_count > 0) {
    std::snprintf(buf, sizeof(buf),
                  "  %-11s %8.2f dB (chaotic, encrypted domain)\n", "",
                  encrypted_sum / encrypted_count);
    out << buf;
  }

  const auto chaotic = decoded_mean.find(QuantizerKind::chaotic);
  if (chaotic != decoded_mean.end()) {
    const double chaotic_mean =
        chaotic->second.first / chaotic->second.second;
    const double chaotic_enc_mean =
        encrypted_count > 0 ? encrypted_sum / encrypted_count : 0.0;
    const struct {
      QuantizerKind baseline;
      double reference;
    } comparisons[] = {{QuantizerKind::uniform, ref_vs_uniform},
                       {QuantizerKind::nonuniform, ref_vs_nonuniform}};
    for (const auto& cmp : comparisons) {
      const auto base = decoded_mean.find(cmp.baseline);
      if (base == decoded_mean.end()) {
        continue;
      }
      const double base_mean = base->second.first / base->second.second;
      std::snprintf(buf, sizeof(buf),
                    "delta chaotic-%s: %+.2f dB decoded domain, %+.2f dB "
                    "encrypted domain (reference %+.1f dB)\n",
                    quantizer_name(cmp.baseline), chaotic_mean - base_mean,
                    encrypted_count > 0 ? chaotic_enc_mean - base_mean : 0.0,
                    cmp.reference);
      out << buf;
    }
  }
  return out.str();
}

}  // namespace cqz
