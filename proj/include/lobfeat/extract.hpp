#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lobfeat/feat_lob.hpp"
#include "lobfeat/feat_quant.hpp"
#include "lobfeat/feat_technical.hpp"

namespace lobfeat {

inline constexpr int kTotalFeatureCount =
    kLobFeatureCount + kTechnicalFeatureCount + kQuantFeatureCount;  // 273

/// Feature-major matrix: row d is one feature over all N blocks. Warm-up and
/// otherwise undefined entries are NaN; a block is a usable sample only when
/// every feature is finite there.
struct FeatureMatrix {
    std::vector<std::string> names;  // D entries
    std::vector<Series> rows;        // D rows of length N

    std::size_t feature_count() const { return rows.size(); }
    std::size_t sample_count() const { return rows.empty() ? 0 : rows.front().size(); }

    std::vector<bool> valid_mask() const {
        std::vector<bool> mask(sample_count(), true);
        for (const auto& r : rows)
            for (std::size_t t = 0; t < r.size(); ++t)
                if (!warm(r[t])) mask[t] = false;
        return mask;
    }
};

struct ExtractOptions {
    bool dpo_standard_form = false;
    int intensity_long_window = 50;
    QuantConfig quant;
};

/// All 273 features over the block sequence, in the fixed manifest order
/// (raw book, then technical, then quantitative).
inline FeatureMatrix extract_features(const std::vector<Block>& blocks,
                                      const ExtractOptions& opt = {}) {
    FeatureMatrix m;
    auto absorb = [&](FeatureBlock&& fb) {
        for (std::size_t i = 0; i < fb.names.size(); ++i) {
            m.names.push_back(std::move(fb.names[i]));
            m.rows.push_back(std::move(fb.columns[i]));
        }
    };
    absorb(lob_features(blocks, opt.intensity_long_window));
    absorb(technical_features(BarSeries::from_blocks(blocks), opt.dpo_standard_form));
    absorb(quant_features(blocks, opt.quant));
    if (m.feature_count() != static_cast<std::size_t>(kTotalFeatureCount))
        throw std::logic_error("feature manifest size mismatch");
    return m;
}

// ---- binary feature file --------------------------------------------------
// Little-endian header {magic, version, D, N, manifest offset}, then D*N
// row-major 64-bit floats, then a JSON manifest blob at the recorded offset.

inline constexpr std::uint32_t kFeatureFileMagic = 0x4642'4F4C;  // "LOBF"
inline constexpr std::uint32_t kFeatureFileVersion = 1;

inline void write_feature_file(const std::string& path, const FeatureMatrix& m,
                               const nlohmann::json& extra_manifest = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const std::uint64_t D = m.feature_count(), N = m.sample_count();
    const std::uint64_t header_bytes = 4 + 4 + 8 + 8 + 8;
    const std::uint64_t manifest_offset = header_bytes + D * N * sizeof(double);
    out.write(reinterpret_cast<const char*>(&kFeatureFileMagic), 4);
    out.write(reinterpret_cast<const char*>(&kFeatureFileVersion), 4);
    out.write(reinterpret_cast<const char*>(&D), 8);
    out.write(reinterpret_cast<const char*>(&N), 8);
    out.write(reinterpret_cast<const char*>(&manifest_offset), 8);
    for (const auto& row : m.rows)
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(double)));
    nlohmann::json manifest = extra_manifest;
    manifest["names"] = m.names;
    out << manifest.dump();
    if (!out) throw std::runtime_error("short write to " + path);
}

inline FeatureMatrix read_feature_file(const std::string& path,
                                       nlohmann::json* manifest_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint32_t magic = 0, version = 0;
    std::uint64_t D = 0, N = 0, manifest_offset = 0;
    in.read(reinterpret_cast<char*>(&magic), 4);
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&D), 8);
    in.read(reinterpret_cast<char*>(&N), 8);
    in.read(reinterpret_cast<char*>(&manifest_offset), 8);
    if (!in || magic != kFeatureFileMagic)
        throw std::runtime_error(path + ": not a feature file");
    if (version != kFeatureFileVersion)
        throw std::runtime_error(path + ": unsupported feature file version");
    FeatureMatrix m;
    m.rows.assign(D, Series(N));
    for (auto& row : m.rows) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(N * sizeof(double)));
        if (!in) throw std::runtime_error(path + ": truncated feature data");
    }
    in.seekg(static_cast<std::streamoff>(manifest_offset));
    nlohmann::json manifest = nlohmann::json::parse(in);
    m.names = manifest.at("names").get<std::vector<std::string>>();
    if (m.names.size() != D) throw std::runtime_error(path + ": manifest/header mismatch");
    if (manifest_out) *manifest_out = std::move(manifest);
    return m;
}

}  // namespace lobfeat
