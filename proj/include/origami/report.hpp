// Deterministic JSON certificate reports: sorted keys, exact decimals as
// strings, SHA-256 digests of the input files, no timestamps.

#pragma once

#include "origami/certify_embed.hpp"
#include "origami/certify_flat.hpp"
#include "origami/jacobian/expansion.hpp"
#include "origami/search.hpp"

#include <map>
#include <string>

namespace origami {

inline constexpr const char* kToolVersion = "origami 1.0.0";

struct ReportContext {
  std::map<std::string, std::string> inputs;  // role -> sha256 of the file bytes
  int precision = kDefaultDigits;
};

/// Adds sha256(read_file(path)) under `role`.
void add_input(ReportContext& ctx, const std::string& role, const std::string& path);

std::string flatness_report(const ReportContext& ctx, const FlatnessCertificate& c);
std::string embedding_report(const ReportContext& ctx, const EmbeddingCertificate& c, const EmbedParameters& p);
std::string expansion_report(const ReportContext& ctx, const ExpansionRun& run);
std::string existence_report(const ReportContext& ctx, const FlatnessCertificate& flat,
                             const EmbeddingCertificate& embed, const EmbedParameters& ep, const ExpansionRun& run,
                             const ExistenceReport& existence);
std::string search_report(const ReportContext& ctx, const SearchConfig& cfg, const HillClimbResult& r,
                          const std::string& output_sha256);
std::string refine_report(const ReportContext& ctx, const SearchConfig& cfg, const NewtonResult& r,
                          const std::string& output_sha256);

}  // namespace origami
