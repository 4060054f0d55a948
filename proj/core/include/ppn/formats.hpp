#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ppn/channels.hpp"
#include "ppn/pocklington.hpp"
#include "ppn/prefix_search.hpp"
#include "ppn/reproduction.hpp"
#include "ppn/sieve.hpp"

// JSON encodings. Big integers are always decimal strings. Every parse_*
// function throws Error(ParseError) on malformed input, and emit -> parse ->
// emit reproduces the same bytes.
namespace ppn {

std::string to_json(const PocklingtonCertificate& cert);
PocklingtonCertificate parse_pocklington_certificate(std::string_view json);

std::string to_json(const CertReport& report);

std::string to_json(const SieveExclusionCertificate& cert);
SieveExclusionCertificate parse_exclusion_certificate(std::string_view json);

std::string to_json(const SearchSnapshot& snapshot);
SearchSnapshot parse_snapshot(std::string_view json);

/// Writes to a sibling temporary file and renames it into place.
void write_snapshot_file(const std::filesystem::path& path, const SearchSnapshot& snapshot);
SearchSnapshot read_snapshot_file(const std::filesystem::path& path);

std::string to_json(const AuditReport& report);
AuditReport parse_audit_report(std::string_view json);

std::string to_json(const ChannelAudit& audit);

std::string to_json(const ReproductionReport& report);
ReproductionReport parse_reproduction_report(std::string_view json);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ppn
