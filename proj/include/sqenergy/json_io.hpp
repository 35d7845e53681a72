#pragma once

#include <json.hpp>

#include <string>

#include "sqenergy/certifier.hpp"
#include "sqenergy/enumeration.hpp"
#include "sqenergy/spectral.hpp"

namespace sqenergy {

using Json = nlohmann::ordered_json;

// {n, m, s_plus, s_minus, s, energy, zero_threshold, eigenvalues}
Json to_json(const EnergyReport& r);

// Same column order as the JSON, without eigenvalues.
std::string energy_csv_header();
std::string energy_csv_row(const EnergyReport& r);

// Root node object: kind, vertices, claimed_bound, then the kind's payload.
Json to_json(const Certificate& cert);
Json to_json(const CertificateNode& node);

// Inverse of to_json(Certificate). n is the order of the graph the
// certificate refers to. Throws CertificateError on malformed input
// (unknown kind, non-ascending or out-of-range vertices, missing fields).
Certificate certificate_from_json(const Json& j, std::size_t n, BoundTarget target);

Json to_json(const VerificationReport& report);
Json to_json(const NodeCheck& check);

// Wall time is omitted unless requested so repeated runs stay byte-identical.
Json to_json(const SweepSummary& s, bool include_timing = false);

Json to_json(const PartitionSlack& slack);

}  // namespace sqenergy
