#pragma once

// JSON and CSV encodings of every result type. Exact rationals are written
// as {"num": "...", "den": "..."} with decimal integer strings, never as JSON
// numbers.

#include "cchain/diagnostics.hpp"
#include "cchain/exact_core.hpp"
#include "cchain/moments.hpp"
#include "cchain/montecarlo.hpp"
#include "cchain/spectral.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cchain {

using Json = nlohmann::ordered_json;

/// Flat table for CSV output.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& table);

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// Scientific notation with `digits` significant digits.
std::string decimal(const BigFloat& x, unsigned digits);
std::string decimal(double x);

template <class T>
Json pmf_json(const VertexPmf<T>& pmf, unsigned digits);
template <class T>
Table pmf_table(const VertexPmf<T>& pmf, unsigned digits);

/// Endpoints as exact decimals (they are dyadic), midpoints to `digits`.
Json roots_json(const RootEnclosureSet& set, unsigned digits);
Table roots_table(const RootEnclosureSet& set, unsigned digits);

Json factorization_json(const BernoulliFactorization& f, unsigned digits);
Table factorization_table(const BernoulliFactorization& f, unsigned digits);

template <class T>
Json cumulants_json(const CumulantReport<T>& r, unsigned digits);
template <class T>
Table cumulants_table(const CumulantReport<T>& r, unsigned digits);

Json bound_json(const std::vector<CumulantBoundEntry>& entries);
Json pf_json(const PfReport& r);

Json simulation_json(const SimResult& r);
Table simulation_table(const SimResult& r);
Json comparison_json(const EmpiricalComparison& c);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Parameters and checksum of one run; the checksum covers the exact bytes
/// of the main output.
struct RunManifest {
  std::string subcommand;
  Json parameters = Json::object();
  std::string version = CCHAIN_VERSION;
  std::string checksum;
};

Json manifest_json(const RunManifest& m);

}  // namespace cchain
