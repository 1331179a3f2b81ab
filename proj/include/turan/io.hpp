#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "turan/combinat.hpp"
#include "turan/constructor.hpp"
#include "turan/hypergraph.hpp"

namespace turan {

// On-disk description of a covering system (JSON, format_version 1).
// Fields are serialized in a fixed canonical order with edges sorted by
// colex rank, so serialize(read(f)) == f for canonical files.
struct SystemFile {
  int format_version = 1;
  int n = 0, r = 0, s = 0;
  // meta: construction echo
  int R = 0;
  std::string lemma;   // "main" / "general" / "" for imports
  std::string mode;    // "random" / "derandomized" / "import"
  std::string beta;    // exact rational as "num/den" ("" when unknown)
  std::string c;
  std::string mu;
  std::uint64_t seed = 0;
  std::uint64_t size = 0;
  std::string ledger_bound;  // exact rational as "num/den" ("" when unknown)
  std::string construction_timestamp;
  std::vector<Subset> edges;  // colex order
};

// Canonical rational rendering used in files: "num/den" in lowest terms
// ("num" alone when den == 1), and its inverse.
std::string rat_to_fraction(const Rat& q);
Rat rat_from_fraction(const std::string& s);

std::string now_utc_iso8601();

// Snapshot of a materialized system under the config that built it.
SystemFile make_system_file(const TuranSystem& sys, const ConstructionConfig& cfg,
                            const std::string& timestamp);

std::string serialize_system_file(const SystemFile& f);
void write_system_file(const SystemFile& f, const std::string& path);

// Strict parse + validation; throws SystemFileError on any malformation.
SystemFile read_system_file_json(const std::string& path);

// Plain-text import: header line "n r s size", then one edge per line as
// space-separated vertices.
SystemFile read_system_file_text(const std::string& path);

// Dispatches on the first non-space byte ('{' = JSON, else text).
SystemFile read_system_file(const std::string& path);

RGraph graph_from_file(const SystemFile& f);

}  // namespace turan
