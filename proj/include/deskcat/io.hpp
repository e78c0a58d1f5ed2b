#pragma once

// JSON files for categories, functors, presheaves, maps and certificates, plus
// SHA-256 digests and the run manifest. Keys are emitted sorted and every
// artifact is a single line.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "deskcat/fincat.hpp"
#include "deskcat/presheaf.hpp"
#include "deskcat/soa.hpp"

namespace deskcat::io {

using Json = nlohmann::json;

Json read_json(const std::filesystem::path& path);  // ParseError on bad syntax

/// One line, sorted keys, trailing newline.
std::string dump_line(const Json& value);

// Categories: {"objects", "morphisms":[{"name","dom","cod"}], "identities", "compose":[[g,f,gf]]}
Json category_to_json(const FinCategory& category);
CategoryPtr category_from_json(const Json& value);

/// {"builtin":"ordinals","window":n} (ordinals 0..n), {"builtin":"terminal"},
/// or an inline category.
Json base_ref(const CategoryPtr& base);
CategoryPtr resolve_base(const Json& ref);

// Functors: {"source", "target", "objects":{a:Fa}, "morphisms":{m:Fm}}
Json functor_to_json(const Functor& functor);
Functor functor_from_json(const Json& value);

// Natural transformations: {"source":functor, "target":functor, "components":{a:m}}
NatTransformation nat_from_json(const Json& value);

// Presheaves: {"base", "sets":{obj:[...]}, "actions":{mor:{elem:elem}}}; identity
// actions may be left out. A formal presheaf {"base", "shape", "labels",
// "morphism_labels"} over the ordinals is tabulated on the base window.
Json presheaf_to_json(const Presheaf& presheaf);
PresheafPtr presheaf_from_json(const Json& value);

// Maps: {"source":presheaf, "target":presheaf, "components":{obj:{elem:elem}}}
Json map_to_json(const PresheafMap& map);
PresheafMap map_from_json(const Json& value);

/// A generating class: a list of maps, or {"generators":[...]}.
std::vector<PresheafMap> class_from_json(const Json& value);

/// Self-contained: presheaves are listed once under "objects" and maps refer
/// to them by position.
Json certificate_to_json(const FactorizationCertificate& certificate);
FactorizationCertificate certificate_from_json(const Json& value);

std::string sha256_hex(const std::string& bytes);
std::string file_sha256(const std::filesystem::path& path);

/// Writes through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct RunManifest {
  std::vector<std::string> command;
  std::vector<std::filesystem::path> inputs;
  Json config;
  std::vector<std::filesystem::path> outputs;  // relative to the output directory
  double wall_clock_seconds = 0;

  /// Digests are taken from the files at the time of the call.
  Json to_json(const std::filesystem::path& out_dir) const;
};

}  // namespace deskcat::io
