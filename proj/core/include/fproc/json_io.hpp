#ifndef FPROC_JSON_IO_HPP
#define FPROC_JSON_IO_HPP

#include "fproc/engine.hpp"
#include "fproc/process.hpp"

#include <string>
#include <string_view>

namespace fproc {

/// Process wire format, deterministic and bit-exact under round-trip:
///
///   { "universe": ["a","b"],
///     "delta": {"a": "1", "b": "1/2"},
///     "gamma": {"b": "1"} }
///
/// Zero-valued entries are omitted; rationals are lowest-terms strings; map
/// keys appear in universe order.
std::string to_json(const FuzzyProcess& p);

/// Inverse of to_json. Throws ValidationError on malformed JSON, unknown
/// labels or out-of-range values.
FuzzyProcess process_from_json(std::string_view text);

/// Verdict wire format:
///
///   { "check": "relative-correctness", "holds": false, "level": "support",
///     "warnings": [...], "witness": {"label": "b"} }
///
/// The witness object carries "label", "tester" (a process) or
/// "level"/"component" depending on the check; it is omitted when the check
/// holds.
std::string to_json(const Verdict& verdict);

} // namespace fproc

#endif // FPROC_JSON_IO_HPP
