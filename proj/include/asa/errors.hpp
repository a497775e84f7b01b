#pragma once

#include <stdexcept>
#include <string>

namespace asa {

// Bad user input: unparsable grammar, malformed JSON, out-of-range parameters.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A structural contract was violated: non-group table, non-equivariant map,
// composite of differentials nonzero, unsolvable lattice membership, ...
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace asa
