#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chromatic {

// A graded piece has an infinite monomial basis: some generator direction is
// unbounded below while another one is unbounded above, so exponent trades
// keep the degree fixed.
struct NonFiniteDegreewise : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Defensive: a single indecomposable would land on both sides of a two-row
// assembly step.  The cyclic-module rewrite rules make this impossible;
// reaching it means a rule was violated upstream.
struct AmbiguousExtension : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d(k+1) . d(k) != 0 for a complex handed to the cohomology routines.
struct NonZeroComposite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The power tower ran out before the colimit detector could commit to an
// answer.
struct NoStabilization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The module lies outside the class the exact-arithmetic oracle can present
// by finitely generated Z_(p) data.
struct UnsupportedModule : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// abutment_report called on a page whose collapse is undetermined.
struct NotCollapsed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A generator index exceeds the ring truncation.
struct TruncationExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& message)
        : std::runtime_error(message), position(pos) {}
};

}  // namespace chromatic
