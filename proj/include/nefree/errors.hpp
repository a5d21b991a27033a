#pragma once

#include <stdexcept>
#include <string>

namespace nefree {

// Error taxonomy shared by the whole library. Everything derives from
// nefree::error so callers can catch broadly; the CLI maps subclasses to
// distinct exit codes (parse-ish 2, size caps 3, precondition failures 4).

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// input decoding / construction from user data
struct parse_error : error {
    using error::error;
};
struct cycle_error : parse_error {
    using parse_error::parse_error;
};
struct index_error : parse_error {
    using parse_error::parse_error;
};
struct arity_error : parse_error {
    using parse_error::parse_error;
};

// hard size caps on exponential-cost oracles
struct size_error : error {
    using error::error;
};

// violated operation preconditions
struct precondition_error : error {
    using error::error;
};
struct not_strong_error : precondition_error {
    using precondition_error::precondition_error;
};
struct not_nfree_error : precondition_error {
    using precondition_error::precondition_error;
};
struct not_cograph_error : precondition_error {
    using precondition_error::precondition_error;
};
struct ccgc_error : precondition_error {
    using precondition_error::precondition_error;
};
struct anchor_error : precondition_error {
    using precondition_error::precondition_error;
};
struct regime_error : precondition_error {
    using precondition_error::precondition_error;
};

// "cannot happen" guards around facts the theory guarantees; if one of these
// fires the implementation is wrong, not the input
struct structure_error : error {
    using error::error;
};

} // namespace nefree
