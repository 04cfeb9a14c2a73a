#pragma once

// JSON schemas for representations and transducers.
//
// Representation: { "q": int, "matrices": [[[rational]]], "v0": [rational],
//                   "e": [rational] (optional), "mode": "sequence"|"matrix" }
// Transducer:     { "q": int, "states": int,
//                   "transitions": [[ [target, output], ... per digit ] per state],
//                   "final": [output per state] }
// A rational is an integer, a "p/q" string, or {"re": r, "im": r}.

#include <json.hpp>

#include <string>

#include "regseq/linrep.hpp"
#include "regseq/transducer.hpp"

namespace regseq::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GRational parse_scalar(const nlohmann::json& j, const std::string& where);
nlohmann::json emit_scalar(const GRational& v);

LinearRepresentation parse_representation(const nlohmann::json& j);
nlohmann::json emit_representation(const LinearRepresentation& rep);

transducer::Transducer parse_transducer(const nlohmann::json& j);
nlohmann::json emit_transducer(const transducer::Transducer& t);

LinearRepresentation load_representation(const std::string& path);
transducer::Transducer load_transducer(const std::string& path);

}  // namespace regseq::io
