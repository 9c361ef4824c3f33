#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pir/entropy.hpp"
#include "pir/frame.hpp"
#include "pir/session.hpp"

namespace pir {

struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Endpoint {
    std::string host;
    std::uint16_t port = 0;
};

Endpoint parse_endpoint(const std::string& text);  // "host:port"

// One request/response exchange: connect, send the frame, read one reply.
Frame exchange(const Endpoint& endpoint, const Frame& request);

// Full retrieval session against n live databases. Draws one randomness
// token, sends query j to endpoint j only (concurrently), requires all n
// answers, then decodes. Any endpoint failure aborts the session with
// TransportError and no partial decode is produced.
RetrievalResult retrieve(const SchemeParams& params, std::uint16_t desired,
                         const std::vector<Endpoint>& endpoints, Entropy& entropy);
RetrievalResult retrieve(const SchemeParams& params, std::uint16_t desired,
                         const std::vector<Endpoint>& endpoints,
                         const RandomnessToken& token);

}  // namespace pir
