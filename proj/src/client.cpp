#include "pir/client.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <future>

#include "pir/serialize.hpp"

namespace pir {

namespace {

struct SocketGuard {
    int fd = -1;
    ~SocketGuard() {
        if (fd >= 0) ::close(fd);
    }
};

int connect_to(const Endpoint& endpoint) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    std::string port = std::to_string(endpoint.port);
    if (::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &result) != 0) {
        throw TransportError("cannot resolve " + endpoint.host);
    }
    int fd = -1;
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(result);
    if (fd < 0) {
        throw TransportError("cannot connect to " + endpoint.host + ":" + port);
    }
    return fd;
}

}  // namespace

Endpoint parse_endpoint(const std::string& text) {
    std::size_t colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
        throw std::invalid_argument("endpoint must be host:port, got '" + text + "'");
    }
    Endpoint e;
    e.host = text.substr(0, colon);
    unsigned long port = std::stoul(text.substr(colon + 1));
    if (port == 0 || port > 65535) throw std::invalid_argument("port out of range");
    e.port = static_cast<std::uint16_t>(port);
    return e;
}

Frame exchange(const Endpoint& endpoint, const Frame& request) {
    SocketGuard sock{connect_to(endpoint)};
    std::vector<std::uint8_t> encoded = encode_frame(request);
    std::size_t sent = 0;
    while (sent < encoded.size()) {
        ssize_t n = ::send(sock.fd, encoded.data() + sent, encoded.size() - sent, MSG_NOSIGNAL);
        if (n <= 0) throw TransportError("send failed");
        sent += static_cast<std::size_t>(n);
    }
    FrameDecoder decoder;
    std::uint8_t buffer[4096];
    while (true) {
        std::optional<Frame> frame;
        try {
            frame = decoder.next();
        } catch (const ProtocolError& e) {
            throw TransportError(std::string("bad reply frame: ") + e.what());
        }
        if (frame) return *frame;
        ssize_t n = ::recv(sock.fd, buffer, sizeof(buffer), 0);
        if (n <= 0) throw TransportError("connection closed before a full reply");
        decoder.feed(std::span<const std::uint8_t>(buffer, static_cast<std::size_t>(n)));
    }
}

RetrievalResult retrieve(const SchemeParams& params, std::uint16_t desired,
                         const std::vector<Endpoint>& endpoints,
                         const RandomnessToken& token) {
    auto start = std::chrono::steady_clock::now();
    if (endpoints.size() != params.n) {
        throw std::invalid_argument("need exactly one endpoint per database");
    }
    auto scheme = make_scheme(params);
    std::vector<Query> queries = scheme->query_gen(params, desired, token);
    std::vector<std::vector<std::uint8_t>> query_bytes(params.n);
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        query_bytes[j - 1] = serialize_query(queries[j - 1]);
    }

    // Issue the n exchanges concurrently; every database must answer before
    // any decoding happens.
    std::vector<std::future<Frame>> replies;
    replies.reserve(params.n);
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        replies.push_back(std::async(std::launch::async, [&, j] {
            Frame request;
            request.type = FrameType::query;
            request.payload = query_bytes[j - 1];
            return exchange(endpoints[j - 1], request);
        }));
    }
    std::vector<std::vector<std::uint8_t>> answer_bytes(params.n);
    std::string first_failure;
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        try {
            Frame reply = replies[j - 1].get();
            if (reply.type == FrameType::error) {
                auto [code, message] = parse_error_frame(reply);
                throw TransportError("database " + std::to_string(j) + " refused: " + message);
            }
            if (reply.type != FrameType::answer) {
                throw TransportError("database " + std::to_string(j) +
                                     " sent an unexpected frame type");
            }
            answer_bytes[j - 1] = std::move(reply.payload);
        } catch (const TransportError& e) {
            if (first_failure.empty()) first_failure = e.what();
        }
    }
    if (!first_failure.empty()) throw TransportError(first_failure);

    RetrievalResult result = assemble_and_decode(params, desired, token,
                                                 std::move(query_bytes),
                                                 std::move(answer_bytes));
    result.transcript.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
}

RetrievalResult retrieve(const SchemeParams& params, std::uint16_t desired,
                         const std::vector<Endpoint>& endpoints, Entropy& entropy) {
    auto scheme = make_scheme(params);
    RandomnessToken token = scheme->draw_randomness(params, entropy);
    return retrieve(params, desired, endpoints, token);
}

}  // namespace pir
