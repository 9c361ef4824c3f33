#include "pir/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>

#include "pir/frame.hpp"
#include "pir/session.hpp"

namespace pir {

namespace {

bool send_all(int fd, const std::vector<std::uint8_t>& bytes) {
    std::size_t sent = 0;
    while (sent < bytes.size()) {
        ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
        if (n <= 0) return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

DatabaseServer::DatabaseServer(MessageStore store, std::uint16_t db_index)
    : store_(std::move(store)), db_index_(db_index) {
    if (db_index_ < 1) throw std::invalid_argument("db_index must be >= 1");
}

DatabaseServer::~DatabaseServer() { stop(); }

std::uint16_t DatabaseServer::listen(const std::string& host, std::uint16_t port) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw std::runtime_error("socket() failed");
    int reuse = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof(reuse));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        throw std::runtime_error("bad listen address: " + host);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        throw std::runtime_error("bind failed on " + host + ":" + std::to_string(port));
    }
    if (::listen(listen_fd_, 16) != 0) throw std::runtime_error("listen failed");

    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    return port_;
}

void DatabaseServer::run() {
    if (listen_fd_ < 0) throw std::runtime_error("listen() must be called first");
    while (!stopping_.load()) {
        int client = ::accept(listen_fd_, nullptr, nullptr);
        if (client < 0) {
            if (stopping_.load()) break;
            continue;
        }
        // Connections are short-lived request/response exchanges; handling
        // them inline keeps the actor single-threaded and deterministic.
        handle_connection(client);
        ::close(client);
    }
}

void DatabaseServer::handle_connection(int fd) {
    FrameDecoder decoder;
    std::uint8_t buffer[4096];
    while (true) {
        std::optional<Frame> frame;
        try {
            frame = decoder.next();
        } catch (const ProtocolError& e) {
            send_all(fd, encode_frame(make_error_frame(ServeErrorCode::malformed, e.what())));
            return;  // protocol violation: drop the connection
        }
        if (!frame) {
            ssize_t n = ::recv(fd, buffer, sizeof(buffer), 0);
            if (n <= 0) return;  // peer closed or read error
            decoder.feed(std::span<const std::uint8_t>(buffer, static_cast<std::size_t>(n)));
            continue;
        }
        if (frame->type != FrameType::query) {
            send_all(fd, encode_frame(make_error_frame(ServeErrorCode::malformed,
                                                       "expected a QUERY frame")));
            return;
        }
        try {
            std::vector<std::uint8_t> answer =
                answer_query_bytes(store_, db_index_, frame->payload);
            Frame reply;
            reply.type = FrameType::answer;
            reply.payload = std::move(answer);
            if (!send_all(fd, encode_frame(reply))) return;
        } catch (const ServeError& e) {
            send_all(fd, encode_frame(make_error_frame(e.code, e.what())));
            return;
        }
    }
}

void DatabaseServer::start_background() {
    background_ = std::thread([this] { run(); });
}

void DatabaseServer::stop() {
    bool expected = false;
    if (stopping_.compare_exchange_strong(expected, true)) {
        if (listen_fd_ >= 0) {
            ::shutdown(listen_fd_, SHUT_RDWR);
            ::close(listen_fd_);
            listen_fd_ = -1;
        }
    }
    if (background_.joinable()) background_.join();
}

}  // namespace pir
