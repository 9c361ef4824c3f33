#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "pir/message_store.hpp"

namespace pir {

// One database actor: a TCP listener that answers QUERY frames against its
// local store replica. It keeps no per-client state and has no channel to
// any other database; its entire observable behavior is the pure function
// answer_query_bytes(store, db_index, query).
class DatabaseServer {
public:
    DatabaseServer(MessageStore store, std::uint16_t db_index);
    ~DatabaseServer();

    DatabaseServer(const DatabaseServer&) = delete;
    DatabaseServer& operator=(const DatabaseServer&) = delete;

    // Bind and listen; port 0 picks an ephemeral port. Returns the bound port.
    std::uint16_t listen(const std::string& host, std::uint16_t port);

    // Accept loop; blocks until stop() is called from another thread.
    void run();

    // Convenience for tests: run() on a background thread.
    void start_background();
    void stop();

    std::uint16_t port() const { return port_; }

private:
    void handle_connection(int fd);

    MessageStore store_;
    std::uint16_t db_index_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::thread background_;
};

}  // namespace pir
