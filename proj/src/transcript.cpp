#include "pir/transcript.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pir {

std::size_t Transcript::total_downloaded_symbols() const {
    std::size_t total = 0;
    for (const auto& db : databases) total += db.downloaded_symbols;
    return total;
}

Rational Transcript::measured_eta() const {
    if (message_symbols == 0) throw std::invalid_argument("zero-length message");
    return Rational(static_cast<std::int64_t>(total_downloaded_symbols()),
                    static_cast<std::int64_t>(message_symbols));
}

std::string Transcript::summary() const {
    std::ostringstream os;
    os << "scheme " << params.id.name() << "  k=" << params.k << " n=" << params.n
       << " field=" << params.field.name() << "\n";
    os << "blocks " << blocks << ", message symbols " << message_symbols << "\n";
    for (const auto& db : databases) {
        os << "  db " << db.db_index << ": up " << db.uploaded_bytes << " B, down "
           << db.downloaded_bytes << " B (" << db.downloaded_symbols << " symbols)\n";
    }
    os << "downloaded " << total_downloaded_symbols() << " symbols, eta = "
       << measured_eta().str() << "\n";
    os << "wall time " << wall_time.count() << " us";
    return os.str();
}

void Transcript::to_kv(std::ostream& os) const {
    os << "transcript.scheme=" << params.id.name() << "\n";
    os << "transcript.k=" << params.k << "\n";
    os << "transcript.n=" << params.n << "\n";
    os << "transcript.field=" << params.field.name() << "\n";
    os << "transcript.blocks=" << blocks << "\n";
    os << "transcript.message_symbols=" << message_symbols << "\n";
    for (const auto& db : databases) {
        std::string prefix = "transcript.db." + std::to_string(db.db_index);
        os << prefix << ".uploaded_bytes=" << db.uploaded_bytes << "\n";
        os << prefix << ".downloaded_bytes=" << db.downloaded_bytes << "\n";
        os << prefix << ".downloaded_symbols=" << db.downloaded_symbols << "\n";
    }
    os << "transcript.downloaded_symbols=" << total_downloaded_symbols() << "\n";
    os << "transcript.eta=" << measured_eta().str() << "\n";
    os << "transcript.wall_time_us=" << wall_time.count() << "\n";
}

}  // namespace pir
