#ifndef DRX_ERRORS_HPP
#define DRX_ERRORS_HPP

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace drx {

// Malformed textual input. `pos` is a byte offset into the source string.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

// Request the theory does not support (rank-1 duals, n <= m tensor Ext, ...).
// The message states the mathematical reason.
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Coefficient blow-up guard tripped.
class degree_limit_error : public std::runtime_error {
public:
    explicit degree_limit_error(long deg, long limit)
        : std::runtime_error("theta-degree " + std::to_string(deg) +
                             " exceeds abort threshold " + std::to_string(limit)) {}
};

// Runaway-computation guard. Set once at startup (CLI reads
// DRINFELD_EXT_ABORT_DEG); reads during computation are lock-free.
long abort_theta_degree() noexcept;
void set_abort_theta_degree(long limit) noexcept;

} // namespace drx

#endif
