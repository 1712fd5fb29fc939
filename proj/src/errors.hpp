#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace aaudit {

// Error taxonomy shared by the C++ core, the C API status codes, and the
// CLI exit-code mapping (1 = input/parse, 2 = precondition/model).
enum class errc {
    ok = 0,
    invalid_argument,
    dimension_mismatch,
    size_cap_exceeded,
    insufficient_data,
    degenerate_sample,
    model_violation,
    singularity,
    empty_distribution,
    parse_error,
    io_error,
    internal_error,
};

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, std::string message) {
    throw error(code, std::move(message));
}

inline const char* errc_name(errc code) noexcept {
    switch (code) {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid argument";
    case errc::dimension_mismatch: return "dimension mismatch";
    case errc::size_cap_exceeded: return "size cap exceeded";
    case errc::insufficient_data: return "insufficient data";
    case errc::degenerate_sample: return "degenerate sample";
    case errc::model_violation: return "model violation";
    case errc::singularity: return "singularity";
    case errc::empty_distribution: return "empty distribution";
    case errc::parse_error: return "parse error";
    case errc::io_error: return "io error";
    case errc::internal_error: return "internal error";
    }
    return "unknown";
}

} // namespace aaudit
