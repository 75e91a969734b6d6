#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypolo {

enum class Errc {
    OutsideDisk,
    NonFinite,
    InvalidSigma,
    InvalidProbability,
    NoConvergence,
    KTooLarge,
    EmptyDataset,
    UnknownId,
    ParseError,
    DuplicateId,
    InvalidSpec,
    DegenerateLabels,
    MismatchedIds,
    InvalidConfig,
    Io,
};

std::string_view to_string(Errc code) noexcept;

/// All library failures are reported through this type; `code()` identifies
/// the failure class and `what()` carries the human readable detail
/// (offending line number, point id, ...).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          code_(code),
          detail_(detail) {}

    Errc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

}  // namespace hypolo
