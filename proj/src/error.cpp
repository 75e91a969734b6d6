#include "hypolo/error.hpp"

namespace hypolo {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::OutsideDisk: return "OutsideDisk";
        case Errc::NonFinite: return "NonFinite";
        case Errc::InvalidSigma: return "InvalidSigma";
        case Errc::InvalidProbability: return "InvalidProbability";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::KTooLarge: return "KTooLarge";
        case Errc::EmptyDataset: return "EmptyDataset";
        case Errc::UnknownId: return "UnknownId";
        case Errc::ParseError: return "ParseError";
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::InvalidSpec: return "InvalidSpec";
        case Errc::DegenerateLabels: return "DegenerateLabels";
        case Errc::MismatchedIds: return "MismatchedIds";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace hypolo
