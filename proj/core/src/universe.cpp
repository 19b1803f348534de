#include "fproc/universe.hpp"

#include "fproc/errors.hpp"

#include <algorithm>

namespace fproc {

ExecutionUniverse::ExecutionUniverse(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty())
        throw ValidationError("execution universe must contain at least one label");
    for (const auto& l : labels_) {
        if (l.empty())
            throw ValidationError("execution labels must be non-empty");
        if (std::count(labels_.begin(), labels_.end(), l) > 1)
            throw ValidationError("duplicate execution label '" + l + "'");
    }
}

std::optional<std::size_t> ExecutionUniverse::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return i;
    return std::nullopt;
}

UniversePtr make_universe(std::vector<std::string> labels) {
    return std::make_shared<const ExecutionUniverse>(std::move(labels));
}

} // namespace fproc
