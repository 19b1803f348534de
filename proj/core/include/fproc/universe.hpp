#ifndef FPROC_UNIVERSE_HPP
#define FPROC_UNIVERSE_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fproc {

/// The finite set E of executions a contract ranges over. Labels are
/// case-sensitive tokens; their order is fixed at construction and is the
/// canonical order for all deterministic output.
class ExecutionUniverse {
public:
    explicit ExecutionUniverse(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }

    std::optional<std::size_t> index_of(std::string_view label) const;

    bool operator==(const ExecutionUniverse& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
};

using UniversePtr = std::shared_ptr<const ExecutionUniverse>;

UniversePtr make_universe(std::vector<std::string> labels);

} // namespace fproc

#endif // FPROC_UNIVERSE_HPP
