#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dimerctl {

namespace detail {
inline std::string join_issues(const std::vector<std::string>& issues) {
    std::string out = "invalid configuration";
    for (const auto& issue : issues) {
        out += "; ";
        out += issue;
    }
    return out;
}
}  // namespace detail

/// Configuration rejected before any work happened; carries every issue
/// found, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(detail::join_issues(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

/// A run that started and then failed; the message carries seed and time
/// context where available.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File read/write failure; the message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dimerctl
