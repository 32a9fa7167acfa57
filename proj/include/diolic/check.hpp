#pragma once

#include <string>
#include <vector>

namespace diolic {

/// A named nonzero quantity left over by a checker.
struct Residual {
    std::string name;
    std::string value;
    friend bool operator==(const Residual&, const Residual&) = default;
};

struct CheckReport {
    bool pass = true;
    std::vector<Residual> residuals;
    /// Reported but not part of the verdict.
    std::vector<Residual> notes;

    void fail(std::string name, std::string value) {
        pass = false;
        residuals.push_back({std::move(name), std::move(value)});
    }
    void note(std::string name, std::string value) {
        notes.push_back({std::move(name), std::move(value)});
    }
};

}  // namespace diolic
