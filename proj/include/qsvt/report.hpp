#pragma once

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace qsvt {

/// One named residual and the threshold it must not exceed. NaN never passes.
struct Residual {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;

    [[nodiscard]] bool passed() const noexcept { return value <= threshold; }
};

/// Outcome of a verification routine: residuals plus free-form notes for
/// informational conditions (degenerate spectra, undefined eigenvectors).
struct CheckReport {
    std::vector<Residual> residuals;
    std::vector<std::string> notes;

    void add(std::string name, double value, double threshold) {
        residuals.push_back({std::move(name), value, threshold});
    }

    void note(std::string text) { notes.push_back(std::move(text)); }

    void merge(const CheckReport &other, const std::string &prefix = {}) {
        for (const auto &r : other.residuals) residuals.push_back({prefix + r.name, r.value, r.threshold});
        for (const auto &n : other.notes) notes.push_back(prefix + n);
    }

    [[nodiscard]] bool passed() const noexcept {
        return std::all_of(residuals.begin(), residuals.end(), [](const Residual &r) { return r.passed(); });
    }

    /// Largest residual value; NaN if any residual is NaN.
    [[nodiscard]] double worst() const noexcept {
        double w = 0.0;
        for (const auto &r : residuals) {
            if (r.value != r.value) return std::numeric_limits<double>::quiet_NaN();
            w = std::max(w, r.value);
        }
        return w;
    }

    /// Largest value/threshold ratio; a report passes iff this is <= 1.
    [[nodiscard]] double worst_ratio() const noexcept {
        double w = 0.0;
        for (const auto &r : residuals) {
            const double ratio = r.value / r.threshold;
            if (ratio != ratio) return std::numeric_limits<double>::quiet_NaN();
            w = std::max(w, ratio);
        }
        return w;
    }

    [[nodiscard]] const Residual *find(const std::string &name) const noexcept {
        for (const auto &r : residuals)
            if (r.name == name) return &r;
        return nullptr;
    }
};

inline std::ostream &operator<<(std::ostream &os, const CheckReport &rep) {
    for (const auto &r : rep.residuals)
        os << (r.passed() ? "  ok   " : "  FAIL ") << r.name << ": " << r.value << " (<= " << r.threshold
           << ")\n";
    for (const auto &n : rep.notes) os << "  note " << n << '\n';
    return os;
}

} // namespace qsvt
