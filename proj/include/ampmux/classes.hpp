#pragma once

// Equivalence-class semantics: which switching states a detection task treats
// as the same outcome, and which states it promises to discriminate at all.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ampmux/circuit.hpp"

namespace ampmux {

enum class DetectionTask {
    PhotonNumber,  ///< count switched detectors, identity irrelevant
    PixelArray,    ///< at most one detector switched, identify which
    Coincidence,   ///< identify switched detectors up to a budget n_c
    Full,          ///< identify every possible state
};

/// A detection task plus its coincidence budget where applicable.
/// Coincidence(1) partitions states exactly like PixelArray, and
/// Coincidence(n) exactly like Full.
class ApplicationMode {
public:
    [[nodiscard]] static ApplicationMode photon_number() { return {DetectionTask::PhotonNumber, 0}; }
    [[nodiscard]] static ApplicationMode pixel_array() { return {DetectionTask::PixelArray, 0}; }
    [[nodiscard]] static ApplicationMode coincidence(int budget);
    [[nodiscard]] static ApplicationMode full() { return {DetectionTask::Full, 0}; }

    [[nodiscard]] DetectionTask task() const noexcept { return task_; }
    /// Only meaningful for Coincidence.
    [[nodiscard]] int coincidence_budget() const noexcept { return budget_; }

    /// Largest switched count a state may have and still be in scope.
    [[nodiscard]] int switch_budget(int detector_count) const noexcept;

    /// Throws std::invalid_argument unless the mode is usable with n
    /// detectors (n >= 1; for Coincidence, 1 <= n_c <= n).
    void validate_for(int detector_count) const;

    [[nodiscard]] std::string name() const;

    [[nodiscard]] bool operator==(const ApplicationMode&) const = default;

private:
    ApplicationMode(DetectionTask task, int budget) : task_(task), budget_(budget) {}

    DetectionTask task_;
    int budget_;
};

/// Canonical identity of an equivalence class: either a switched-detector
/// count (photon-number task) or the sorted set of switched detector indices
/// (all identifying tasks). Label equality defines the equivalence relation.
class ClassLabel {
public:
    [[nodiscard]] static ClassLabel from_count(int count);
    [[nodiscard]] static ClassLabel from_members(std::vector<int> sorted_indices);

    [[nodiscard]] bool is_count() const noexcept { return is_count_; }
    [[nodiscard]] int count() const;
    [[nodiscard]] const std::vector<int>& members() const;

    /// Compact canonical form, e.g. "3" for a count, "{}" or "{2,5}" for members.
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] bool operator==(const ClassLabel&) const = default;
    [[nodiscard]] std::strong_ordering operator<=>(const ClassLabel&) const = default;

private:
    ClassLabel(bool is_count, int count, std::vector<int> members)
        : is_count_(is_count), count_(count), members_(std::move(members)) {}

    bool is_count_;
    int count_;
    std::vector<int> members_;
};

/// Task-aware human phrasing of a label: "no detection", "detector 3",
/// "2 photons", "detectors {2,5}".
[[nodiscard]] std::string describe(const ApplicationMode& mode, const ClassLabel& label);

/// Maps a state to its equivalence class, or nullopt when the task makes no
/// discrimination promise for that state (more switches than the budget).
/// Out-of-scope is an ordinary outcome, not an error.
[[nodiscard]] std::optional<ClassLabel> classify(const ApplicationMode& mode,
                                                 const SwitchingState& state);

/// Number of equivalence classes for n detectors. PhotonNumber and
/// PixelArray have n+1; Coincidence(n_c) has sum_{i<=n_c} C(n,i);
/// Full has 2^n (rejected for n > 62).
[[nodiscard]] std::uint64_t class_count(const ApplicationMode& mode, int detector_count);

/// Calls fn for every in-scope state exactly once. Enumeration cost is the
/// number of in-scope states, not 2^n. Visit order is deterministic but
/// unspecified.
void for_each_in_scope(const ApplicationMode& mode, int detector_count,
                       const std::function<void(const SwitchingState&)>& fn);

/// All in-scope states in ascending index order. Enumeration bound: n <= 30.
[[nodiscard]] std::vector<SwitchingState> in_scope_states(const ApplicationMode& mode,
                                                          int detector_count);

}  // namespace ampmux
