#include "ampmux/classes.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ampmux {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > UINT64_MAX - b) throw std::overflow_error("class count overflows 64 bits");
    return a + b;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > UINT64_MAX) throw std::overflow_error("binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace

ApplicationMode ApplicationMode::coincidence(int budget) {
    if (budget < 1) throw std::invalid_argument("coincidence budget must be >= 1");
    return {DetectionTask::Coincidence, budget};
}

int ApplicationMode::switch_budget(int detector_count) const noexcept {
    switch (task_) {
        case DetectionTask::PhotonNumber: return detector_count;
        case DetectionTask::PixelArray: return 1;
        case DetectionTask::Coincidence: return budget_;
        case DetectionTask::Full: return detector_count;
    }
    return detector_count;
}

void ApplicationMode::validate_for(int detector_count) const {
    if (detector_count < 1) throw std::invalid_argument("detector count must be >= 1");
    if (task_ == DetectionTask::Coincidence &&
        (budget_ < 1 || budget_ > detector_count)) {
        throw std::invalid_argument("coincidence budget must satisfy 1 <= n_c <= n");
    }
}

std::string ApplicationMode::name() const {
    switch (task_) {
        case DetectionTask::PhotonNumber: return "pnr";
        case DetectionTask::PixelArray: return "pixel";
        case DetectionTask::Coincidence:
            return "coincidence(" + std::to_string(budget_) + ")";
        case DetectionTask::Full: return "full";
    }
    return "?";
}

ClassLabel ClassLabel::from_count(int count) {
    if (count < 0) throw std::invalid_argument("class count must be >= 0");
    return ClassLabel(true, count, {});
}

ClassLabel ClassLabel::from_members(std::vector<int> sorted_indices) {
    if (!std::is_sorted(sorted_indices.begin(), sorted_indices.end()) ||
        std::adjacent_find(sorted_indices.begin(), sorted_indices.end()) !=
            sorted_indices.end()) {
        throw std::invalid_argument("class members must be sorted and unique");
    }
    return ClassLabel(false, 0, std::move(sorted_indices));
}

int ClassLabel::count() const {
    if (!is_count_) throw std::logic_error("label identifies members, not a count");
    return count_;
}

const std::vector<int>& ClassLabel::members() const {
    if (is_count_) throw std::logic_error("label is a count, not a member set");
    return members_;
}

std::string ClassLabel::to_string() const {
    if (is_count_) return std::to_string(count_);
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(members_[i]);
    }
    s += '}';
    return s;
}

std::string describe(const ApplicationMode& mode, const ClassLabel& label) {
    if (mode.task() == DetectionTask::PhotonNumber) {
        const int c = label.count();
        return c == 1 ? "1 photon" : std::to_string(c) + " photons";
    }
    const auto& m = label.members();
    if (m.empty()) return "no detection";
    if (mode.task() == DetectionTask::PixelArray && m.size() == 1)
        return "detector " + std::to_string(m.front());
    return "detectors " + label.to_string();
}

std::optional<ClassLabel> classify(const ApplicationMode& mode, const SwitchingState& state) {
    mode.validate_for(state.size());
    const int switched = state.switched_count();
    switch (mode.task()) {
        case DetectionTask::PhotonNumber:
            return ClassLabel::from_count(switched);
        case DetectionTask::PixelArray:
            if (switched > 1) return std::nullopt;
            return ClassLabel::from_members(state.switched_indices());
        case DetectionTask::Coincidence:
            if (switched > mode.coincidence_budget()) return std::nullopt;
            return ClassLabel::from_members(state.switched_indices());
        case DetectionTask::Full:
            return ClassLabel::from_members(state.switched_indices());
    }
    return std::nullopt;
}

std::uint64_t class_count(const ApplicationMode& mode, int detector_count) {
    mode.validate_for(detector_count);
    const int n = detector_count;
    switch (mode.task()) {
        case DetectionTask::PhotonNumber:
        case DetectionTask::PixelArray:
            return static_cast<std::uint64_t>(n) + 1;
        case DetectionTask::Coincidence: {
            std::uint64_t total = 0;
            for (int i = 0; i <= mode.coincidence_budget(); ++i)
                total = checked_add(total, binomial(n, i));
            return total;
        }
        case DetectionTask::Full:
            if (n > 62) throw std::overflow_error("full detection limited to n <= 62");
            return std::uint64_t{1} << n;
    }
    return 0;
}

namespace {

// Depth-first over subsets in ascending detector order; each in-scope mask is
// produced exactly once.
void visit_subsets(int n, int budget, int next, std::uint64_t mask,
                   const std::function<void(std::uint64_t)>& fn) {
    fn(mask);
    if (budget == 0) return;
    for (int k = next; k <= n; ++k) {
        visit_subsets(n, budget - 1, k + 1, mask | (std::uint64_t{1} << (k - 1)), fn);
    }
}

}  // namespace

void for_each_in_scope(const ApplicationMode& mode, int detector_count,
                       const std::function<void(const SwitchingState&)>& fn) {
    mode.validate_for(detector_count);
    if (detector_count > 62) throw std::invalid_argument("enumeration supports n <= 62");
    const int budget = mode.switch_budget(detector_count);
    visit_subsets(detector_count, budget, 1, 0,
                  [&](std::uint64_t mask) { fn(SwitchingState(detector_count, mask)); });
}

std::vector<SwitchingState> in_scope_states(const ApplicationMode& mode, int detector_count) {
    mode.validate_for(detector_count);
    if (detector_count > 30)
        throw std::invalid_argument("state enumeration is bounded at n <= 30");
    const int budget = mode.switch_budget(detector_count);
    std::vector<SwitchingState> out;
    const std::uint64_t end = std::uint64_t{1} << detector_count;
    for (std::uint64_t j = 0; j < end; ++j) {
        if (std::popcount(j) <= budget) out.emplace_back(detector_count, j);
    }
    return out;
}

}  // namespace ampmux
