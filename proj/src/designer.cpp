#include "ampmux/designer.hpp"

#include <cmath>
#include <cstdio>

namespace ampmux {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

/// delta_r/R_N with the infinite-R_N limit made exact.
double normal_loss_term(double delta_r, double normal_resistance) {
    return is_infinite(normal_resistance) ? 0.0 : delta_r / normal_resistance;
}

/// Shunt that realizes a required parallel value; requires r_p < R_N.
double shunt_for_parallel(double r_p, double normal_resistance) {
    if (is_infinite(normal_resistance)) return r_p;
    return r_p * normal_resistance / (normal_resistance - r_p);
}

std::string ohms(double x) { return num(x) + " Ohm"; }

}  // namespace

void DesignRequest::validate() const {
    require(detector_count >= 1, "detector count must be >= 1");
    require(detector_count <= 62, "designs support at most 62 detectors");
    require(std::isfinite(delta_r) && delta_r > 0.0,
            "resistance resolution must be finite and > 0");
    require(std::isfinite(y) && y >= 0.0, "effective admittance must be finite and >= 0");
    require(normal_resistance > 0.0 && !std::isnan(normal_resistance),
            "normal resistance must be > 0 (may be inf)");
}

ArraySpec DesignResult::to_array(double inductance) const {
    std::vector<DetectorElement> elems;
    elems.reserve(shunts.size());
    for (double r : shunts) elems.emplace_back(r, normal_resistance, inductance);
    return ArraySpec(std::move(elems));
}

double feasibility_limit(double y, double delta_r) {
    require(std::isfinite(delta_r) && delta_r > 0.0,
            "resistance resolution must be finite and > 0");
    require(std::isfinite(y) && y >= 0.0, "effective admittance must be finite and >= 0");
    if (y == 0.0) return kInfinite;
    return 1.0 / (y * delta_r);
}

double level_sequence(int beta, double y, double delta_r) {
    require(beta >= 0, "level index must be >= 0");
    if (beta == 0) return 0.0;
    const double limit = feasibility_limit(y, delta_r);
    if (!(static_cast<double>(beta) < limit)) {
        throw InfeasibleLevel("level " + std::to_string(beta) +
                              " is not reachable: class count limit is " + num(limit));
    }
    return beta * delta_r / (1.0 - beta * y * delta_r);
}

DesignOutcome design_pnr(const DesignRequest& req) {
    req.validate();
    const int n = req.detector_count;
    const double load = req.y * req.delta_r;          // n/m_L contribution per class
    const double loss = normal_loss_term(req.delta_r, req.normal_resistance);
    const double m_limit = feasibility_limit(req.y, req.delta_r);

    const double denom = 1.0 - n * load - loss;
    if (!(denom > 0.0)) {
        // Largest n' with 1 - n'*load - loss > 0, found analytically and then
        // nudged to be robust against rounding at the boundary.
        int max_n = 0;
        if (load > 0.0 && loss < 1.0) {
            max_n = static_cast<int>(std::floor((1.0 - loss) / load));
            while (max_n > 0 && !(1.0 - max_n * load - loss > 0.0)) --max_n;
            while (1.0 - (max_n + 1) * load - loss > 0.0) ++max_n;
            if (max_n < 0) max_n = 0;
        }
        const InfeasibleCause cause =
            (1.0 - n * load <= 0.0) ? InfeasibleCause::ClassLimit
                                    : InfeasibleCause::NormalResistance;
        return Infeasibility{
            cause, max_n,
            "counting design infeasible at n=" + std::to_string(n) +
                ": class limit m_L=" + num(m_limit) + ", normal resistance " +
                ohms(req.normal_resistance) + "; largest supported n is " +
                std::to_string(max_n)};
    }

    const double r = req.delta_r / denom;
    const double r_p = req.delta_r / (1.0 - n * load);
    DesignResult out;
    out.mode = ApplicationMode::photon_number();
    out.delta_r = req.delta_r;
    out.y = req.y;
    out.normal_resistance = req.normal_resistance;
    out.shunts.assign(static_cast<std::size_t>(n), r);
    out.parallels.assign(static_cast<std::size_t>(n), r_p);
    out.levels.reserve(static_cast<std::size_t>(n) + 1);
    for (int beta = 0; beta <= n; ++beta) out.levels.push_back(beta * r_p);
    out.feasible_limit = m_limit;
    return out;
}

DesignOutcome design_pixel(const DesignRequest& req) {
    req.validate();
    const int n = req.detector_count;
    const double load = req.y * req.delta_r;
    const double loss = normal_loss_term(req.delta_r, req.normal_resistance);
    const double m_limit = feasibility_limit(req.y, req.delta_r);

    DesignResult out;
    out.mode = ApplicationMode::pixel_array();
    out.delta_r = req.delta_r;
    out.y = req.y;
    out.normal_resistance = req.normal_resistance;
    out.levels.push_back(0.0);
    out.feasible_limit = m_limit;

    for (int k = 1; k <= n; ++k) {
        const double denom = 1.0 - k * (load + loss);
        if (!(denom > 0.0)) {
            InfeasibleCause cause = InfeasibleCause::DenominatorSign;
            if (1.0 - k * load <= 0.0) cause = InfeasibleCause::ClassLimit;
            else if (loss > 0.0 && 1.0 - k * loss <= 0.0) cause = InfeasibleCause::NormalResistance;
            return Infeasibility{
                cause, k - 1,
                "pixel design infeasible at k=" + std::to_string(k) +
                    ": class limit m_L=" + num(m_limit) + ", normal resistance " +
                    ohms(req.normal_resistance) + "; largest supported n is " +
                    std::to_string(k - 1)};
        }
        out.shunts.push_back(k * req.delta_r / denom);
        const double level = level_sequence(k, req.y, req.delta_r);
        out.parallels.push_back(level);
        out.levels.push_back(level);
    }
    return out;
}

DesignOutcome design_coincidence(const DesignRequest& req) {
    req.validate();
    req.mode.validate_for(req.detector_count);
    require(req.mode.task() == DetectionTask::Coincidence,
            "request mode must be a coincidence task");
    const int n = req.detector_count;
    const int budget = req.mode.coincidence_budget();
    const double y = req.y;
    const double dr = req.delta_r;

    DesignResult out;
    out.mode = req.mode;
    out.delta_r = dr;
    out.y = y;
    out.normal_resistance = req.normal_resistance;
    out.feasible_limit = feasibility_limit(y, dr);

    // Worst already-representable case before placing element k+1: the sum of
    // the previous `budget` parallel values (absent entries count as zero).
    auto worst_case = [&](int placed) {
        double sum = 0.0;
        for (int l = 0; l < budget && l < placed; ++l)
            sum += out.parallels[static_cast<std::size_t>(placed - 1 - l)];
        return sum;
    };

    out.levels.push_back(0.0);
    for (int k = 0; k < n; ++k) {
        const double anchor = worst_case(k);
        const double denom = 1.0 - y * dr - y * y * dr * anchor;
        if (!(denom > 0.0)) {
            return Infeasibility{
                InfeasibleCause::DenominatorSign, k,
                "coincidence(" + std::to_string(budget) + ") design infeasible at element " +
                    std::to_string(k + 1) + ": synthesis denominator is nonpositive; "
                    "largest supported n is " + std::to_string(k)};
        }
        const double one_plus = 1.0 + y * anchor;
        const double r_p = anchor + dr * one_plus * one_plus / denom;
        if (!(r_p < req.normal_resistance)) {
            return Infeasibility{
                InfeasibleCause::NormalResistance, k,
                "coincidence(" + std::to_string(budget) + ") design infeasible at element " +
                    std::to_string(k + 1) + ": required parallel value " + ohms(r_p) +
                    " reaches the normal resistance " + ohms(req.normal_resistance) +
                    "; largest supported n is " + std::to_string(k)};
        }
        out.parallels.push_back(r_p);
        out.shunts.push_back(shunt_for_parallel(r_p, req.normal_resistance));
        out.levels.push_back(worst_case(k + 1));
    }
    return out;
}

DesignOutcome design_full(const DesignRequest& req) {
    req.validate();
    const int n = req.detector_count;
    if (req.y != 0.0 || !is_infinite(req.normal_resistance)) {
        return Infeasibility{
            InfeasibleCause::Unsupported, 0,
            "full-state identification is only constructed for ideal conditions "
            "(y = 0, infinite normal resistance)"};
    }

    DesignResult out;
    out.mode = ApplicationMode::full();
    out.delta_r = req.delta_r;
    out.y = 0.0;
    out.normal_resistance = kInfinite;
    out.feasible_limit = kInfinite;
    out.levels.push_back(0.0);
    double cumulative = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double r = std::ldexp(req.delta_r, k - 1);  // delta_r * 2^(k-1)
        out.shunts.push_back(r);
        out.parallels.push_back(r);
        cumulative += r;
        out.levels.push_back(cumulative);
    }
    return out;
}

DesignOutcome design(const DesignRequest& req) {
    switch (req.mode.task()) {
        case DetectionTask::PhotonNumber: return design_pnr(req);
        case DetectionTask::PixelArray: return design_pixel(req);
        case DetectionTask::Coincidence: return design_coincidence(req);
        case DetectionTask::Full: return design_full(req);
    }
    throw std::logic_error("unknown detection task");
}

std::uint64_t two_photon_ladder_units(int k) {
    require(k >= 1 && k <= 80, "closed form is exact for k in 1..80 only");
    // r_k in delta_r units is 2*F_k + F_{k-1} - 1.
    std::uint64_t f_prev = 0;  // F_0
    std::uint64_t f_cur = 1;   // F_1
    for (int i = 1; i < k; ++i) {
        const std::uint64_t next = f_cur + f_prev;
        f_prev = f_cur;
        f_cur = next;
    }
    return 2 * f_cur + f_prev - 1;
}

double two_photon_closed_form(int k, double delta_r) {
    require(std::isfinite(delta_r) && delta_r > 0.0,
            "resistance resolution must be finite and > 0");
    return static_cast<double>(two_photon_ladder_units(k)) * delta_r;
}

}  // namespace ampmux
