/// @file report_json.hpp
/// @brief JSON serialization for solve reports.
///        Schema: method, m, alpha, omega, iterations, converged,
///        residual_history, wall_time_s.

#ifndef SSTS_REPORT_JSON_HPP
#define SSTS_REPORT_JSON_HPP

#include <json.hpp>

#include "ssts/stationary.hpp"

namespace ssts {

inline void to_json(nlohmann::json& j, const SolveReport& r) {
    j = nlohmann::json{{"method", r.method},
                       {"m", r.m},
                       {"alpha", r.alpha},
                       {"omega", r.omega},
                       {"iterations", r.iterations},
                       {"converged", r.converged},
                       {"residual_history", r.residual_history},
                       {"wall_time_s", r.wall_time_s}};
}

inline void from_json(const nlohmann::json& j, SolveReport& r) {
    j.at("method").get_to(r.method);
    j.at("m").get_to(r.m);
    j.at("alpha").get_to(r.alpha);
    j.at("omega").get_to(r.omega);
    j.at("iterations").get_to(r.iterations);
    j.at("converged").get_to(r.converged);
    j.at("residual_history").get_to(r.residual_history);
    j.at("wall_time_s").get_to(r.wall_time_s);
}

}  // namespace ssts

#endif  // SSTS_REPORT_JSON_HPP
