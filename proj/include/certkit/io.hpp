#pragma once

#include <json.hpp>

#include "certkit/builder.hpp"

namespace certkit {

/// Problem and certificate files use 1-based variable/clique indices and
/// scalars either as JSON numbers or as exact strings ("1/4", "sqrt(2)",
/// "3/4*sqrt(2)"). Internally everything is 0-based and exact.

Scalar scalar_from_json(const nlohmann::json& j);
nlohmann::json scalar_to_json(const Scalar& v);

ProblemSpec problem_from_json(const nlohmann::json& j);

Certificate certificate_from_json(const nlohmann::json& j, const ProblemSpec& spec);
nlohmann::json certificate_to_json(const Certificate& cert, const ProblemSpec& spec);

/// Slot variable names as used in certificate files: alpha slots use
/// y1..yk, z1..zk, u; rho slots use u; simple-template slots use x1..xn.
std::vector<std::string> slot_names_for(const Slot& slot, const ProblemSpec& spec);

ProblemSpec load_problem(const std::string& path);
Certificate load_certificate(const std::string& path, const ProblemSpec& spec);
void save_certificate(const std::string& path, const Certificate& cert,
                      const ProblemSpec& spec);

}  // namespace certkit
