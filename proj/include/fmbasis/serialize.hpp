#pragma once

// JSON forms of the library's values. Every report carries schema_version and
// re-parses into the structure that produced it.

#include <json.hpp>

#include "fmbasis/fmb.hpp"
#include "fmbasis/search.hpp"

namespace fmbasis::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Prime-field scalars are integers; extension-field scalars are degree-descending lists.
json scalar_to_json(const ff::Field& K, ff::Scalar s);
ff::Scalar scalar_from_json(const ff::Field& K, const json& j);

json field_to_json(const ff::FieldSpec& spec);
ff::FieldSpec field_from_json(const json& j);

json element_to_json(const galg::Element& e);
galg::Element element_from_json(const std::shared_ptr<const galg::GroupAlgebra>& alg, const json& j);

/// {literal, order, prime, labels, table, generators, gen_a, gen_b}
json group_to_json(const grp::Group& g);
/// Rebuilds from the literal and checks the table matches.
grp::Group group_from_json(const json& j);

json filtration_to_json(const galg::Filtration& f);
galg::Filtration filtration_from_json(const std::shared_ptr<const galg::GroupAlgebra>& alg, const json& j);

/// {schema_version, group, field, params, members: [{label, coeffs}]}
json basis_to_json(const fmb::BasisCandidate& b);
fmb::BasisCandidate basis_from_json(const json& j);
/// Reuses `alg` when the document names the same group and field.
fmb::BasisCandidate basis_from_json(const json& j, const std::shared_ptr<const galg::GroupAlgebra>& alg);

json report_to_json(const fmb::VerificationReport& r);
fmb::VerificationReport report_from_json(const json& j);

json search_to_json(const search::SearchReport& r);
search::SearchReport search_from_json(const json& j);

}  // namespace fmbasis::io
