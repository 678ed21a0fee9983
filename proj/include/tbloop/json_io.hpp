#pragma once

#include <json.hpp>

#include "tbloop/creation.hpp"
#include "tbloop/estimation.hpp"
#include "tbloop/im_binomial.hpp"
#include "tbloop/mixture.hpp"
#include "tbloop/tb_loop.hpp"

// nlohmann/json hooks for the library's result types. Non-finite reals are
// written as null.
namespace tbloop {

void to_json(nlohmann::json& j, const MixtureParams& p);
void from_json(const nlohmann::json& j, MixtureParams& p);

void to_json(nlohmann::json& j, const EmResult& r);
void to_json(nlohmann::json& j, const KScore& s);
void to_json(nlohmann::json& j, const SelectionReport& r);

void to_json(nlohmann::json& j, const TbEvent& e);
void from_json(const nlohmann::json& j, TbEvent& e);

void to_json(nlohmann::json& j, const ThetaInterval& t);

}  // namespace tbloop
