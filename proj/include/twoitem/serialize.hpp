#pragma once

#include "twoitem/audit.hpp"
#include "twoitem/auction_lp.hpp"
#include "twoitem/closed_form.hpp"
#include "twoitem/mechanism.hpp"
#include "twoitem/model.hpp"

#include <json.hpp>

namespace twoitem {

using Json = nlohmann::ordered_json;

/// Always "num/den", including integers ("2/1").
std::string canonical(Rational const &r);
/// Inverse of canonical(); also accepts bare integers.
Rational rational_from_json(Json const &j);

Json to_json(AuctionSpec const &spec);
Json to_json(BuyerType t);
Json to_json(TypeProfile const &profile);
Json to_json(HierarchyScheme const &scheme);
Json to_json(Allocation const &allocation);
Json to_json(RevenueReport const &report);
Json to_json(Violation const &v);
Json to_json(AuditReport const &report);
Json to_json(CertificationReport const &report);

/// Profiles in enumeration order with probability, q, u and derived s.
Json to_json(Mechanism const &mech);

AuctionSpec     spec_from_json(Json const &j);
BuyerType       type_from_json(Json const &j);
TypeProfile     profile_from_json(Json const &j);
HierarchyScheme scheme_from_json(Json const &j);
/// Rebuilds the tables; payments in the input are ignored.
Mechanism mechanism_from_json(Json const &j);

}  // namespace twoitem
