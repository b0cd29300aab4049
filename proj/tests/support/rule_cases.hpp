#pragma once

// Minimal instances, one per constraint family: checking `candidate` against
// `instance` yields exactly one violation of `rule`, and none once `trigger`
// is removed from the instance (or from the candidate, if it lives there).

#include <optional>
#include <string>
#include <vector>

#include "pconf/solver.hpp"

namespace pconf::testing {

struct RuleCase {
  std::string name;
  Rule rule;
  std::optional<Origin> origin;
  std::string instance;
  std::string candidate;
  std::string trigger;
  bool trigger_in_candidate = false;
};

inline const std::vector<RuleCase>& rule_cases() {
  static const std::vector<RuleCase> cases = {
      {"A1", Rule::A1, {}, "domain(frame,type,f1). property_val(f1,material,aluminum).",
       "assign(frame,material,aluminum).", "assign(frame,material,aluminum).", true},
      {"A2", Rule::A2, {}, "domain(w,type,t1). domain(w,type,t2).", "assign(w,type,t1). assign(w,type,t2).",
       "assign(w,type,t2).", true},
      {"A3_extra", Rule::A3_extra, {},
       "domain(w,type,t1). domain(w,type,t2). property_val(t1,size,26). property_val(t2,color,red).",
       "assign(w,type,t1). assign(w,size,26). assign(w,color,red).", "assign(w,color,red).", true},
      {"A3_missing", Rule::A3_missing, {}, "domain(w,type,t1). property_val(t1,size,26).", "assign(w,type,t1).",
       "property_val(t1,size,26).", false},
      {"A4", Rule::A4, {},
       "domain(a,type,t1). domain(a,type,t2). property_val(t1,color,red). mandatory_property(a,color).",
       "assign(a,type,t2).", "mandatory_property(a,color).", false},
      {"P1", Rule::R1, Origin::part_to_whole, "domain(bike,type,b). domain(basket,type,k). partof(bike,basket,optional).",
       "assign(basket,type,k).", "partof(bike,basket,optional).", false},
      {"P2", Rule::R1, Origin::whole_to_part, "domain(bike,type,b). domain(frame,type,f). partof(bike,frame,mandatory).",
       "assign(bike,type,b).", "partof(bike,frame,mandatory).", false},
      {"R1", Rule::R1, Origin::explicit_fact, "domain(basket,type,k). domain(stand,type,s). require_com_com(basket,stand).",
       "assign(basket,type,k).", "require_com_com(basket,stand).", false},
      {"R2a", Rule::R2a, {},
       "domain(basket,type,k). domain(frame,type,f1). property_val(f1,support,yes)."
       " require_com_pv(basket,(frame,support,yes)).",
       "assign(basket,type,k).", "require_com_pv(basket,(frame,support,yes)).", false},
      {"R2b", Rule::R2b, {},
       "domain(stand,type,s). domain(frame,type,f1). property_val(f1,support,yes)."
       " require_com_pv((frame,support,yes),stand).",
       "assign(frame,type,f1). assign(frame,support,yes).", "require_com_pv((frame,support,yes),stand).", false},
      {"R3", Rule::R3, {},
       "domain(frame,type,f1). domain(wheel,type,w1). property_val(f1,material,al). property_val(w1,material,al)."
       " require_pv_pv((frame,material,al),(wheel,material,al)).",
       "assign(frame,type,f1). assign(frame,material,al).", "require_pv_pv((frame,material,al),(wheel,material,al)).",
       false},
      {"I1", Rule::I1, {}, "domain(a,type,t). domain(b,type,u). incompatible_com_com(a,b).",
       "assign(a,type,t). assign(b,type,u).", "incompatible_com_com(a,b).", false},
      {"I2", Rule::I2, {},
       "domain(bike,type,mountain). domain(basket,type,k). incompatible_com_pv(basket,(bike,type,mountain)).",
       "assign(bike,type,mountain). assign(basket,type,k).", "incompatible_com_pv(basket,(bike,type,mountain)).",
       false},
      {"I3", Rule::I3, {},
       "domain(fw,type,w3). domain(rw,type,w2). property_val(w3,size,24). property_val(w2,size,26)."
       " incompatible_pv_pv((fw,size,24),(rw,size,26)).",
       "assign(fw,type,w3). assign(fw,size,24). assign(rw,type,w2). assign(rw,size,26).",
       "incompatible_pv_pv((fw,size,24),(rw,size,26)).", false},
      {"U1", Rule::U1, {}, "domain(bike,type,b). user_com(req,bike).", "", "user_com(req,bike).", false},
      {"U2", Rule::U2, {}, "domain(w,type,t). property_val(t,size,26). user_com(req,(w,size,26)).", "",
       "user_com(req,(w,size,26)).", false},
      {"U3", Rule::U3, {}, "domain(bike,type,b). user_com(nreq,bike).", "assign(bike,type,b).",
       "user_com(nreq,bike).", false},
      {"U4", Rule::U4, {}, "domain(w,type,t). property_val(t,size,26). user_com(nreq,(w,size,26)).",
       "assign(w,type,t). assign(w,size,26).", "user_com(nreq,(w,size,26)).", false},
  };
  return cases;
}

inline std::string without(std::string text, const std::string& fact) {
  const auto at = text.find(fact);
  if (at != std::string::npos) text.erase(at, fact.size());
  return text;
}

}  // namespace pconf::testing
