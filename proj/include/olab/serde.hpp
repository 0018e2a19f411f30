#pragma once

#include "olab/harness.hpp"

namespace olab {

// JSON wire forms: {"family": "...", "params": {...}} for the function
// families, flat objects elsewhere. Doubles are emitted by nlohmann with
// full precision, so identical inputs serialize byte-identically.

ojson young_to_json(const YoungFunction& y);
YoungFunction young_from_json(const ojson& j);

ojson growth_to_json(const GrowthFunction& g);
GrowthFunction growth_from_json(const ojson& j);

ojson field_spec_to_json(const FieldSpec& s);
FieldSpec field_spec_from_json(const ojson& j);

ojson kernel_to_json(const KernelSpec& k);
KernelSpec kernel_from_json(const ojson& j);

ojson condition_to_json(const ConditionReport& r);
ojson class_report_to_json(const ClassReport& r);
ojson norm_result_to_json(const NormResult& r);

ojson config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const ojson& j);

}  // namespace olab
