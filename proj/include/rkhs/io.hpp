#pragma once

#include "rkhs/certify.hpp"
#include "rkhs/embedding.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/measures.hpp"
#include "rkhs/witness.hpp"

#include "json.hpp"

#include <string>

namespace rkhs::io {

using Json = nlohmann::ordered_json;

/// Readers throw DomainError on malformed documents, including unknown fields.
Measure measure_from_json(const Json& j);
Json to_json(const Measure& m);
Json to_json(const DiscreteSignedMeasure& m);

Kernel kernel_from_json(const Json& j);
Json to_json(const Kernel& k);

Certificate certificate_from_json(const Json& j);
Json to_json(const Certificate& c);

/// Measure document wrapped in {"measure", "refutes", "energy", "bound", ...}.
Witness witness_from_json(const Json& j);
Json to_json(const Witness& w);

Json to_json(const EnergyResult& e);

std::string to_string(KernelClass c);
KernelClass parse_kernel_class(const std::string& s);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Serializes with every floating-point number at 17 significant digits.
std::string dump(const Json& j, int indent = 2);
std::string format_double(double v);

}  // namespace rkhs::io
