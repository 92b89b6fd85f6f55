#pragma once

#include "rkhs/kernels.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rkhs {

enum class Property {
  C0Universal,
  CCUniversal,
  CUniversal,
  Characteristic,
  StrictlyPD,
  CondStrictlyPD
};

enum class Verdict { Holds, Fails, Unknown };

const std::vector<Property>& all_properties();

/// "c0_universal", "strictly_pd", ... Parsing also accepts '-' for '_'.
std::string to_string(Property p);
std::string to_string(Verdict v);
Property parse_property(const std::string& name);
Verdict parse_verdict(const std::string& name);

struct Certificate {
  std::string kernel;  // Kernel::label()
  KernelClass kernel_class = KernelClass::TranslationInvariant;
  bool compact_space = false;
  Property property = Property::C0Universal;
  Verdict verdict = Verdict::Unknown;
  std::string rule_id;
  std::string citation;
  /// Which witness construction refutes the property, or a file path once
  /// the witness has been written out.
  std::optional<std::string> witness_ref;
  /// Spectral facts consulted by the rule (e.g. "A_psi(0)").
  std::map<std::string, double> details;
};

struct RuleInfo {
  std::string id;
  std::string criterion;
};

/// Every rule certify() can fire, with a plain-language statement of the
/// criterion it applies.
const std::vector<RuleInfo>& rule_table();

/// Decides `property` for `k` from its spectral metadata. Throws DomainError
/// for c-universality on a non-compact space.
Certificate certify(const Kernel& k, Property property);

/// All properties that are meaningful for k's space.
std::vector<Certificate> certify_all(const Kernel& k);

struct NumericProbe {
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  Eigen::VectorXd null_vector;
  /// min_eigenvalue < 1e-10 * trace: a numerical null vector exists.
  bool fails_on_set = false;
};

inline constexpr double kRankTolerance = 1e-10;

/// Gram minimum eigenvalue on a set of distinct points.
NumericProbe check_strict_pd_numeric(const Kernel& k, std::span<const Point> points);
/// Same on the zero-sum subspace; needs at least two points.
NumericProbe check_cond_strict_pd_numeric(const Kernel& k, std::span<const Point> points);

// -- Implication audit -----------------------------------------------------

enum class EdgeScope { All, Compact, TranslationInvariant, Torus, TorusPositiveZeroCoeff, Radial };

std::string to_string(EdgeScope s);

struct ImplicationEdge {
  Property from;
  Property to;
  EdgeScope scope;
};

struct ImplicationGraph {
  std::vector<ImplicationEdge> edges;

  static ImplicationGraph standard();
  bool applies(const ImplicationEdge& e, const Certificate& c) const;
};

struct Violation {
  ImplicationEdge edge;
  std::string message;
};

/// Edges A => B in scope where A Holds and B Fails. All certificates must
/// describe the same kernel.
std::vector<Violation> audit_implications(std::span<const Certificate> certs,
                                          const ImplicationGraph& graph = ImplicationGraph::standard());

}  // namespace rkhs
