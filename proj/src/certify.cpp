#include "rkhs/certify.hpp"

#include "rkhs/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace rkhs {

namespace {

struct PropertyName {
  Property p;
  const char* name;
};

constexpr PropertyName kPropertyNames[] = {
    {Property::C0Universal, "c0_universal"},   {Property::CCUniversal, "cc_universal"},
    {Property::CUniversal, "c_universal"},     {Property::Characteristic, "characteristic"},
    {Property::StrictlyPD, "strictly_pd"},     {Property::CondStrictlyPD, "cond_strictly_pd"},
};

const std::map<std::string, std::string>& criteria() {
  static const std::map<std::string, std::string> table = {
      {"A1_full_support", "spectral measure of a translation-invariant kernel has support R^d"},
      {"A1_support_not_full",
       "spectral support is a proper closed subset of R^d; a measure whose transform lives "
       "off the support has zero energy"},
      {"A1_cc_integrable_spd",
       "psi is integrable and the kernel is strictly pd, which gives cc-universality"},
      {"A1_cc_interior", "spectral support has nonempty interior"},
      {"A1_cc_open", "empty spectral interior with non-integrable psi; cc-universality is open"},
      {"A1_char_full_support",
       "psi vanishes at infinity and the spectral support is R^d, so the embedding of "
       "probability measures is injective"},
      {"A1_char_support_not_full",
       "psi vanishes at infinity and the spectral support misses an open set, so the "
       "kernel is not characteristic"},
      {"A1_spd_interior", "spectral support has nonempty interior, so the kernel is strictly pd"},
      {"A1_c_noncompact", "c-universality needs a compact domain"},
      {"A2_all_coeff_positive", "every Fourier coefficient A_psi(n) is positive"},
      {"A2_zero_coeff",
       "some Fourier coefficient A_psi(n0) vanishes; 2 alpha cos(n0 x) dx has zero energy"},
      {"A2_char_nonzero_coeff_positive", "A_psi(n) > 0 for every n != 0"},
      {"A2_char_zero_coeff",
       "A_psi(n0) = 0 for some n0 != 0; the zero-mass cosine witness splits into P != Q "
       "with equal embeddings"},
      {"A2_spd_from_c", "c-universal kernels are strictly pd"},
      {"A2_finite_spectrum_rank",
       "finitely many nonzero coefficients bound the Gram rank, so large point sets are "
       "singular"},
      {"A2_cond_from_char", "characteristic kernels are conditionally strictly pd"},
      {"A3_supp_not_zero",
       "mixing measure of a radial kernel is not concentrated at 0; c0-, cc-universality, "
       "strict pd and the characteristic property are equivalent and hold"},
      {"A3_supp_zero",
       "mixing measure is concentrated at 0, so the kernel is constant and every zero-mass "
       "measure has zero energy"},
      {"A3_c_noncompact", "c-universality needs a compact domain"},
      {"A4_positive_coeffs", "all Taylor coefficients are positive, giving cc-universality"},
      {"A4_spd_from_cc", "cc-universal kernels are strictly pd"},
      {"A4_cond_from_spd", "strictly pd kernels are conditionally strictly pd"},
      {"A4_c0_open",
       "Taylor kernels here are not in C_0 of their domain; c0-universality is not decided"},
      {"A4_char_open",
       "the characteristic property of unbounded Taylor kernels is not decided by the "
       "coefficient criterion"},
      {"A4_c_noncompact", "c-universality needs a compact domain"},
      {"spd_implies_cond", "strictly pd kernels are conditionally strictly pd"},
  };
  return table;
}

Certificate make(const Kernel& k, Property p, Verdict v, const std::string& rule,
                 std::optional<std::string> witness = std::nullopt) {
  Certificate c;
  c.kernel = k.label();
  c.kernel_class = k.kernel_class();
  c.compact_space = k.space().is_torus();
  c.property = p;
  c.verdict = v;
  c.rule_id = rule;
  c.citation = criteria().at(rule);
  c.witness_ref = std::move(witness);
  return c;
}

Certificate certify_a1(const Kernel& k, const EuclideanSpectrum& s, Property p) {
  const bool full = s.support == EuclideanSpectrum::Support::FullSpace;
  Certificate c = [&] {
    switch (p) {
      case Property::CUniversal:
        throw DomainError("c-universality is not defined on non-compact " +
                          k.space().to_string());
      case Property::C0Universal:
        return full ? make(k, p, Verdict::Holds, "A1_full_support")
                    : make(k, p, Verdict::Fails, "A1_support_not_full",
                           "bandlimited_zero_energy_witness");
      case Property::Characteristic:
        if (!k.psi_vanishes_at_infinity()) {
          throw std::logic_error("characteristic rule needs psi in C_0");
        }
        return full ? make(k, p, Verdict::Holds, "A1_char_full_support")
                    : make(k, p, Verdict::Fails, "A1_char_support_not_full",
                           "bandlimited_zero_energy_witness");
      case Property::CCUniversal:
        if (full) return make(k, p, Verdict::Holds, "A1_full_support");
        if (k.psi_integrable() && s.interior_nonempty) {
          return make(k, p, Verdict::Holds, "A1_cc_integrable_spd");
        }
        if (s.interior_nonempty) return make(k, p, Verdict::Holds, "A1_cc_interior");
        return make(k, p, Verdict::Unknown, "A1_cc_open");
      case Property::StrictlyPD:
        if (full || s.interior_nonempty) return make(k, p, Verdict::Holds, "A1_spd_interior");
        return make(k, p, Verdict::Unknown, "A1_cc_open");
      case Property::CondStrictlyPD:
        if (full || s.interior_nonempty) return make(k, p, Verdict::Holds, "spd_implies_cond");
        return make(k, p, Verdict::Unknown, "A1_cc_open");
    }
    throw std::logic_error("unhandled property");
  }();
  c.details["spectrum_full_support"] = full ? 1.0 : 0.0;
  if (!full) c.details["spectrum_half_width"] = s.half_width;
  c.details["psi_integrable"] = k.psi_integrable() ? 1.0 : 0.0;
  return c;
}

Certificate certify_a2(const Kernel& k, const TorusSpectrum& s, Property p) {
  const bool all = s.support == TorusSpectrum::Support::AllIntegers;
  Certificate c = [&] {
    switch (p) {
      case Property::CUniversal:
      case Property::CCUniversal:
      case Property::C0Universal:
        // On a compact space the three notions coincide.
        return all ? make(k, p, Verdict::Holds, "A2_all_coeff_positive")
                   : make(k, p, Verdict::Fails, "A2_zero_coeff", "torus_zero_energy_witness");
      case Property::Characteristic:
        return all ? make(k, p, Verdict::Holds, "A2_char_nonzero_coeff_positive")
                   : make(k, p, Verdict::Fails, "A2_char_zero_coeff", "indistinguishable_pair");
      case Property::StrictlyPD:
        return all ? make(k, p, Verdict::Holds, "A2_spd_from_c")
                   : make(k, p, Verdict::Fails, "A2_finite_spectrum_rank", "gram_null_witness");
      case Property::CondStrictlyPD:
        return all ? make(k, p, Verdict::Holds, "A2_cond_from_char")
                   : make(k, p, Verdict::Fails, "A2_finite_spectrum_rank", "gram_null_witness");
    }
    throw std::logic_error("unhandled property");
  }();
  c.details["A_psi(0)"] = s.coeff(0);
  if (!all) c.details["max_frequency"] = static_cast<double>(s.finite_support.back());
  return c;
}

Certificate certify_a3(const Kernel& k, const RadialMixing& m, Property p) {
  if (p == Property::CUniversal) {
    throw DomainError("c-universality is not defined on non-compact " + k.space().to_string());
  }
  Certificate c = [&] {
    if (!m.supp_is_only_zero) return make(k, p, Verdict::Holds, "A3_supp_not_zero");
    const char* witness = "indistinguishable_pair";
    if (p == Property::StrictlyPD || p == Property::CondStrictlyPD) witness = "gram_null_witness";
    return make(k, p, Verdict::Fails, "A3_supp_zero", witness);
  }();
  c.details["mixing_mass"] = m.total_mass();
  return c;
}

Certificate certify_a4(const Kernel& k, const TaylorCoefficients& t, Property p) {
  // Both Taylor families have closed-form coefficients that are positive for
  // every n; sample them anyway so a bad closed form cannot slip through.
  bool positive = true;
  for (int n = 0; n <= 64; ++n) positive = positive && t.coeff(n) > 0.0;
  if (!positive) throw std::logic_error("Taylor coefficients of a zoo kernel must be positive");
  Certificate c = [&] {
    switch (p) {
      case Property::CUniversal:
        throw DomainError("c-universality needs a compact domain; " + k.label() +
                          " lives on a non-compact one");
      case Property::CCUniversal: return make(k, p, Verdict::Holds, "A4_positive_coeffs");
      case Property::StrictlyPD: return make(k, p, Verdict::Holds, "A4_spd_from_cc");
      case Property::CondStrictlyPD: return make(k, p, Verdict::Holds, "A4_cond_from_spd");
      case Property::C0Universal: return make(k, p, Verdict::Unknown, "A4_c0_open");
      case Property::Characteristic: return make(k, p, Verdict::Unknown, "A4_char_open");
    }
    throw std::logic_error("unhandled property");
  }();
  if (std::isfinite(t.radius)) c.details["radius"] = t.radius;
  return c;
}

NumericProbe probe(const Kernel& k, std::span<const Point> points, bool zero_sum) {
  for (const Point& p : points) k.space().check_point(p);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (k.space().distance_max(k.space().canonical(points[i]),
                                 k.space().canonical(points[j])) <= 1e-9) {
        throw DomainError("points " + std::to_string(i) + " and " + std::to_string(j) +
                          " coincide");
      }
    }
  }
  const Eigen::MatrixXd g = gram(k, points);
  const auto eig = zero_sum ? numerics::min_eig_sym_zero_sum(g) : numerics::min_eig_sym(g);
  NumericProbe out;
  out.min_eigenvalue = eig.value;
  out.trace = g.trace();
  out.null_vector = eig.vector;
  out.fails_on_set = eig.value < kRankTolerance * out.trace;
  return out;
}

}  // namespace

const std::vector<Property>& all_properties() {
  static const std::vector<Property> all = {Property::C0Universal,    Property::CCUniversal,
                                            Property::CUniversal,     Property::Characteristic,
                                            Property::StrictlyPD,     Property::CondStrictlyPD};
  return all;
}

std::string to_string(Property p) {
  for (const auto& e : kPropertyNames) {
    if (e.p == p) return e.name;
  }
  throw std::logic_error("unknown property");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  throw std::logic_error("unknown verdict");
}

Property parse_property(const std::string& name) {
  std::string norm = name;
  std::replace(norm.begin(), norm.end(), '-', '_');
  for (const auto& e : kPropertyNames) {
    if (norm == e.name) return e.p;
  }
  throw DomainError("unknown property '" + name + "'");
}

Verdict parse_verdict(const std::string& name) {
  if (name == "holds") return Verdict::Holds;
  if (name == "fails") return Verdict::Fails;
  if (name == "unknown") return Verdict::Unknown;
  throw DomainError("unknown verdict '" + name + "'");
}

const std::vector<RuleInfo>& rule_table() {
  static const std::vector<RuleInfo> rules = [] {
    std::vector<RuleInfo> out;
    for (const auto& [id, text] : criteria()) out.push_back({id, text});
    return out;
  }();
  return rules;
}

Certificate certify(const Kernel& k, Property property) {
  if (k.kernel_class() == KernelClass::Taylor) return certify_a4(k, *k.taylor(), property);
  const SpectralMeasure s = *k.spectral();
  if (const auto* e = std::get_if<EuclideanSpectrum>(&s)) return certify_a1(k, *e, property);
  if (const auto* t = std::get_if<TorusSpectrum>(&s)) return certify_a2(k, *t, property);
  return certify_a3(k, std::get<RadialMixing>(s), property);
}

std::vector<Certificate> certify_all(const Kernel& k) {
  std::vector<Certificate> out;
  for (Property p : all_properties()) {
    if (p == Property::CUniversal && !k.space().is_torus()) continue;
    out.push_back(certify(k, p));
  }
  return out;
}

NumericProbe check_strict_pd_numeric(const Kernel& k, std::span<const Point> points) {
  if (points.empty()) throw DomainError("check_strict_pd_numeric: no points");
  return probe(k, points, false);
}

NumericProbe check_cond_strict_pd_numeric(const Kernel& k, std::span<const Point> points) {
  if (points.size() < 2) throw DomainError("check_cond_strict_pd_numeric: needs >= 2 points");
  return probe(k, points, true);
}

// -- Implication audit -----------------------------------------------------

std::string to_string(EdgeScope s) {
  switch (s) {
    case EdgeScope::All: return "all";
    case EdgeScope::Compact: return "compact";
    case EdgeScope::TranslationInvariant: return "A1";
    case EdgeScope::Torus: return "A2";
    case EdgeScope::TorusPositiveZeroCoeff: return "A2, A_psi(0) > 0";
    case EdgeScope::Radial: return "A3";
  }
  return "?";
}

ImplicationGraph ImplicationGraph::standard() {
  using P = Property;
  using S = EdgeScope;
  ImplicationGraph g;
  g.edges = {
      {P::C0Universal, P::CCUniversal, S::All},
      {P::CCUniversal, P::StrictlyPD, S::All},
      {P::C0Universal, P::Characteristic, S::All},
      {P::Characteristic, P::CondStrictlyPD, S::All},
      {P::StrictlyPD, P::CondStrictlyPD, S::All},
      // compact X: c = cc = c0
      {P::CUniversal, P::CCUniversal, S::Compact},
      {P::CCUniversal, P::CUniversal, S::Compact},
      {P::CUniversal, P::C0Universal, S::Compact},
      {P::C0Universal, P::CUniversal, S::Compact},
      {P::CCUniversal, P::C0Universal, S::Compact},
      {P::C0Universal, P::CCUniversal, S::Compact},
      {P::CUniversal, P::Characteristic, S::Compact},
      {P::Characteristic, P::C0Universal, S::TranslationInvariant},
      {P::Characteristic, P::StrictlyPD, S::Torus},
      {P::Characteristic, P::CUniversal, S::TorusPositiveZeroCoeff},
      {P::StrictlyPD, P::C0Universal, S::Radial},
      {P::CCUniversal, P::C0Universal, S::Radial},
      {P::Characteristic, P::CCUniversal, S::Radial},
      {P::StrictlyPD, P::Characteristic, S::Radial},
  };
  return g;
}

bool ImplicationGraph::applies(const ImplicationEdge& e, const Certificate& c) const {
  switch (e.scope) {
    case EdgeScope::All: return true;
    case EdgeScope::Compact: return c.compact_space;
    case EdgeScope::TranslationInvariant:
      return c.kernel_class == KernelClass::TranslationInvariant;
    case EdgeScope::Torus: return c.kernel_class == KernelClass::Torus;
    case EdgeScope::TorusPositiveZeroCoeff: {
      if (c.kernel_class != KernelClass::Torus) return false;
      const auto it = c.details.find("A_psi(0)");
      return it != c.details.end() && it->second > 0.0;
    }
    case EdgeScope::Radial: return c.kernel_class == KernelClass::Radial;
  }
  return false;
}

std::vector<Violation> audit_implications(std::span<const Certificate> certs,
                                          const ImplicationGraph& graph) {
  std::vector<Violation> out;
  if (certs.empty()) return out;
  for (const Certificate& c : certs) {
    if (c.kernel != certs.front().kernel) {
      throw DomainError("audit_implications: certificates for different kernels (" +
                        certs.front().kernel + ", " + c.kernel + ")");
    }
  }
  auto find = [&](Property p) -> const Certificate* {
    for (const Certificate& c : certs) {
      if (c.property == p) return &c;
    }
    return nullptr;
  };
  for (const ImplicationEdge& e : graph.edges) {
    const Certificate* a = find(e.from);
    const Certificate* b = find(e.to);
    if (a == nullptr || b == nullptr) continue;
    if (!graph.applies(e, *a)) continue;
    if (a->verdict == Verdict::Holds && b->verdict == Verdict::Fails) {
      out.push_back({e, certs.front().kernel + ": " + to_string(e.from) + " holds but " +
                            to_string(e.to) + " fails (edge scope " + to_string(e.scope) +
                            ")"});
    }
  }
  return out;
}

}  // namespace rkhs
