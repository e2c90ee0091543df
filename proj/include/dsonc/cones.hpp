#pragma once

// Membership tests and bounds for the SONC cone and its dual-coefficient
// subcone DSONC (sums of AGE functions whose coefficient vectors lie in the
// dual SONC cone).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsonc/geometry.hpp"
#include "dsonc/signomial.hpp"

namespace dsonc {

enum class Verdict { Member, Boundary, NotMember };

std::string_view to_string(Verdict v);
inline bool accepted(Verdict v) { return v != Verdict::NotMember; }

// Relative tolerance for closed-form Θ / Θ̌ comparisons.
inline constexpr double kClosedFormTolerance = 1e-9;
// Absolute slack accepted on LP-based certificates.
inline constexpr double kLpTolerance = 1e-7;

struct DsoncWitness {
  Point inner;
  std::vector<double> tau;
  // ln of the certified inner magnitude; set only for the constant piece of a bound.
  std::optional<double> ell;
};

struct CertificateReport {
  std::optional<double> theta;
  std::optional<double> theta_check;
  Verdict in_sonc = Verdict::NotMember;
  Verdict in_dsonc = Verdict::NotMember;
  bool boundary_dsonc = false;
  std::vector<DsoncWitness> witnesses;
};

// Θ_f = Π (c_α/λ_α)^{λ_α}.
double circuit_number(const CircuitFunction& f);
// Θ̌_f = Π c_α^{λ_α}.
double dual_circuit_number(const CircuitFunction& f);

Verdict is_sonc_circuit(const CircuitFunction& f);
Verdict is_dsonc_circuit(const CircuitFunction& f);

CertificateReport certify_circuit(const CircuitFunction& f);

// f̌ with vertex coefficients c_α/λ_α; SONC verdict of f equals DSONC verdict of f̌.
CircuitFunction primal_to_dual(const CircuitFunction& f);

struct CircuitViolation {
  SupportCircuit circuit;
  double log_inner = 0.0;     // ln|v_β|
  double log_threshold = 0.0;  // Σ λ_α ln v_α
};

struct DualSoncResult {
  Verdict verdict = Verdict::NotMember;
  // Indices in A+ carrying a negative entry.
  std::vector<std::size_t> negative_on_positive;
  std::vector<CircuitViolation> violations;
  std::size_t circuits_checked = 0;
};

// Decides v ∈ dual signed SONC cone: v_α >= 0 on A+ and, for each β ∈ A-,
// ln|v_β| <= Σ λ_α ln v_α at every vertex λ of Λ(A+, β).
DualSoncResult check_dual_sonc_membership(const SignedSupport& support, std::span<const double> v,
                                          std::size_t cap = kDefaultEnumerationCap);

struct AgeDsoncResult {
  Verdict verdict = Verdict::NotMember;
  std::optional<DsoncWitness> witness;
  // Optimal uniform slack s in ln(|c_β|/c_α) + s <= (α−β)ᵀτ; negative when infeasible.
  double slack = 0.0;
  std::string diagnostic;
};

// LP test: exists τ with ln(|c_β|/c_α) <= (α−β)ᵀτ for all α with c_α > 0.
AgeDsoncResult is_dsonc_age(const AgeFunction& g);

struct FrankWolfeOptions {
  std::size_t max_iterations = 500;
  double gap_tolerance = 1e-8;
};

struct AgeSoncResult {
  Verdict verdict = Verdict::NotMember;
  // Best λ found, aligned with the AGE's positive terms.
  std::vector<double> lambda;
  double log_value = 0.0;    // Σ λ ln(c/λ) at `lambda`
  double upper_bound = 0.0;  // FW duality-gap bound on the supremum
  double log_target = 0.0;   // ln|c_β|
  std::size_t iterations = 0;
  bool converged = false;
  std::string diagnostic;
};

// Decides sup_{λ ∈ Λ(A+, β)} Σ λ_α ln(c_α/λ_α) >= ln|c_β| by Frank–Wolfe.
AgeSoncResult is_sonc_age(const AgeFunction& g, const FrankWolfeOptions& options = {});

struct SplitShare {
  Point positive;
  double fraction = 0.0;
};

struct SplitPiece {
  Point inner;
  std::vector<SplitShare> shares;
};

// How positive coefficients are distributed over the AGE pieces (one piece
// per negative term, plus the constant piece when bounding).
class SplitPolicy {
 public:
  static SplitPolicy uniform() { return SplitPolicy(); }
  static SplitPolicy from_pieces(std::vector<SplitPiece> pieces);

  bool is_uniform() const { return uniform_; }
  const std::vector<SplitPiece>& pieces() const { return pieces_; }

  // fractions[piece][positive]; validates nonnegativity and column sums <= 1.
  std::vector<std::vector<double>> resolve(std::span<const Point> inners, std::span<const Point> positives) const;

 private:
  bool uniform_ = true;
  std::vector<SplitPiece> pieces_;
};

struct GeneralResult {
  Verdict verdict = Verdict::NotMember;
  std::vector<AgeFunction> pieces;
  std::vector<AgeDsoncResult> piece_results;
  std::vector<AgeSoncResult> sonc_piece_results;
  std::vector<std::vector<double>> split;
};

// Sufficient DSONC certificate relative to the split.
GeneralResult is_dsonc_general(const Signomial& f, const SplitPolicy& split);
// Same decomposition, each piece tested for SONC membership.
GeneralResult is_sonc_general(const Signomial& f, const SplitPolicy& split);

struct BoundResult {
  double gamma_dsonc = 0.0;
  double gamma_sonc_boosted = 0.0;
  std::vector<Point> piece_inners;  // last entry is the origin (constant piece)
  std::vector<Point> positives;
  std::vector<std::vector<double>> split;
  std::vector<double> lambda_used;
  double constant_coeff = 0.0;
  double ell = 0.0;
  // Positive terms of the constant piece (after shares) and the LP dual λ.
  std::vector<Term> constant_piece;
  std::vector<double> dual_lambda;
  std::vector<DsoncWitness> witnesses;
};

enum class BoundStatus { Certified, NoCertificate, UnboundedDirection };

struct BoundOutcome {
  BoundStatus status = BoundStatus::NoCertificate;
  std::optional<BoundResult> bound;
  std::vector<AgeDsoncResult> piece_results;
  std::string diagnostic;
};

std::string_view to_string(BoundStatus s);

// γ_DSONC = sup{γ : f − γ ∈ DSONC relative to the split}.
BoundOutcome dsonc_lower_bound(const Signomial& f, const SplitPolicy& split);

// c₀ + Π λ^{−λ} e^{ℓ*}; records the value and λ in `b`. Throws InfeasibleLambda.
double sonc_bound_boost(BoundResult& b, std::span<const double> lambda);

// λ for boosting: the barycentric coordinates when the constant piece is a
// circuit, otherwise any vertex of its Λ-polytope.
std::vector<double> boost_lambda(const BoundResult& b);

enum class SplitTarget { Membership, Bound };

// Heuristic coordinate descent over split fractions, at most `passes` sweeps.
// Never returns a split scoring worse than `start`.
SplitPolicy refine_split(const Signomial& f, const SplitPolicy& start, SplitTarget target, int passes = 50);

enum class ExtremeRayKind { None, Monomial, MinimalCircuit };

struct ExtremeRayResult {
  bool extreme = false;
  ExtremeRayKind kind = ExtremeRayKind::None;
  std::string reason;
};

ExtremeRayResult is_extreme_ray(const Signomial& f, const SupportSet& ambient);

}  // namespace dsonc
