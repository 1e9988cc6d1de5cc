#ifndef VIBCOOL_FUNCTIONALS_HPP
#define VIBCOOL_FUNCTIONALS_HPP

#include <vector>

#include <Eigen/Core>

#include "vibcool/propagator.hpp"
#include "vibcool/system.hpp"

namespace vibcool {

enum class Variant { Symmetrized, Assembly };
enum class OverlapForm { SquareModulus, RealPart };

// Weights and indices selecting the final-time cost.
//
// The propagated ensemble is the ground levels 0..n_max; member 0 is the
// cooling target and carries the steady-state term. n_max = 0 (with n_star
// forced to 0) is the degenerate single-member mode used by reduced models.
struct FunctionalConfig {
  Variant variant = Variant::Assembly;
  int n_max = 1;
  int n_star = 1;
  int target = 0;
  double lambda_ss = 1.0;
  double lambda_leak = 1.0;
  double lambda_yield = 1.0;
  double lambda_balance = 1.0;  // weight of J_sym or J_ass
  // Overlap form of the assembly-line term; all other terms use the square
  // modulus, which is their defining form.
  OverlapForm assembly_form = OverlapForm::RealPart;

  void validate(int n_ground) const;
};

// Diagonal operators entering the excitation and leakage costs:
//   d_weights(n) = eta(n, target)^2          (decay weight toward the target)
//   l_weights(n) = sum_{m' > n_max} eta(n, m')^2
// plus the projector onto ground levels outside the ensemble (m > n_max).
struct TargetOperators {
  Eigen::VectorXd d_weights;
  Eigen::VectorXd l_weights;
  int out_begin = 0;  // first ground index counted as outside the ensemble
  double sigma_ceiling() const { return d_weights.maxCoeff(); }
};

TargetOperators build_target_operators(const Eigen::MatrixXd& eta, int n_max, int target);

// sigma under the timescale-separation diagonal approximation:
// sum_n d_weights(n) |<phi_e_n|psi(T)>|^2.
double sigma_approx(const TwoSurfaceState& final_state, const TargetOperators& ops);

// Full temporally averaged overlap including the off-diagonal interference
// terms with their (exp(i dE T_e) - 1)/(i T_e dE) prefactors; the oracle for
// sigma_approx. Degenerate excited pairs use the dE -> 0 limit value 1 and
// are counted in *n_degenerate_pairs if given.
double sigma_exact(const TwoSurfaceState& final_state, const Eigen::MatrixXd& eta,
                   int target, const Eigen::VectorXd& e_excited, double lifetime,
                   int* n_degenerate_pairs = nullptr);

struct Terms {
  double j_ss = 0;
  double j_leak = 0;
  double j_yield = 0;    // J_yield or the single-level variant, per config
  double j_balance = 0;  // J_sym or J_ass
  double j_total = 0;
};

// Evaluates every cost term from the ensemble of final states (index n =
// state propagated from ground level n under the same pulse).
Terms eval_terms(const std::vector<TwoSurfaceState>& finals, const FunctionalConfig& cfg,
                 const TargetOperators& ops);

// Gradient of the total final-time cost with respect to <psi_n(T)|, one
// costate per ensemble member. Convention: <psi| and |psi> independent,
// so grad <psi|X|psi> = X|psi> and grad Re<phi|psi> = |phi>/2.
std::vector<TwoSurfaceState> costate_boundary(const std::vector<TwoSurfaceState>& finals,
                                              const FunctionalConfig& cfg,
                                              const TargetOperators& ops);

}  // namespace vibcool

#endif
