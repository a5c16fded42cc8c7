#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>

namespace dps {

/// Observer-design data: slow dynamics, output map and the scalar weights of
/// the stability certificate.
struct DesignProblem {
  Eigen::MatrixXd A_s;  // m x m
  Eigen::MatrixXd C_s;  // n_y x m
  double mu1 = 1.0, mu2 = 1.0, sigma = 1.0;
  std::optional<double> epsilon1_fixed;  // empty: epsilon1 is a decision variable

  int m() const { return static_cast<int>(A_s.rows()); }
  int n_y() const { return static_cast<int>(C_s.rows()); }
  void validate_dimensions() const;
};

/// Candidate decision variables for the certificate.
struct LmiCandidate {
  Eigen::MatrixXd P, G1, G2;  // m x m symmetric
  Eigen::MatrixXd X, F;       // m x n_y
  double epsilon1 = 1.0;
};

/// A certified design: candidate plus the recovered observer gain L = P^-1 X
/// and the equality-relaxation level eta = ||P - F C_s||_2.
struct DesignSolution {
  DesignProblem problem;
  Eigen::MatrixXd P, G1, G2, X, F, L;
  double epsilon1 = 1.0;
  double eta = 0.0;

  LmiCandidate candidate() const { return {P, G1, G2, X, F, epsilon1}; }
  /// The certificate family is homogeneous: scaling every variable by c > 0
  /// preserves feasibility and leaves L unchanged.
  DesignSolution scaled(double c) const;
};

/// Assembles the (2m+n_y) square certificate block matrix
///   [ P A_s + A_s'P - X C_s - C_s'X'        *                      *      ]
///   [ (X C_s - P A_s)/sigma      -2P/sigma + G1/(sigma mu1)
///                                          + G2/(sigma mu2)        *      ]
///   [ X'                          F' - X'/sigma               -eps1 I     ]
Eigen::MatrixXd assemble_xi(const DesignProblem& prob, const LmiCandidate& cand);

struct Tolerances {
  double neg = 1e-8;  // lambda_max(Xi) <= -neg
  double pd = 1e-8;   // lambda_min(P,G1,G2) >= pd
  double eq = 1e-6;   // ||P - F C_s||_2 <= eq  and  ||X - P L||_2 <= sqrt-scale eq
};

struct CertificateReport {
  double lambda_max_xi = 0.0;
  double lambda_min_P = 0.0, lambda_min_G1 = 0.0, lambda_min_G2 = 0.0;
  double eta = 0.0;            // ||P - F C_s||_2
  double gain_residual = 0.0;  // ||X - P L||_2
  double epsilon1 = 0.0;
  bool negativity_ok = false, pd_ok = false, equality_ok = false, gain_ok = false;

  bool pass() const { return negativity_ok && pd_ok && equality_ok && gain_ok; }
  std::string to_string() const;
};

/// Evaluates a solution against the certificate conditions; never throws.
/// The gain residual is checked against 1e-10 at default tolerances and
/// against tol.eq when relaxed tolerances are supplied.
CertificateReport check_solution(const DesignProblem& prob, const DesignSolution& sol,
                                 const Tolerances& tol = {});

struct SolveOptions {
  unsigned seed = 1;
  int starts = 5;
  int max_iters = 30000;
  double target_margin = 0.05;  // early exit once the worst margin clears this
};

class InfeasibleDesign : public std::runtime_error {
 public:
  InfeasibleDesign(const std::string& what, double best_margin)
      : std::runtime_error(what), best_margin_(best_margin) {}
  double best_margin() const { return best_margin_; }

 private:
  double best_margin_;
};

/// Finds (P, G1, G2, X, F, eps1) with lambda_max(Xi) < 0, P,G1,G2 > 0 and
/// P = F C_s exact, by projected subgradient descent on the tr(P) = m slice
/// of the (homogeneous) feasibility cone. F is kept on the equality manifold
///   F = P C_s^+ + N (I - C_s C_s^+)
/// throughout, so eta comes out at machine precision. Multi-start,
/// deterministic given the seed. Throws InfeasibleDesign when no strictly
/// feasible point is found within the budget.
DesignSolution solve_design(const DesignProblem& prob, const SolveOptions& opts = {});

/// Disturbance magnitudes entering the ultimate bound.
struct BoundParams {
  double f1 = 0.0;        // bound on ||f_s'||^2
  double f2 = 0.0;        // bound on ||f(.,t)||_2^2
  double yf_peak = 0.0;   // peak norm of the truncated output
  double dyf_peak = 0.0;  // peak norm of its derivative
  Eigen::MatrixXd Gamma;  // learning rate (symmetric positive definite)
};

struct UltimateBound {
  double rho = 0.0;       // bound on ||e_x||, ||e_f||
  double rho_plus = 0.0;  // rho + sqrt(f2): bound on ||e_f(.,t)||_2
  double alpha = 0.0, beta = 0.0, epsilon2 = 0.0;
};

/// Computes the UUB radius
///   alpha = lambda_min(-Xi) / max{lambda_max(P), lambda_max(Gamma^-1)/sigma}
///   beta  = (mu1/sigma) f1 lambda_max(Gamma^-1 G1^-1 Gamma^-1)
///   eps2  = (mu2/sigma) lambda_max(F' G2^-1 F)
///   rho   = sqrt(1/min{lambda_min(P), lambda_min(Gamma^-1)/sigma}) *
///           (sqrt(beta/alpha) + sqrt(eps1/alpha) yf_peak + sqrt(eps2/alpha) dyf_peak)
/// Requires a certified solution (lambda_max(Xi) < 0).
UltimateBound ultimate_bound(const DesignSolution& sol, const BoundParams& bounds);

/// Plain-text serialization (matrices row-major with dimensions) so a harness
/// can pin gains verbatim.
std::string design_to_text(const DesignSolution& sol);
DesignSolution design_from_text(const std::string& text);
void save_design(const std::string& path, const DesignSolution& sol);
DesignSolution load_design(const std::string& path);

}  // namespace dps
