#include "dps/lmi_design.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

namespace dps {

void DesignProblem::validate_dimensions() const {
  if (A_s.rows() != A_s.cols()) throw std::invalid_argument("design: A_s must be square");
  if (C_s.cols() != A_s.rows()) throw std::invalid_argument("design: C_s width must equal m");
  if (C_s.rows() < A_s.rows())
    throw std::invalid_argument("design: need n_y >= m for P = F C_s with P nonsingular");
  if (!(mu1 > 0.0 && mu2 > 0.0 && sigma > 0.0))
    throw std::invalid_argument("design: mu1, mu2, sigma must be > 0");
}

DesignSolution DesignSolution::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("scaled: factor must be > 0");
  DesignSolution s = *this;
  s.P *= c;
  s.G1 *= c;
  s.G2 *= c;
  s.X *= c;
  s.F *= c;
  s.epsilon1 *= c;
  s.eta *= c;
  return s;  // L = (cP)^-1 (cX) unchanged
}

namespace {

void require_symmetric(const Eigen::MatrixXd& a, const char* name) {
  if (a.rows() != a.cols() || (a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(std::string("assemble_xi: ") + name +
                                " not symmetric beyond 1e-12");
}

double lambda_min(const Eigen::MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff();
}

double lambda_max(const Eigen::MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().maxCoeff();
}

}  // namespace

Eigen::MatrixXd assemble_xi(const DesignProblem& prob, const LmiCandidate& cand) {
  prob.validate_dimensions();
  const int m = prob.m(), ny = prob.n_y();
  if (cand.P.rows() != m || cand.G1.rows() != m || cand.G2.rows() != m ||
      cand.X.rows() != m || cand.X.cols() != ny || cand.F.rows() != m || cand.F.cols() != ny)
    throw std::invalid_argument("assemble_xi: candidate dimension mismatch");
  require_symmetric(cand.P, "P");
  require_symmetric(cand.G1, "G1");
  require_symmetric(cand.G2, "G2");

  const double s = prob.sigma;
  Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(2 * m + ny, 2 * m + ny);
  const Eigen::MatrixXd xc = cand.X * prob.C_s;
  const Eigen::MatrixXd pa = cand.P * prob.A_s;
  xi.topLeftCorner(m, m) = pa + pa.transpose() - xc - xc.transpose();
  xi.block(m, 0, m, m) = (xc - pa) / s;
  xi.block(0, m, m, m) = xi.block(m, 0, m, m).transpose();
  xi.block(m, m, m, m) =
      -2.0 / s * cand.P + cand.G1 / (s * prob.mu1) + cand.G2 / (s * prob.mu2);
  xi.block(2 * m, 0, ny, m) = cand.X.transpose();
  xi.block(0, 2 * m, m, ny) = cand.X;
  xi.block(2 * m, m, ny, m) = cand.F.transpose() - cand.X.transpose() / s;
  xi.block(m, 2 * m, m, ny) = xi.block(2 * m, m, ny, m).transpose();
  xi.bottomRightCorner(ny, ny) = -cand.epsilon1 * Eigen::MatrixXd::Identity(ny, ny);
  return xi;
}

std::string CertificateReport::to_string() const {
  std::ostringstream os;
  os << "lambda_max(Xi) = " << lambda_max_xi << (negativity_ok ? "  [ok]" : "  [FAIL]") << "\n"
     << "lambda_min(P, G1, G2) = " << lambda_min_P << ", " << lambda_min_G1 << ", "
     << lambda_min_G2 << (pd_ok ? "  [ok]" : "  [FAIL]") << "\n"
     << "eta = ||P - F Cs||_2 = " << eta << (equality_ok ? "  [ok]" : "  [FAIL]") << "\n"
     << "||X - P L||_2 = " << gain_residual << (gain_ok ? "  [ok]" : "  [FAIL]") << "\n"
     << "epsilon1 = " << epsilon1 << "\n"
     << (pass() ? "PASS" : "FAIL");
  return os.str();
}

CertificateReport check_solution(const DesignProblem& prob, const DesignSolution& sol,
                                 const Tolerances& tol) {
  CertificateReport rep;
  rep.epsilon1 = sol.epsilon1;
  const Eigen::MatrixXd xi = assemble_xi(prob, sol.candidate());
  rep.lambda_max_xi = lambda_max(xi);
  rep.lambda_min_P = lambda_min(sol.P);
  rep.lambda_min_G1 = lambda_min(sol.G1);
  rep.lambda_min_G2 = lambda_min(sol.G2);
  rep.eta = (sol.P - sol.F * prob.C_s).operatorNorm();
  rep.gain_residual = (sol.X - sol.P * sol.L).operatorNorm();
  rep.negativity_ok = rep.lambda_max_xi <= -tol.neg;
  rep.pd_ok = rep.lambda_min_P >= tol.pd && rep.lambda_min_G1 >= tol.pd &&
              rep.lambda_min_G2 >= tol.pd && sol.epsilon1 > 0.0;
  rep.equality_ok = rep.eta <= tol.eq;
  // strict runs hold the recovered gain to solve accuracy; relaxed runs
  // (rounded published matrices) inherit tol.eq
  rep.gain_ok = rep.gain_residual <= (tol.eq > 1e-6 ? tol.eq : 1e-10);
  return rep;
}

namespace {

struct Variables {
  Eigen::MatrixXd P, G1, G2, X, N;
  double eps1 = 1.0;
};

struct Margins {
  double psi = 0.0;  // worst margin: max(lmax(Xi), -lmin(P), -lmin(G1), -lmin(G2), -eps1)
  int active = 0;    // 0:Xi 1:P 2:G1 3:G2 4:eps1
};

// subgradient-descent feasibility search on the tr(P)=m slice
class FeasibilitySearch {
 public:
  FeasibilitySearch(const DesignProblem& prob)
      : prob_(prob), m_(prob.m()), ny_(prob.n_y()) {
    const Eigen::MatrixXd cst = prob_.C_s.transpose() * prob_.C_s;
    cpinv_ = cst.ldlt().solve(prob_.C_s.transpose());            // left inverse, m x ny
    nproj_ = Eigen::MatrixXd::Identity(ny_, ny_) - prob_.C_s * cpinv_;  // ny x ny
  }

  Eigen::MatrixXd f_of(const Variables& v) const { return v.P * cpinv_ + v.N * nproj_; }

  Margins evaluate(const Variables& v, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& xi_es,
                   Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& p_es,
                   Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& g1_es,
                   Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& g2_es) const {
    LmiCandidate cand{v.P, v.G1, v.G2, v.X, f_of(v), v.eps1};
    xi_es.compute(assemble_xi(prob_, cand));
    p_es.compute(v.P);
    g1_es.compute(v.G1);
    g2_es.compute(v.G2);
    Margins mg;
    mg.psi = xi_es.eigenvalues().maxCoeff();
    mg.active = 0;
    const double cands[4] = {-p_es.eigenvalues().minCoeff(), -g1_es.eigenvalues().minCoeff(),
                             -g2_es.eigenvalues().minCoeff(), -v.eps1};
    for (int i = 0; i < 4; ++i)
      if (cands[i] > mg.psi) {
        mg.psi = cands[i];
        mg.active = i + 1;
      }
    return mg;
  }

  Variables descend(unsigned seed, int max_iters, double target, double* best_psi_out) const {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto randm = [&](int r, int c, double s) {
      Eigen::MatrixXd a(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) a(i, j) = s * gauss(rng);
      return a;
    };

    Variables v;
    v.P = Eigen::MatrixXd::Identity(m_, m_);
    v.G1 = 0.4 * Eigen::MatrixXd::Identity(m_, m_);
    v.G2 = 0.4 * Eigen::MatrixXd::Identity(m_, m_);
    v.X = randm(m_, ny_, 0.2);
    v.N = randm(m_, ny_, 0.1);
    v.eps1 = prob_.epsilon1_fixed.value_or(1.0);

    Variables best = v;
    double best_psi = std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> xi_es, p_es, g1_es, g2_es;
    const double step0 = 0.3;

    for (int it = 0; it < max_iters; ++it) {
      const Margins mg = evaluate(v, xi_es, p_es, g1_es, g2_es);
      if (mg.psi < best_psi) {
        best_psi = mg.psi;
        best = v;
        if (best_psi < -target) break;
      }

      Variables g;  // subgradient of the active term
      g.P = Eigen::MatrixXd::Zero(m_, m_);
      g.G1 = Eigen::MatrixXd::Zero(m_, m_);
      g.G2 = Eigen::MatrixXd::Zero(m_, m_);
      g.X = Eigen::MatrixXd::Zero(m_, ny_);
      g.N = Eigen::MatrixXd::Zero(m_, ny_);
      g.eps1 = 0.0;

      if (mg.active == 0) {
        const Eigen::VectorXd u = xi_es.eigenvectors().rightCols<1>();
        const Eigen::VectorXd u1 = u.head(m_), u2 = u.segment(m_, m_), u3 = u.tail(ny_);
        const double s = prob_.sigma;
        // d(u' Xi u) by blocks; P also feeds F through the equality manifold
        Eigen::MatrixXd gP = prob_.A_s * u1 * u1.transpose() +
                             u1 * u1.transpose() * prob_.A_s.transpose() -
                             2.0 / s * prob_.A_s * u1 * u2.transpose() -
                             2.0 / s * u2 * u2.transpose();
        Eigen::MatrixXd gF = 2.0 * u2 * u3.transpose();
        gP += gF * cpinv_.transpose();
        g.P = 0.5 * (gP + gP.transpose());
        g.N = gF * nproj_.transpose();
        g.X = -2.0 * u1 * (prob_.C_s * u1).transpose() +
              2.0 / s * u2 * (prob_.C_s * u1).transpose() + 2.0 * u1 * u3.transpose() -
              2.0 / s * u2 * u3.transpose();
        g.G1 = u2 * u2.transpose() / (s * prob_.mu1);
        g.G2 = u2 * u2.transpose() / (s * prob_.mu2);
        g.eps1 = -u3.squaredNorm();
      } else if (mg.active == 1) {
        const Eigen::VectorXd w = p_es.eigenvectors().leftCols<1>();
        g.P = -w * w.transpose();
      } else if (mg.active == 2) {
        const Eigen::VectorXd w = g1_es.eigenvectors().leftCols<1>();
        g.G1 = -w * w.transpose();
      } else if (mg.active == 3) {
        const Eigen::VectorXd w = g2_es.eigenvectors().leftCols<1>();
        g.G2 = -w * w.transpose();
      } else {
        g.eps1 = -1.0;
      }
      if (prob_.epsilon1_fixed) g.eps1 = 0.0;

      const double gnorm =
          std::sqrt(g.P.squaredNorm() + g.G1.squaredNorm() + g.G2.squaredNorm() +
                    g.X.squaredNorm() + g.N.squaredNorm() + g.eps1 * g.eps1);
      if (gnorm < 1e-14) break;
      const double a = step0 / std::sqrt(it + 1.0) / gnorm;
      v.P -= a * g.P;
      v.G1 -= a * g.G1;
      v.G2 -= a * g.G2;
      v.X -= a * g.X;
      v.N -= a * g.N;
      v.eps1 -= a * g.eps1;
      v.P = (0.5 * (v.P + v.P.transpose())).eval();
      v.G1 = (0.5 * (v.G1 + v.G1.transpose())).eval();
      v.G2 = (0.5 * (v.G2 + v.G2.transpose())).eval();
      // projection onto the tr(P) = m normalization slice
      v.P += (m_ - v.P.trace()) / m_ * Eigen::MatrixXd::Identity(m_, m_);
    }
    *best_psi_out = best_psi;
    return best;
  }

  const Eigen::MatrixXd& cpinv() const { return cpinv_; }

 private:
  DesignProblem prob_;
  int m_, ny_;
  Eigen::MatrixXd cpinv_, nproj_;
};

}  // namespace

DesignSolution solve_design(const DesignProblem& prob, const SolveOptions& opts) {
  prob.validate_dimensions();

  // necessary condition: every eigenvalue with Re >= 0 must be observable
  // (A_s is diagonal here, so mode j is unobservable iff C_s column j ~ 0)
  const double cscale = prob.C_s.cwiseAbs().maxCoeff();
  for (int j = 0; j < prob.m(); ++j)
    if (prob.A_s(j, j) >= 0.0 && prob.C_s.col(j).cwiseAbs().maxCoeff() <= 1e-12 * cscale)
      throw InfeasibleDesign(
          "solve_design: infeasible - unstable mode " + std::to_string(j + 1) +
              " is unobservable",
          std::numeric_limits<double>::infinity());

  FeasibilitySearch search(prob);
  std::vector<Variables> results(opts.starts);
  std::vector<double> psis(opts.starts, std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < opts.starts; ++s)
    results[s] = search.descend(opts.seed + static_cast<unsigned>(s), opts.max_iters,
                                opts.target_margin, &psis[s]);

  int best = 0;
  for (int s = 1; s < opts.starts; ++s)
    if (psis[s] < psis[best]) best = s;  // ties keep the lowest seed index
  if (!(psis[best] < 0.0))
    throw InfeasibleDesign("solve_design: no strictly feasible point within budget "
                           "(best margin " +
                               std::to_string(psis[best]) + ")",
                           psis[best]);

  const Variables& v = results[best];
  DesignSolution sol;
  sol.problem = prob;
  sol.P = v.P;
  sol.G1 = v.G1;
  sol.G2 = v.G2;
  sol.X = v.X;
  sol.F = search.f_of(v);  // exact equality projection
  sol.epsilon1 = v.eps1;
  sol.L = v.P.ldlt().solve(v.X);
  sol.eta = (sol.P - sol.F * prob.C_s).operatorNorm();
  return sol;
}

UltimateBound ultimate_bound(const DesignSolution& sol, const BoundParams& bounds) {
  for (double b : {bounds.f1, bounds.f2, bounds.yf_peak, bounds.dyf_peak})
    if (!(b >= 0.0) || !std::isfinite(b))
      throw std::invalid_argument("ultimate_bound: bounds must be finite and nonnegative");
  const DesignProblem& prob = sol.problem;
  const Eigen::MatrixXd xi = assemble_xi(prob, sol.candidate());
  const double lmin_negxi = -lambda_max(xi);
  if (!(lmin_negxi > 0.0))
    throw std::invalid_argument("ultimate_bound: solution not certified (lambda_max(Xi) >= 0)");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(bounds.Gamma);
  if (ges.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("ultimate_bound: Gamma must be positive definite");
  const Eigen::MatrixXd gamma_inv = bounds.Gamma.inverse();

  UltimateBound ub;
  const double s = prob.sigma;
  ub.alpha = lmin_negxi / std::max(lambda_max(sol.P), lambda_max(gamma_inv) / s);
  ub.beta = prob.mu1 / s * bounds.f1 *
            lambda_max(gamma_inv * sol.G1.inverse() * gamma_inv);
  ub.epsilon2 = prob.mu2 / s * lambda_max(sol.F.transpose() * sol.G2.inverse() * sol.F);
  const double level = 1.0 / std::min(lambda_min(sol.P), lambda_min(gamma_inv) / s);
  ub.rho = std::sqrt(level) * (std::sqrt(ub.beta / ub.alpha) +
                               std::sqrt(sol.epsilon1 / ub.alpha) * bounds.yf_peak +
                               std::sqrt(ub.epsilon2 / ub.alpha) * bounds.dyf_peak);
  ub.rho_plus = ub.rho + std::sqrt(bounds.f2);
  return ub;
}

namespace {

void write_matrix(std::ostream& os, const char* name, const Eigen::MatrixXd& a) {
  os << name << ' ' << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j);
    os << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& is) {
  Eigen::Index r, c;
  if (!(is >> r >> c)) throw std::invalid_argument("design file: bad matrix header");
  Eigen::MatrixXd a(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      if (!(is >> a(i, j))) throw std::invalid_argument("design file: truncated matrix");
  return a;
}

}  // namespace

std::string design_to_text(const DesignSolution& sol) {
  std::ostringstream os;
  os.precision(17);
  write_matrix(os, "A_s", sol.problem.A_s);
  write_matrix(os, "C_s", sol.problem.C_s);
  os << "mu1 " << sol.problem.mu1 << "\nmu2 " << sol.problem.mu2 << "\nsigma "
     << sol.problem.sigma << '\n';
  write_matrix(os, "P", sol.P);
  write_matrix(os, "G1", sol.G1);
  write_matrix(os, "G2", sol.G2);
  write_matrix(os, "X", sol.X);
  write_matrix(os, "F", sol.F);
  write_matrix(os, "L", sol.L);
  os << "epsilon1 " << sol.epsilon1 << "\neta " << sol.eta << '\n';
  return os.str();
}

DesignSolution design_from_text(const std::string& text) {
  std::istringstream is(text);
  DesignSolution sol;
  std::string tag;
  while (is >> tag) {
    if (tag == "A_s") sol.problem.A_s = read_matrix(is);
    else if (tag == "C_s") sol.problem.C_s = read_matrix(is);
    else if (tag == "mu1") is >> sol.problem.mu1;
    else if (tag == "mu2") is >> sol.problem.mu2;
    else if (tag == "sigma") is >> sol.problem.sigma;
    else if (tag == "P") sol.P = read_matrix(is);
    else if (tag == "G1") sol.G1 = read_matrix(is);
    else if (tag == "G2") sol.G2 = read_matrix(is);
    else if (tag == "X") sol.X = read_matrix(is);
    else if (tag == "F") sol.F = read_matrix(is);
    else if (tag == "L") sol.L = read_matrix(is);
    else if (tag == "epsilon1") is >> sol.epsilon1;
    else if (tag == "eta") is >> sol.eta;
    else throw std::invalid_argument("design file: unknown tag '" + tag + "'");
  }
  if (sol.P.size() == 0 || sol.F.size() == 0 || sol.L.size() == 0)
    throw std::invalid_argument("design file: missing P, F or L");
  return sol;
}

void save_design(const std::string& path, const DesignSolution& sol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write design file: " + path);
  out << design_to_text(sol);
}

DesignSolution load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read design file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return design_from_text(buf.str());
}

}  // namespace dps
