#include "flagcert/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace flagcert {

BlockMatrix BlockMatrix::zeros(const std::vector<int>& sizes) {
  BlockMatrix m;
  m.sizes = sizes;
  for (int s : sizes) m.data.emplace_back(s < 0 ? static_cast<std::size_t>(-s) : static_cast<std::size_t>(s) * s, 0.0);
  return m;
}

double BlockMatrix::get(std::size_t b, int i, int j) const {
  const int s = sizes.at(b);
  if (s < 0) return i == j ? data[b].at(i) : 0.0;
  return data[b].at(static_cast<std::size_t>(i) * s + j);
}

void BlockMatrix::set(std::size_t b, int i, int j, double v) {
  const int s = sizes.at(b);
  if (s < 0) {
    if (i != j) throw std::invalid_argument("off-diagonal entry in a diagonal block");
    data[b].at(i) = v;
    return;
  }
  data[b].at(static_cast<std::size_t>(i) * s + j) = v;
  data[b].at(static_cast<std::size_t>(j) * s + i) = v;
}

SdpaProblem to_sdpa(const SdpProblem& p) {
  const std::size_t n = p.graphs.size();
  if (n == 0) throw std::invalid_argument("to_sdpa: problem without constraints");
  SdpaProblem s;
  s.block_sizes.push_back(-static_cast<int>(n));
  for (const auto& b : p.blocks) s.block_sizes.push_back(b.dim);
  const std::size_t last = n - 1;
  const Rational& cl = p.lambda_coeff[last];
  if (cl <= 0) throw std::invalid_argument("to_sdpa: lambda coefficients must be positive");
  s.offset = to_double(p.objective[last] / cl);

  s.F.assign(n, BlockMatrix::zeros(s.block_sizes));
  s.c.resize(last);
  s.F[0].data[0][last] = to_double(Rational(-1) / cl);
  for (std::size_t bi = 0; bi < p.blocks.size(); ++bi) {
    const auto& m = p.blocks[bi].coeffs[last];
    for (int a = 0; a < m.size(); ++a)
      for (int b = a; b < m.size(); ++b) s.F[0].set(bi + 1, a, b, to_double(-m(a, b) / cl));
  }
  for (std::size_t i = 0; i < last; ++i) {
    const Rational ratio = p.lambda_coeff[i] / cl;
    s.c[i] = to_double(p.objective[i] - p.objective[last] * ratio);
    auto& f = s.F[i + 1];
    f.data[0][i] = 1.0;
    f.data[0][last] = to_double(-ratio);
    for (std::size_t bi = 0; bi < p.blocks.size(); ++bi) {
      const auto& mi = p.blocks[bi].coeffs[i];
      const auto& ml = p.blocks[bi].coeffs[last];
      for (int a = 0; a < mi.size(); ++a)
        for (int b = a; b < mi.size(); ++b) f.set(bi + 1, a, b, to_double(mi(a, b) - ratio * ml(a, b)));
    }
  }
  return s;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Constraint data of one block, stacked: row i is vec(F_{i+1}).
struct StackedBlock {
  int n = 0;
  bool diagonal = false;
  MatrixXd rows;  // m x n (diagonal) or m x n^2
  VectorXd f0;    // n or n^2
};

struct Iterate {
  VectorXd x;
  std::vector<MatrixXd> X, Y;  // diagonal blocks kept as n x 1 columns
};

double max_step(const MatrixXd& M, const MatrixXd& dM, bool diagonal) {
  double lo = std::numeric_limits<double>::infinity();
  if (diagonal) {
    for (Eigen::Index a = 0; a < M.rows(); ++a)
      if (dM(a, 0) < 0) lo = std::min(lo, -M(a, 0) / dM(a, 0));
    return lo;
  }
  Eigen::LLT<MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) return 0;
  MatrixXd Linv = llt.matrixL().solve(MatrixXd::Identity(M.rows(), M.cols()));
  MatrixXd S = Linv * dM * Linv.transpose();
  S = 0.5 * (S + S.transpose());
  const double mn = Eigen::SelfAdjointEigenSolver<MatrixXd>(S, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  return mn < 0 ? -1.0 / mn : lo;
}

/// Cholesky of the Schur matrix, with a growing diagonal shift when it is
/// numerically singular near the optimum.
Eigen::LLT<MatrixXd> factor_schur(const MatrixXd& B) {
  Eigen::LLT<MatrixXd> llt(B);
  if (llt.info() == Eigen::Success) return llt;
  const double scale = std::max(1.0, B.diagonal().cwiseAbs().maxCoeff());
  for (double shift = 1e-14; shift < 1e-4; shift *= 10) {
    llt.compute(B + (shift * scale) * MatrixXd::Identity(B.rows(), B.cols()));
    if (llt.info() == Eigen::Success) return llt;
  }
  throw SolverError("Schur complement factorisation failed");
}

double inner(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

MatrixXd unvec(const VectorXd& v, int n, bool diagonal) {
  if (diagonal) return v;
  return Eigen::Map<const MatrixXd>(v.data(), n, n);
}

VectorXd vec(const MatrixXd& m) { return Eigen::Map<const VectorXd>(m.data(), m.size()); }

class Ipm {
 public:
  Ipm(const SdpaProblem& p, const IpmOptions& o) : opt_(o), m_(static_cast<Eigen::Index>(p.m())) {
    c_ = Eigen::Map<const VectorXd>(p.c.data(), m_);
    for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
      StackedBlock sb;
      sb.diagonal = p.block_sizes[b] < 0;
      sb.n = std::abs(p.block_sizes[b]);
      const Eigen::Index w = sb.diagonal ? sb.n : static_cast<Eigen::Index>(sb.n) * sb.n;
      sb.rows.resize(m_, w);
      sb.f0 = Eigen::Map<const VectorXd>(p.F[0].data[b].data(), w);
      for (Eigen::Index i = 0; i < m_; ++i) sb.rows.row(i) = Eigen::Map<const VectorXd>(p.F[i + 1].data[b].data(), w);
      total_dim_ += sb.n;
      blocks_.push_back(std::move(sb));
    }
  }

  IpmResult run() {
    Iterate it;
    it.x = VectorXd::Zero(m_);
    for (const auto& b : blocks_) {
      if (b.diagonal) {
        it.X.push_back(VectorXd::Constant(b.n, opt_.initial_scale));
        it.Y.push_back(VectorXd::Constant(b.n, opt_.initial_scale));
      } else {
        it.X.push_back(opt_.initial_scale * MatrixXd::Identity(b.n, b.n));
        it.Y.push_back(opt_.initial_scale * MatrixXd::Identity(b.n, b.n));
      }
    }
    IpmResult res;
    Iterate best = it;
    Status best_status;
    double best_merit = std::numeric_limits<double>::infinity();
    int best_iter = 0;
    for (int iter = 0; iter <= opt_.max_iterations; ++iter) {
      const Status st = status(it);
      if (opt_.verbose)
        std::fprintf(stderr, "ipm %3d  pobj % .12e  dobj % .12e  gap %.2e  mu %.2e  pinf %.2e  dinf %.2e\n", iter,
                     st.pobj, st.dobj, st.rel_gap, st.mu, st.pinf, st.dinf);
      if (!std::isfinite(st.pobj) || !std::isfinite(st.dobj) || !std::isfinite(st.mu))
        throw SolverError("interior-point iteration produced non-finite values");
      const double merit = std::max({st.rel_gap, st.pinf, st.dinf});
      if (merit < best_merit) {
        best_merit = merit;
        best = it;
        best_status = st;
        best_iter = iter;
      }
      if (st.rel_gap < opt_.gap_tolerance && st.pinf < opt_.feasibility_tolerance &&
          st.dinf < opt_.feasibility_tolerance) {
        finish(it, st, iter, false, res);
        return res;
      }
      if (iter == opt_.max_iterations || iter - best_iter >= opt_.stall_iterations) break;
      step(it, st);
    }
    if (best_merit < opt_.acceptable_tolerance) {
      if (opt_.verbose) std::fprintf(stderr, "ipm: stalled, returning iterate %d at reduced accuracy\n", best_iter);
      finish(best, best_status, best_iter, true, res);
      return res;
    }
    throw SolverError("interior-point method did not converge within " + std::to_string(opt_.max_iterations) +
                      " iterations (best gap " + fmt(best_status.rel_gap) + ", infeasibility " +
                      fmt(std::max(best_status.pinf, best_status.dinf)) + ")");
  }

 private:
  struct Status {
    double pobj = 0, dobj = 0, rel_gap = 0, mu = 0, pinf = 0, dinf = 0;
    std::vector<MatrixXd> Pr;
    VectorXd d;
  };

  Status status(const Iterate& it) const {
    Status st;
    st.d = c_;
    st.pobj = c_.dot(it.x);
    double xy = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& sb = blocks_[b];
      const VectorXd y = sb.diagonal ? VectorXd(it.Y[b]) : vec(it.Y[b]);
      const VectorXd fx = sb.rows.transpose() * it.x - sb.f0;
      MatrixXd pr = unvec(fx, sb.n, sb.diagonal) - it.X[b];
      st.pinf = std::max(st.pinf, pr.cwiseAbs().maxCoeff());
      st.Pr.push_back(std::move(pr));
      st.d -= sb.rows * y;
      st.dobj += sb.f0.dot(y);
      xy += inner(it.X[b], it.Y[b]);
    }
    st.dinf = m_ > 0 ? st.d.cwiseAbs().maxCoeff() : 0.0;
    st.mu = xy / total_dim_;
    const double scale = std::max(1.0, 0.5 * (std::abs(st.pobj) + std::abs(st.dobj)));
    st.rel_gap = std::max(std::abs(st.pobj - st.dobj), xy) / scale;
    return st;
  }

  struct Direction {
    VectorXd dx;
    std::vector<MatrixXd> dX, dY;
  };

  Direction direction(const Iterate& it, const Status& st, const std::vector<MatrixXd>& Xinv,
                      const Eigen::LLT<MatrixXd>& schur, double mu_target, const std::vector<MatrixXd>* R) const {
    VectorXd r = -c_;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& sb = blocks_[b];
      if (sb.diagonal) {
        VectorXd t = mu_target * Xinv[b].col(0) - Xinv[b].col(0).cwiseProduct(st.Pr[b].col(0)).cwiseProduct(it.Y[b].col(0));
        if (R) t -= Xinv[b].col(0).cwiseProduct((*R)[b].col(0));
        r += sb.rows * t;
      } else {
        MatrixXd t = mu_target * Xinv[b] - Xinv[b] * st.Pr[b] * it.Y[b];
        if (R) t -= Xinv[b] * (*R)[b];
        r += sb.rows * vec(t);
      }
    }
    Direction d;
    d.dx = schur.solve(r);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& sb = blocks_[b];
      MatrixXd dX = st.Pr[b] + unvec(sb.rows.transpose() * d.dx, sb.n, sb.diagonal);
      MatrixXd dY;
      if (sb.diagonal) {
        const VectorXd xi = Xinv[b].col(0);
        VectorXd v = mu_target * xi - it.Y[b].col(0) - xi.cwiseProduct(dX.col(0)).cwiseProduct(it.Y[b].col(0));
        if (R) v -= xi.cwiseProduct((*R)[b].col(0));
        dY = v;
      } else {
        dY = mu_target * Xinv[b] - it.Y[b] - Xinv[b] * dX * it.Y[b];
        if (R) dY -= Xinv[b] * (*R)[b];
        dY = 0.5 * (dY + dY.transpose()).eval();
      }
      d.dX.push_back(std::move(dX));
      d.dY.push_back(std::move(dY));
    }
    return d;
  }

  std::pair<double, double> step_bounds(const Iterate& it, const Direction& d) const {
    double ap = std::numeric_limits<double>::infinity(), ad = ap;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      ap = std::min(ap, max_step(it.X[b], d.dX[b], blocks_[b].diagonal));
      ad = std::min(ad, max_step(it.Y[b], d.dY[b], blocks_[b].diagonal));
    }
    return {ap, ad};
  }

  void step(Iterate& it, const Status& st) const {
    std::vector<MatrixXd> Xinv;
    MatrixXd B = MatrixXd::Zero(m_, m_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& sb = blocks_[b];
      if (sb.diagonal) {
        VectorXd xi = it.X[b].col(0).cwiseInverse();
        Xinv.emplace_back(xi);
        const VectorXd w = xi.cwiseProduct(it.Y[b].col(0));
        B.noalias() += sb.rows * w.asDiagonal() * sb.rows.transpose();
      } else {
        Eigen::LLT<MatrixXd> llt(it.X[b]);
        if (llt.info() != Eigen::Success) throw SolverError("primal iterate lost definiteness");
        MatrixXd xi = llt.solve(MatrixXd::Identity(sb.n, sb.n));
        xi = 0.5 * (xi + xi.transpose()).eval();
        MatrixXd G(m_, static_cast<Eigen::Index>(sb.n) * sb.n);
        for (Eigen::Index j = 0; j < m_; ++j) {
          const MatrixXd fj = unvec(sb.rows.row(j).transpose(), sb.n, false);
          G.row(j) = vec(it.Y[b] * fj * xi).transpose();
        }
        B.noalias() += sb.rows * G.transpose();
        Xinv.push_back(std::move(xi));
      }
    }
    B = 0.5 * (B + B.transpose()).eval();
    const Eigen::LLT<MatrixXd> schur = factor_schur(B);

    // predictor
    const Direction aff = direction(it, st, Xinv, schur, 0.0, nullptr);
    auto [ap, ad] = step_bounds(it, aff);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double xy = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      xy += inner(it.X[b] + ap * aff.dX[b], it.Y[b] + ad * aff.dY[b]);
    const double mu_aff = xy / total_dim_;
    double sigma = st.mu > 0 ? std::pow(std::max(0.0, mu_aff) / st.mu, 3) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // corrector
    std::vector<MatrixXd> R;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].diagonal)
        R.emplace_back(aff.dX[b].col(0).cwiseProduct(aff.dY[b].col(0)));
      else
        R.push_back(aff.dX[b] * aff.dY[b]);
    }
    const Direction d = direction(it, st, Xinv, schur, sigma * st.mu, &R);
    auto [bp, bd] = step_bounds(it, d);
    const double alpha_p = std::min(1.0, opt_.step_fraction * bp);
    const double alpha_d = std::min(1.0, opt_.step_fraction * bd);
    it.x += alpha_p * d.dx;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      it.X[b] += alpha_p * d.dX[b];
      it.Y[b] += alpha_d * d.dY[b];
      if (!blocks_[b].diagonal) {
        it.X[b] = 0.5 * (it.X[b] + it.X[b].transpose()).eval();
        it.Y[b] = 0.5 * (it.Y[b] + it.Y[b].transpose()).eval();
      }
    }
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
  }

  template <class S>
  void finish(const Iterate& it, const S& st, int iter, bool reduced, IpmResult& res) const {
    res.iterations = iter;
    res.primal_objective = st.pobj;
    res.dual_objective = st.dobj;
    res.relative_gap = st.rel_gap;
    res.primal_infeasibility = st.pinf;
    res.dual_infeasibility = st.dinf;
    res.reduced_accuracy = reduced;
    export_iterate(it, res);
  }

  void export_iterate(const Iterate& it, IpmResult& res) const {
    res.x.assign(it.x.data(), it.x.data() + it.x.size());
    std::vector<int> sizes;
    for (const auto& b : blocks_) sizes.push_back(b.diagonal ? -b.n : b.n);
    res.X = BlockMatrix::zeros(sizes);
    res.Y = BlockMatrix::zeros(sizes);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const Eigen::Index w = static_cast<Eigen::Index>(res.X.data[b].size());
      // column-major and row-major agree for symmetric blocks
      Eigen::Map<VectorXd>(res.X.data[b].data(), w) = blocks_[b].diagonal ? VectorXd(it.X[b]) : vec(it.X[b]);
      Eigen::Map<VectorXd>(res.Y.data[b].data(), w) = blocks_[b].diagonal ? VectorXd(it.Y[b]) : vec(it.Y[b]);
    }
  }

  IpmOptions opt_;
  Eigen::Index m_;
  VectorXd c_;
  std::vector<StackedBlock> blocks_;
  double total_dim_ = 0;
};

}  // namespace

IpmResult solve_sdpa(const SdpaProblem& p, const IpmOptions& options) {
  if (p.F.size() != p.m() + 1) throw std::invalid_argument("solve_sdpa: expected m + 1 constraint matrices");
  return Ipm(p, options).run();
}

Solution solution_from_dual(const SdpProblem& p, const SdpaProblem& sdpa, const BlockMatrix& Y) {
  if (Y.sizes != sdpa.block_sizes) throw std::invalid_argument("solution_from_dual: block structure mismatch");
  Solution s;
  double dobj = 0;
  for (std::size_t b = 0; b < Y.sizes.size(); ++b)
    for (std::size_t k = 0; k < Y.data[b].size(); ++k) dobj += sdpa.F[0].data[b][k] * Y.data[b][k];
  s.lambda = sdpa.offset + dobj;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) s.blocks.push_back(Y.data[b + 1]);
  return s;
}

Solution solve(const SdpProblem& p, const IpmOptions& options) {
  const SdpaProblem sdpa = to_sdpa(p);
  if (sdpa.m() == 0) {
    Solution s = solution_from_dual(p, sdpa, BlockMatrix::zeros(sdpa.block_sizes));
    return s;
  }
  const IpmResult r = solve_sdpa(sdpa, options);
  Solution s = solution_from_dual(p, sdpa, r.Y);
  s.iterations = r.iterations;
  s.relative_gap = r.relative_gap;
  s.primal_infeasibility = r.primal_infeasibility;
  s.dual_infeasibility = r.dual_infeasibility;
  s.reduced_accuracy = r.reduced_accuracy;
  return s;
}

}  // namespace flagcert
