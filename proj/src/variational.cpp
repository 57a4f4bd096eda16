#include "scatterbound/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scatterbound/parallel.hpp"
#include "scatterbound/quadrature.hpp"
#include "scatterbound/special_functions.hpp"
#include "scatterbound/violation.hpp"

namespace scatterbound {

namespace {

double smooth_abs(const cplx& z, double delta) {
  return std::sqrt(std::norm(z) + delta * delta) - delta;
}

//! Residual of the trial state as an affine function of the real parameter
//! vector theta = {Re/Im u_l(interior nodes), Re/Im f_l}: precomputed base
//! field (incident wave only) plus real radial responses per parameter.
class LossModel {
 public:
  LossModel(const RadialPotential& p, const ScatteringAnsatz& a0,
            const OptimizerConfig& cfg)
      : pot_(p), base_(a0), delta_(cfg.smoothing_delta) {
    mesh_ = make_mesh(a0.r_grid(), cfg.radial_panels, cfg.panel_order,
                      cfg.angular_nodes);
    nr_ = mesh_.r.size();
    nu_ = mesh_.u.size();
    lmax_ = a0.lmax;
    n_nodes_ = a0.grid.size();
    n_interior_ = n_nodes_ - 2;
    per_ch_ = 2 * n_interior_ + 2;
    n_par_ = (static_cast<std::size_t>(lmax_) + 1) * per_ch_;

    // Legendre table per angular node.
    pl_.assign((static_cast<std::size_t>(lmax_) + 1) * nu_, 0.0);
    for (std::size_t iu = 0; iu < nu_; ++iu) {
      const auto row = legendre_table(lmax_, mesh_.u[iu]);
      for (int l = 0; l <= lmax_; ++l)
        pl_[static_cast<std::size_t>(l) * nu_ + iu] =
            (2.0 * l + 1.0) * row[static_cast<std::size_t>(l)];
    }

    // Base field: incident wave alone.
    ScatteringAnsatz zero = a0;
    zero.set_channels(
        std::vector<std::vector<cplx>>(
            static_cast<std::size_t>(lmax_) + 1,
            std::vector<cplx>(n_nodes_, cplx{0.0, 0.0})),
        std::vector<cplx>(static_cast<std::size_t>(lmax_) + 1,
                          cplx{0.0, 0.0}));
    f0_ = violation_field(p, zero, mesh_).comp[0];

    // Cardinal-spline responses through the radial operator, per (l, node).
    q_.assign((static_cast<std::size_t>(lmax_) + 1) * n_interior_ * nr_, 0.0);
    ol_.assign((static_cast<std::size_t>(lmax_) + 1) * nr_, cplx{0.0, 0.0});
    std::vector<double> v_at(nr_), k2c(nr_);
    for (std::size_t ir = 0; ir < nr_; ++ir) v_at[ir] = evaluate(p, mesh_.r[ir]);
    const double k2 = a0.k * a0.k;
    const double two_m = 2.0 * a0.m;
    for (std::size_t j = 0; j < n_interior_; ++j) {
      std::vector<cplx> unit(n_nodes_, cplx{0.0, 0.0});
      unit[j + 1] = cplx{1.0, 0.0};
      const CubicSpline card(a0.grid, unit);
      for (std::size_t ir = 0; ir < nr_; ++ir) {
        const double r = mesh_.r[ir];
        const auto ev = card.all(r);
        const double b = std::real(ev.y);
        const double d2b = std::real(ev.d2y);
        for (int l = 0; l <= lmax_; ++l) {
          const double cent = l * (l + 1) / (r * r);
          q_at(l, j, ir) =
              (d2b + (k2 - two_m * v_at[ir] - cent) * b) / (two_m * r);
        }
      }
    }
    for (int l = 0; l <= lmax_; ++l) {
      for (std::size_t ir = 0; ir < nr_; ++ir) {
        const double r = mesh_.r[ir];
        const WindowEval win = window_eval(r, a0.w, l);
        const OutWave ow = out_radial_wave(l, a0.k, a0.eta, r);
        const cplx res = out_radial_residual(l, a0.k, a0.eta, r);
        ol_[static_cast<std::size_t>(l) * nr_ + ir] =
            (win.d2w * ow.v + 2.0 * win.dw * ow.dv + win.w * res) /
                (two_m * r) -
            v_at[ir] * win.w * ow.v / r;
      }
    }

    // Fixed per-parameter scale: the L1 norm of each parameter's response.
    scale_.assign(n_par_, 0.0);
    for (std::size_t j = 0; j < n_par_; ++j) scale_[j] = response_l1(j);
    double s_max = 0.0;
    for (double s : scale_) s_max = std::max(s_max, s);
    for (double& s : scale_) s = std::max(s, 1e-15 * s_max);
  }

  std::size_t n_par() const { return n_par_; }

  //! theta matching the channel data already stored in an ansatz.
  std::vector<double> pack(const ScatteringAnsatz& a) const {
    std::vector<double> th(n_par_, 0.0);
    for (int l = 0; l <= lmax_; ++l) {
      const std::size_t base = static_cast<std::size_t>(l) * per_ch_;
      for (std::size_t j = 0; j < n_interior_; ++j) {
        th[base + 2 * j] = std::real(a.u[static_cast<std::size_t>(l)][j + 1]);
        th[base + 2 * j + 1] =
            std::imag(a.u[static_cast<std::size_t>(l)][j + 1]);
      }
      th[base + 2 * n_interior_] = std::real(a.f[static_cast<std::size_t>(l)]);
      th[base + 2 * n_interior_ + 1] =
          std::imag(a.f[static_cast<std::size_t>(l)]);
    }
    return th;
  }

  ScatteringAnsatz unpack(const std::vector<double>& th) const {
    ScatteringAnsatz a = base_;
    std::vector<std::vector<cplx>> u(
        static_cast<std::size_t>(lmax_) + 1,
        std::vector<cplx>(n_nodes_, cplx{0.0, 0.0}));
    std::vector<cplx> f(static_cast<std::size_t>(lmax_) + 1, cplx{0.0, 0.0});
    for (int l = 0; l <= lmax_; ++l) {
      const std::size_t base = static_cast<std::size_t>(l) * per_ch_;
      for (std::size_t j = 0; j < n_interior_; ++j)
        u[static_cast<std::size_t>(l)][j + 1] =
            cplx(th[base + 2 * j], th[base + 2 * j + 1]);
      f[static_cast<std::size_t>(l)] = cplx(th[base + 2 * n_interior_],
                                            th[base + 2 * n_interior_ + 1]);
    }
    a.set_channels(std::move(u), std::move(f));
    return a;
  }

  //! Channel contribution field (no base), as radial partial sums.
  std::vector<cplx> compose(const std::vector<double>& th) const {
    std::vector<cplx> su((static_cast<std::size_t>(lmax_) + 1) * nr_,
                         cplx{0.0, 0.0});
    for (int l = 0; l <= lmax_; ++l) {
      const std::size_t base = static_cast<std::size_t>(l) * per_ch_;
      cplx* row = su.data() + static_cast<std::size_t>(l) * nr_;
      for (std::size_t j = 0; j < n_interior_; ++j) {
        const cplx c(th[base + 2 * j], th[base + 2 * j + 1]);
        if (c == cplx{0.0, 0.0}) continue;
        const double* q = &q_at_const(l, j, 0);
        for (std::size_t ir = 0; ir < nr_; ++ir) row[ir] += c * q[ir];
      }
      const cplx fl(th[base + 2 * n_interior_],
                    th[base + 2 * n_interior_ + 1]);
      if (fl != cplx{0.0, 0.0}) {
        const cplx* o = ol_.data() + static_cast<std::size_t>(l) * nr_;
        for (std::size_t ir = 0; ir < nr_; ++ir) row[ir] += fl * o[ir];
      }
    }
    return su;
  }

  //! Full field values on the mesh for the given parameters.
  std::vector<cplx> field(const std::vector<double>& th) const {
    const std::vector<cplx> su = compose(th);
    std::vector<cplx> f(nr_ * nu_);
    parallel_for(nr_, [&](std::size_t b, std::size_t e) {
      for (std::size_t ir = b; ir < e; ++ir)
        for (std::size_t iu = 0; iu < nu_; ++iu) {
          cplx val = f0_[ir * nu_ + iu];
          for (int l = 0; l <= lmax_; ++l)
            val += pl_[static_cast<std::size_t>(l) * nu_ + iu] *
                   su[static_cast<std::size_t>(l) * nr_ + ir];
          f[ir * nu_ + iu] = val;
        }
    });
    return f;
  }

  double loss_of(const std::vector<cplx>& f) const {
    return integrate_mesh(mesh_,
                          [&](std::size_t i) { return smooth_abs(f[i], delta_); });
  }

  //! Loss along f + alpha * dir without materializing the sum.
  double loss_along(const std::vector<cplx>& f, const std::vector<cplx>& dir_su,
                    double alpha) const {
    return integrate_mesh(mesh_, [&](std::size_t i) {
      const std::size_t ir = i / nu_;
      const std::size_t iu = i % nu_;
      cplx val = f[i];
      for (int l = 0; l <= lmax_; ++l)
        val += alpha * pl_[static_cast<std::size_t>(l) * nu_ + iu] *
               dir_su[static_cast<std::size_t>(l) * nr_ + ir];
      return smooth_abs(val, delta_);
    });
  }

  //! Central finite-difference gradient at the current field.
  std::vector<double> gradient(const std::vector<cplx>& f, double h) const {
    std::vector<double> g(n_par_, 0.0);
    parallel_for(n_par_, [&](std::size_t jb, std::size_t je) {
      for (std::size_t j = jb; j < je; ++j) {
        const Response rsp = response(j);
        auto shifted = [&](double sgn) {
          return integrate_mesh(mesh_, [&](std::size_t i) {
            const std::size_t ir = i / nu_;
            const std::size_t iu = i % nu_;
            const double p = pl_[static_cast<std::size_t>(rsp.l) * nu_ + iu];
            cplx val = f[i];
            if (rsp.node >= 0) {
              const double dv =
                  sgn * h * p * q_at_const(rsp.l, static_cast<std::size_t>(rsp.node), ir);
              if (rsp.imag)
                val += cplx(0.0, dv);
              else
                val += cplx(dv, 0.0);
            } else {
              const cplx o = ol_[static_cast<std::size_t>(rsp.l) * nr_ + ir];
              val += (rsp.imag ? cplx(0.0, sgn * h) : cplx(sgn * h, 0.0)) * p * o;
            }
            return smooth_abs(val, delta_);
          });
        };
        g[j] = (shifted(1.0) - shifted(-1.0)) / (2.0 * h);
      }
    });
    return g;
  }

  const std::vector<double>& scales() const { return scale_; }

 private:
  struct Response {
    int l = 0;
    int node = -1;  //!< interior node index, or -1 for the out amplitude
    bool imag = false;
  };

  Response response(std::size_t j) const {
    Response r;
    r.l = static_cast<int>(j / per_ch_);
    const std::size_t within = j % per_ch_;
    if (within < 2 * n_interior_) {
      r.node = static_cast<int>(within / 2);
      r.imag = (within % 2) == 1;
    } else {
      r.node = -1;
      r.imag = within == 2 * n_interior_ + 1;
    }
    return r;
  }

  double response_l1(std::size_t j) const {
    const Response rsp = response(j);
    return integrate_mesh(mesh_, [&](std::size_t i) {
      const std::size_t ir = i / nu_;
      const std::size_t iu = i % nu_;
      const double p =
          std::abs(pl_[static_cast<std::size_t>(rsp.l) * nu_ + iu]);
      if (rsp.node >= 0)
        return p * std::abs(q_at_const(rsp.l, static_cast<std::size_t>(rsp.node), ir));
      return p * std::abs(ol_[static_cast<std::size_t>(rsp.l) * nr_ + ir]);
    });
  }

  double& q_at(int l, std::size_t j, std::size_t ir) {
    return q_[(static_cast<std::size_t>(l) * n_interior_ + j) * nr_ + ir];
  }
  const double& q_at_const(int l, std::size_t j, std::size_t ir) const {
    return q_[(static_cast<std::size_t>(l) * n_interior_ + j) * nr_ + ir];
  }

  RadialPotential pot_;
  ScatteringAnsatz base_;
  RadialAngularMesh mesh_;
  double delta_ = 1e-12;
  std::size_t nr_ = 0, nu_ = 0, n_nodes_ = 0, n_interior_ = 0, per_ch_ = 0,
              n_par_ = 0;
  int lmax_ = 0;
  std::vector<double> pl_;
  std::vector<cplx> f0_;
  std::vector<double> q_;
  std::vector<cplx> ol_;
  std::vector<double> scale_;
};

}  // namespace

double loss(const RadialPotential& p, const ScatteringAnsatz& a,
            const OptimizerConfig& cfg) {
  const RadialAngularMesh mesh =
      make_mesh(a.r_grid(), cfg.radial_panels, cfg.panel_order,
                cfg.angular_nodes);
  const MultiComponentField f = violation_field(p, a, mesh);
  return integrate_mesh(mesh, [&](std::size_t i) {
    return smooth_abs(f.comp[0][i], cfg.smoothing_delta);
  });
}

OptimizationResult optimize(const RadialPotential& p,
                            const ScatteringAnsatz& a0,
                            const OptimizerConfig& cfg) {
  const LossModel model(p, a0, cfg);
  std::vector<double> theta = model.pack(a0);
  std::vector<cplx> field = model.field(theta);
  double cur = model.loss_of(field);
  if (!std::isfinite(cur))
    throw std::domain_error("optimize: loss at the initial ansatz is not finite");

  OptimizationResult res;
  res.ansatz = a0;
  double alpha_prev = 0.5;  // first trial step is 1.0
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const std::vector<double> g = model.gradient(field, cfg.fd_step);
    std::vector<double> dir(g.size());
    double slope = 0.0;
    double dir_norm2 = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      dir[j] = -g[j] / model.scales()[j];
      slope += g[j] * dir[j];
      dir_norm2 += dir[j] * dir[j];
    }
    const double dir_norm = std::sqrt(dir_norm2);
    if (slope >= 0.0 || dir_norm == 0.0) {
      res.converged = true;
      break;
    }

    const std::vector<cplx> dir_su = model.compose(dir);
    double alpha = std::min(2.0 * alpha_prev, 1e6);
    bool accepted = false;
    double trial = cur;
    for (int halving = 0; halving < 40; ++halving) {
      trial = model.loss_along(field, dir_su, alpha);
      if (trial <= cur + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      res.line_search_failed = true;
      // Sufficient decrease is unreachable even at the smallest trial step;
      // when that step's predicted decrease is already below the loss
      // tolerance the iterate is stationary to within resolution.
      res.converged =
          std::abs(alpha * slope) <= cfg.loss_tol * std::max(cur, 1e-300);
      res.trace.push_back({iter, cur, 0.0, false});
      break;
    }
    alpha_prev = alpha;
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] += alpha * dir[j];
    field = model.field(theta);
    const double step = alpha * dir_norm;
    const double improvement = cur - trial;
    cur = trial;
    res.trace.push_back({iter, cur, step, true});
    res.iterations = iter + 1;
    if (improvement <= cfg.loss_tol * std::max(cur, 1e-300) ||
        step < cfg.step_tol) {
      res.converged = true;
      break;
    }
  }
  res.final_loss = cur;
  res.ansatz = model.unpack(theta);
  return res;
}

}  // namespace scatterbound
