#include "entcost/conic/ipm.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace entcost::conic {

namespace {

constexpr double kStepFrac = 0.98;

struct BlockWork {
    RMat x, yd;          // iterates
    RMat ri;             // NT factor: R^{-1} with W = R R^T, so G := W^{-1} = ri^T ri
    RMat gs;             // dense G for the Schur accumulation
    RVec sig;            // NT spectrum: scaled X and Y both equal diag(sig)
    Eigen::LLT<RMat> lx; // chol of x (step lengths)
    Eigen::LLT<RMat> ly;
    RMat p;              // primal residual F(y) - x
    RMat z;              // scratch
    RMat dx, dy;
};

// largest alpha in (0, 1] with S + alpha*D >= 0, via min eig of L^-1 D L^-T
double max_step(const Eigen::LLT<RMat>& llt, const RMat& d) {
    RMat m = llt.matrixL().solve(d);
    m = llt.matrixL().solve(m.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin >= -1e-13) return 1.0;
    return std::min(1.0, -kStepFrac / lmin);
}

bool robust_llt(Eigen::LLT<RMat>& llt, const RMat& s) {
    llt.compute(s);
    if (llt.info() == Eigen::Success) return true;
    double shift = 1e-14 * (1.0 + s.diagonal().cwiseAbs().maxCoeff());
    for (int tries = 0; tries < 6; ++tries) {
        llt.compute(s + shift * RMat::Identity(s.rows(), s.cols()));
        if (llt.info() == Eigen::Success) return true;
        shift *= 100;
    }
    return false;
}

// NT scaling from X = Lx Lx^T, Y = Ly Ly^T:  Ly^T Lx = U S V^T gives
// W = R R^T with R = Lx V S^{-1/2}, and R^{-1} X R^{-T} = R^T Y R = diag(S).
bool nt_scaling(BlockWork& w) {
    const int n = static_cast<int>(w.x.rows());
    RMat lx = w.lx.matrixL();
    RMat lyt_lx = RMat(w.ly.matrixL()).transpose() * lx;
    Eigen::JacobiSVD<RMat> svd(lyt_lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
    w.sig = svd.singularValues();
    if (w.sig.minCoeff() <= 0) return false;
    RMat lx_inv = lx.triangularView<Eigen::Lower>().solve(RMat::Identity(n, n));
    w.ri = w.sig.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * lx_inv;
    w.gs.noalias() = w.ri.transpose() * w.ri;
    return true;
}

// Schur complement contribution of one block: B_ij += <F_i, G F_j G>.
void accumulate_schur(const LoweredBlock& blk, const RMat& g, RMat& b) {
    const int nt = static_cast<int>(blk.touch.size());
    const double* gd = g.data();
    const int n = static_cast<int>(g.rows());
    for (int ti = 0; ti < nt; ++ti) {
        const int i = blk.touch[ti];
        const int ei0 = blk.touch_start[ti], ei1 = blk.touch_start[ti + 1];
        for (int tj = ti; tj < nt; ++tj) {
            const int j = blk.touch[tj];
            const int ej0 = blk.touch_start[tj], ej1 = blk.touch_start[tj + 1];
            double acc = 0.0;
            for (int e = ei0; e < ei1; ++e) {
                const int p = blk.ent_r[e], q = blk.ent_c[e];
                const double u = blk.ent_v[e];
                const double* gp = gd + static_cast<long>(p) * n;
                const double* gq = gd + static_cast<long>(q) * n;
                if (p == q) {
                    for (int f = ej0; f < ej1; ++f) {
                        const int r = blk.ent_r[f], s = blk.ent_c[f];
                        const double wv = blk.ent_v[f];
                        acc += (r == s) ? u * wv * gp[r] * gp[r] : 2.0 * u * wv * gp[r] * gp[s];
                    }
                } else {
                    for (int f = ej0; f < ej1; ++f) {
                        const int r = blk.ent_r[f], s = blk.ent_c[f];
                        const double wv = blk.ent_v[f];
                        acc += (r == s) ? 2.0 * u * wv * gp[r] * gq[r]
                                        : 2.0 * u * wv * (gp[r] * gq[s] + gp[s] * gq[r]);
                    }
                }
            }
            b(i, j) += acc;
            if (ti != tj) b(j, i) += acc;
        }
    }
}

} // namespace

IpmResult solve_ipm(const LoweredProblem& lp, const IpmOptions& opt) {
    IpmResult res;
    const int m = lp.m;
    const int keq = static_cast<int>(lp.eq_g.rows());
    const int nblk = static_cast<int>(lp.blocks.size());

    if (lp.presolve_infeasible) {
        res.status = IpmStatus::Infeasible;
        return res;
    }

    int ntot = 0;
    double data_norm = 1.0;
    for (const auto& blk : lp.blocks) {
        ntot += blk.size;
        data_norm = std::max(data_norm, blk.f0.cwiseAbs().maxCoeff());
    }
    const double bnorm = m ? lp.b.cwiseAbs().maxCoeff() : 0.0;
    const double hnorm = keq ? lp.eq_h.cwiseAbs().maxCoeff() : 0.0;

    RVec y = RVec::Zero(m);
    RVec lam = RVec::Zero(keq);
    std::vector<BlockWork> w(nblk);
    for (int b = 0; b < nblk; ++b) {
        const int n = lp.blocks[b].size;
        double xi = 10.0 * (1.0 + lp.blocks[b].f0.cwiseAbs().maxCoeff());
        double eta = 10.0 * (1.0 + bnorm);
        w[b].x = xi * RMat::Identity(n, n);
        w[b].yd = eta * RMat::Identity(n, n);
    }

    RMat schur(m, m);
    RVec d(m), r(m), dy_step(m), dlam(keq);
    double pobj = 0, dobj = 0;
    double best_err = std::numeric_limits<double>::infinity();
    int stall = 0;

    for (int iter = 0; iter < opt.max_iters; ++iter) {
        double err_p = 0;
        for (int b = 0; b < nblk; ++b) {
            w[b].p = lp.blocks[b].assemble(y) - w[b].x;
            err_p = std::max(err_p, w[b].p.cwiseAbs().maxCoeff() /
                                        (1.0 + lp.blocks[b].f0.cwiseAbs().maxCoeff()));
        }
        d = lp.b;
        for (int b = 0; b < nblk; ++b) {
            const auto& blk = lp.blocks[b];
            for (size_t t = 0; t < blk.touch.size(); ++t)
                d(blk.touch[t]) -= blk.inner(static_cast<int>(t), w[b].yd);
        }
        if (keq) d -= lp.eq_g.transpose() * lam;
        RVec e = keq ? RVec(lp.eq_h - lp.eq_g * y) : RVec(0);
        double err_d = m ? d.cwiseAbs().maxCoeff() / (1.0 + bnorm) : 0.0;
        double err_e = keq ? e.cwiseAbs().maxCoeff() / (1.0 + hnorm) : 0.0;

        double mu = 0;
        for (int b = 0; b < nblk; ++b) mu += (w[b].x.array() * w[b].yd.array()).sum();
        mu /= std::max(1, ntot);

        pobj = lp.b.dot(y);
        dobj = keq ? lp.eq_h.dot(lam) : 0.0;
        for (int b = 0; b < nblk; ++b) dobj -= (lp.blocks[b].f0.array() * w[b].yd.array()).sum();
        double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

        res.iters = iter;
        res.err_primal = err_p;
        res.err_dual = err_d;
        res.err_eq = err_e;
        res.rel_gap = gap;
        res.pobj = pobj;
        res.dobj = dobj;

        if (opt.verbose)
            std::fprintf(stderr, "ipm %3d  p %.2e d %.2e e %.2e gap %.2e mu %.2e\n", iter, err_p,
                         err_d, err_e, gap, mu);

        if (err_p <= opt.feas_tol && err_d <= opt.dual_tol && err_e <= opt.feas_tol &&
            gap <= opt.gap_tol) {
            res.status = IpmStatus::Optimal;
            break;
        }

        if (iter > 12) {
            if (dobj > 1e9 * (1.0 + data_norm) && err_d < 1e-6) {
                res.status = IpmStatus::Infeasible;
                break;
            }
            if (pobj < -1e9 * (1.0 + data_norm) && err_p < 1e-6) {
                res.status = IpmStatus::Unbounded;
                break;
            }
            double lam_norm = keq ? lam.cwiseAbs().maxCoeff() : 0.0;
            double ynorm = 0;
            for (int b = 0; b < nblk; ++b) ynorm = std::max(ynorm, w[b].yd.cwiseAbs().maxCoeff());
            if (ynorm + lam_norm > 1e11 && dobj > 1e3 * (1.0 + data_norm)) {
                res.status = IpmStatus::Infeasible;
                break;
            }
            if (y.cwiseAbs().maxCoeff() > 1e11 && pobj < -1e3) {
                res.status = IpmStatus::Unbounded;
                break;
            }
        }

        double err_now = std::max({err_p, err_d, err_e, gap});
        if (err_now < best_err * 0.995) {
            best_err = err_now;
            stall = 0;
        } else if (++stall > 10) {
            res.status = IpmStatus::Inaccurate;
            break;
        }

        bool ok = true;
        for (int b = 0; b < nblk && ok; ++b)
            ok = robust_llt(w[b].lx, w[b].x) && robust_llt(w[b].ly, w[b].yd) && nt_scaling(w[b]);
        if (!ok) {
            res.status = IpmStatus::Inaccurate;
            break;
        }

        schur.setZero();
        for (int b = 0; b < nblk; ++b) accumulate_schur(lp.blocks[b], w[b].gs, schur);
        for (int i = 0; i < m; ++i) schur(i, i) += 1e-13 * (1.0 + schur(i, i));
        Eigen::LLT<RMat> bl(schur);
        if (bl.info() != Eigen::Success) {
            schur.diagonal().array() += 1e-9 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
            bl.compute(schur);
            if (bl.info() != Eigen::Success) {
                res.status = IpmStatus::Inaccurate;
                break;
            }
        }
        RMat binv_gt;
        Eigen::LLT<RMat> sl;
        if (keq) {
            binv_gt = bl.solve(lp.eq_g.transpose());
            RMat s_eq = lp.eq_g * binv_gt;
            s_eq.diagonal().array() += 1e-13;
            sl.compute(s_eq);
            if (sl.info() != Eigen::Success) {
                res.status = IpmStatus::Inaccurate;
                break;
            }
        }

        // All complementarity algebra runs in the NT-scaled frame, where the
        // target is diagonal: scaled X and Y are both diag(sig), and
        // dXhat + dYhat = sigma*mu*inv(sig) - sig.
        auto solve_direction = [&](double sigma_mu, double& ap, double& ad) {
            for (int b = 0; b < nblk; ++b) {
                RMat p_hat = w[b].ri * w[b].p * w[b].ri.transpose();
                RVec rc_hat = -w[b].sig;
                if (sigma_mu > 0) rc_hat += sigma_mu * w[b].sig.cwiseInverse();
                RMat inner = (-p_hat);
                inner.diagonal() += rc_hat;
                w[b].z.noalias() = w[b].ri.transpose() * inner * w[b].ri;
            }
            for (int i = 0; i < m; ++i) r(i) = -d(i);
            for (int b = 0; b < nblk; ++b) {
                const auto& blk = lp.blocks[b];
                for (size_t t = 0; t < blk.touch.size(); ++t)
                    r(blk.touch[t]) += blk.inner(static_cast<int>(t), w[b].z);
            }
            // B dy - G^T dlam = r ;  G dy = e
            if (keq) {
                RVec rhs2 = lp.eq_g * bl.solve(r) - e;
                dlam = -sl.solve(rhs2);
                dy_step = bl.solve(r + lp.eq_g.transpose() * dlam);
            } else {
                dy_step = bl.solve(r);
                dy_step += bl.solve(r - schur.selfadjointView<Eigen::Lower>() * dy_step);
            }
            ap = 1.0;
            ad = 1.0;
            for (int b = 0; b < nblk; ++b) {
                const auto& blk = lp.blocks[b];
                w[b].dx = w[b].p;
                for (size_t t = 0; t < blk.touch.size(); ++t)
                    blk.scatter(static_cast<int>(t), dy_step(blk.touch[t]), w[b].dx);
                RMat dx_hat = w[b].ri * w[b].dx * w[b].ri.transpose();
                RMat dy_hat = -dx_hat;
                RVec rc_hat = -w[b].sig;
                if (sigma_mu > 0) rc_hat += sigma_mu * w[b].sig.cwiseInverse();
                dy_hat.diagonal() += rc_hat;
                w[b].dy.noalias() = w[b].ri.transpose() * dy_hat * w[b].ri;
                w[b].dy = 0.5 * (w[b].dy + w[b].dy.transpose()).eval();
                ap = std::min(ap, max_step(w[b].lx, w[b].dx));
                ad = std::min(ad, max_step(w[b].ly, w[b].dy));
            }
        };

        double ap, ad;
        solve_direction(0.0, ap, ad);
        double mu_aff = 0;
        for (int b = 0; b < nblk; ++b)
            mu_aff += ((w[b].x + ap * w[b].dx).array() * (w[b].yd + ad * w[b].dy).array()).sum();
        mu_aff = std::max(mu_aff / std::max(1, ntot), 0.0);
        double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
        sigma = std::min(1.0, std::max(sigma, 1e-6));

        solve_direction(sigma * mu, ap, ad);

        if (ap < 1e-9 && ad < 1e-9) {
            res.status = IpmStatus::Inaccurate;
            break;
        }
        y += ap * dy_step;
        if (keq) lam += ad * dlam;
        for (int b = 0; b < nblk; ++b) {
            w[b].x += ap * w[b].dx;
            w[b].yd += ad * w[b].dy;
            w[b].x = 0.5 * (w[b].x + w[b].x.transpose()).eval();
            w[b].yd = 0.5 * (w[b].yd + w[b].yd.transpose()).eval();
        }
        if (iter == opt.max_iters - 1) res.status = IpmStatus::Inaccurate;
    }

    res.y = y;
    res.lambda = lam;
    res.x_blocks.resize(nblk);
    res.y_blocks.resize(nblk);
    for (int b = 0; b < nblk; ++b) {
        res.x_blocks[b] = w[b].x;
        res.y_blocks[b] = w[b].yd;
    }
    return res;
}

} // namespace entcost::conic
