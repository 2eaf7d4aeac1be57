//! Exact verification of operator identities. Polynomial identities in
//! several variables are checked on grids of distinct rational points, which
//! is conclusive once the grid has more points than the degree.

use num_traits::Zero;

use super::{ShefferOp, Triangle, UmbralOp};
use crate::bell::partial_bell_table_in;
use crate::error::{Error, Result};
use crate::fps::{Poly, Series};
use crate::operators::{DeltaOp, ShiftOp};
use crate::rat::{binom, int, rat, uint, Rat};

/// `m` distinct rational abscissas, deliberately not all integers.
pub fn grid(m: usize) -> Vec<Rat> {
    (0..m).map(|j| rat(2 * j as i64 - m as i64, 3)).collect()
}

fn evals(polys: &[Poly], pts: &[Rat]) -> Vec<Vec<Rat>> {
    polys.iter().map(|p| pts.iter().map(|x| p.eval(x)).collect()).collect()
}

/// Coefficient test `C(i+j,i)·c[n][i+j] = Σ_k C(n,k) c[k][i] c[n−k][j]`
/// plus grid evaluation of `p_n(x+y) = Σ_k C(n,k) p_k(x) p_{n−k}(y)`.
pub fn is_binomial_type(phi: &Triangle) -> bool {
    let n_max = phi.n();
    if phi.get(0, 0) != int(1) {
        return false;
    }
    for n in 0..=n_max {
        for i in 0..=n {
            for j in 0..=(n - i) {
                let lhs = binom(i + j, i) * phi.get(n, i + j);
                let mut rhs = Rat::zero();
                for k in i..=(n - j) {
                    let a = phi.get(k, i);
                    if a.is_zero() {
                        continue;
                    }
                    rhs += binom(n, k) * a * phi.get(n - k, j);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    binomial_grid(phi, phi, phi)
}

/// `s_n(x+y) = Σ_k C(n,k) s_k(x) p_{n−k}(y)` on a grid, with `s`, `p` and
/// the left-hand family given as triangles.
fn binomial_grid(lhs: &Triangle, left: &Triangle, right: &Triangle) -> bool {
    let n_max = lhs.n();
    let pts = grid(n_max + 2);
    let sums: Vec<Rat> = pts.iter().flat_map(|x| pts.iter().map(move |y| x + y)).collect();
    let ex = evals(&left.polys(), &pts);
    let ey = evals(&right.polys(), &pts);
    let es = evals(&lhs.polys(), &sums);
    let m = pts.len();
    for n in 0..=n_max {
        for xi in 0..m {
            for yi in 0..m {
                let mut rhs = Rat::zero();
                for k in 0..=n {
                    rhs += binom(n, k) * &ex[k][xi] * &ey[n - k][yi];
                }
                if es[n][xi * m + yi] != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Sheffer binomial identity `s_n(x+y) = Σ_k C(n,k) s_k(x) φ_{n−k}(y)`.
pub fn sheffer_identity_check(s: &ShefferOp) -> bool {
    binomial_grid(s.tri(), s.tri(), s.basic())
}

/// `Q s_n = n s_{n−1}` for every row.
pub fn sheffer_relation_check(s: &ShefferOp) -> Result<bool> {
    for n in 1..=s.tri().n() {
        if s.delta().apply(&s.poly(n))? != s.poly(n - 1).scale(&uint(n)) {
            return Ok(false);
        }
    }
    Ok(s.delta().apply(&s.poly(0))?.is_zero())
}

/// Cross identity `φ^{(u+v)}_n(x+y) = Σ_k C(n,k) φ^{(u)}_k(x) φ^{(v)}_{n−k}(y)`
/// for every `(u, v)` pair drawn from `params`.
pub fn cross_identity_check(c: &ShiftOp, phi: &UmbralOp, params: &[Rat]) -> Result<bool> {
    let fams: Vec<ShefferOp> = params.iter().map(|u| super::cross(c, u, phi)).collect::<Result<_>>()?;
    for (i, u) in params.iter().enumerate() {
        for (j, v) in params.iter().enumerate() {
            let sum = super::cross(c, &(u + v), phi)?;
            if !binomial_grid(sum.tri(), fams[i].tri(), fams[j].tri()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn mulx_pow(p: &Poly, k: usize) -> Poly {
    let mut q = p.clone();
    for _ in 0..k {
        q = q.mulx();
    }
    q
}

/// `φ𝔛^n = Σ_k coeff[n][k] 𝔛^k U^k V^n φ`, applied to `x^m` for `m ≤ N − n`.
pub fn special_class_check(phi: &UmbralOp, u: &ShiftOp, v: &ShiftOp, n: usize) -> Result<bool> {
    let big_n = phi.n();
    if n > big_n {
        return Err(Error::Truncation { needed: n, available: big_n });
    }
    let vn = ShiftOp::new(v.indicator().pow_u(n));
    for m in 0..=(big_n - n) {
        let base = vn.apply(&phi.poly(m))?;
        let mut rhs = Poly::zero();
        let mut uk = ShiftOp::identity(u.trunc());
        for k in 0..=n {
            let c = phi.tri().get(n, k);
            if !c.is_zero() {
                rhs = rhs.add(&mulx_pow(&uk.apply(&base)?, k).scale(&c));
            }
            uk = uk.compose(u);
        }
        if rhs != phi.poly(n + m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `φ𝔛^n = Σ_k 𝔛^k B_{n,k}(g'(Q), g''(Q), …) φ` with `g = Q̃^{-1}`; the
/// Bell polynomials are evaluated over shift-invariant operators.
pub fn commutation_expansion_check(phi: &UmbralOp, n: usize) -> Result<bool> {
    let q = phi.delta()?;
    let g = q.inverse_indicator();
    let qi = q.indicator();
    let mut args: Vec<Series> = Vec::with_capacity(n);
    let mut gd = g.clone();
    for _ in 1..=n {
        gd = gd.derive();
        args.push(gd.compose(qi)?);
    }
    let t = args.iter().map(|a| a.trunc()).min().unwrap_or(q.trunc());
    let table = partial_bell_table_in(n, &args, &Series::zero(t), &Series::one(t))?;
    let top = phi.n().min(t + n);
    if top < n {
        return Err(Error::Truncation { needed: n, available: top });
    }
    for m in 0..=(top - n) {
        let pm = phi.poly(m);
        let mut rhs = Poly::zero();
        for (k, b) in table[n].iter().enumerate() {
            rhs = rhs.add(&mulx_pow(&ShiftOp::new(b.clone()).apply(&pm)?, k));
        }
        if rhs != phi.poly(n + m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(n − 𝔛 Q/Q') φ_n = 0` for every row.
pub fn differential_equation_check(phi: &UmbralOp, q: &DeltaOp) -> Result<bool> {
    let r = q.base().divide(&q.base().pincherle())?;
    for n in 0..=phi.n() {
        let p = phi.poly(n);
        let lhs = p.scale(&uint(n)).sub(&r.apply(&p)?.mulx());
        if !lhs.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
