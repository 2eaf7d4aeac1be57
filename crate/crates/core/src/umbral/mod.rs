//! Umbral and Sheffer operators as coefficient triangles.
//!
//! An umbral operator `φ ⇝ Q` maps `x^n` to the `n`-th basic polynomial of
//! the delta operator `Q`. Everything here is a finite lower-triangular
//! matrix over ℚ; the operator algebra reduces to triangle arithmetic.

mod checks;
mod routes;
mod triangle;

pub use checks::{
    commutation_expansion_check, cross_identity_check, differential_equation_check, grid, is_binomial_type,
    sheffer_identity_check, sheffer_relation_check, special_class_check,
};
pub use routes::{basic, Route};
pub use triangle::{TransformMode, Triangle};

use num_traits::{One, Zero};

use crate::error::{Error, NotDeltaReason, Result};
use crate::fps::{Poly, Series};
use crate::operators::{DeltaOp, ShiftOp};
use crate::rat::{binom, factorial, int, pow_i, Rat};

/// Basic-sequence triangle, optionally carrying its delta operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmbralOp {
    tri: Triangle,
    delta: Option<DeltaOp>,
}

impl UmbralOp {
    /// Checks `coeff[0][0] = 1`, `coeff[n][0] = 0` for `n ≥ 1`, nonzero
    /// diagonal, and `coeff[n][n] = c^{-n}` when a delta with unit `c` is given.
    pub fn new(tri: Triangle, delta: Option<DeltaOp>) -> Result<UmbralOp> {
        if !tri.get(0, 0).is_one() {
            return Err(Error::InvalidParams("umbral triangle needs coeff[0][0] = 1".into()));
        }
        for n in 1..=tri.n() {
            if !tri.get(n, 0).is_zero() {
                return Err(Error::InvalidParams(format!("umbral triangle needs coeff[{n}][0] = 0")));
            }
            if tri.get(n, n).is_zero() {
                return Err(Error::SingularTriangle { row: n });
            }
        }
        if let Some(q) = &delta {
            let cinv = q.unit().recip();
            for n in 0..=tri.n() {
                if tri.get(n, n) != pow_i(&cinv, n as i64) {
                    return Err(Error::InvalidParams(format!("diagonal at row {n} is not c^-{n}")));
                }
            }
        }
        Ok(UmbralOp { tri, delta })
    }

    pub fn identity(n: usize) -> UmbralOp {
        UmbralOp { tri: Triangle::identity(n), delta: Some(DeltaOp::derivative(n)) }
    }

    pub fn tri(&self) -> &Triangle {
        &self.tri
    }

    pub fn into_tri(self) -> Triangle {
        self.tri
    }

    pub fn n(&self) -> usize {
        self.tri.n()
    }

    pub fn poly(&self, n: usize) -> Poly {
        self.tri.poly(n)
    }

    /// The cached delta, or one recovered from column 1.
    pub fn delta(&self) -> Result<DeltaOp> {
        match &self.delta {
            Some(q) => {
                #[cfg(debug_assertions)]
                if q.trunc() >= self.n() && self.n() >= 1 {
                    if let Ok(r) = delta_of(&self.tri) {
                        debug_assert_eq!(r.indicator(), &q.indicator().truncate(self.n()));
                    }
                }
                Ok(q.clone())
            }
            None => delta_of(&self.tri),
        }
    }
}

/// Recovers `Q` from column 1: `Q̃^{-1}(t) = Σ coeff[n][1] t^n/n!`.
pub fn delta_of(tri: &Triangle) -> Result<DeltaOp> {
    let n = tri.n();
    if n == 0 {
        return Err(Error::Truncation { needed: 1, available: 0 });
    }
    let g = Series::new((0..=n).map(|i| if i == 0 { Rat::zero() } else { tri.get(i, 1) / factorial(i) }).collect());
    if tri.get(1, 1).is_zero() {
        return Err(Error::NotDelta(if g.is_zero() {
            NotDeltaReason::Zero
        } else {
            NotDeltaReason::OrderAtLeastTwo(2)
        }));
    }
    DeltaOp::from_indicator(g.comp_inv()?)
}

/// `s = Aφ` with `A` Appell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShefferOp {
    tri: Triangle,
    delta: DeltaOp,
    appell: ShiftOp,
    basic: Triangle,
}

impl ShefferOp {
    pub fn tri(&self) -> &Triangle {
        &self.tri
    }

    pub fn delta(&self) -> &DeltaOp {
        &self.delta
    }

    pub fn appell(&self) -> &ShiftOp {
        &self.appell
    }

    /// The underlying basic triangle `φ`.
    pub fn basic(&self) -> &Triangle {
        &self.basic
    }

    pub fn poly(&self, n: usize) -> Poly {
        self.tri.poly(n)
    }
}

/// Row `n` of the result is `A p_n`.
pub fn sheffer(a: &ShiftOp, phi: &UmbralOp) -> Result<ShefferOp> {
    if !a.is_appell() {
        return Err(Error::NotAppell);
    }
    let images = (0..=phi.n()).map(|n| a.apply(&phi.poly(n))).collect::<Result<Vec<_>>>()?;
    Ok(ShefferOp {
        tri: Triangle::from_polys(&images)?,
        delta: phi.delta()?,
        appell: a.clone(),
        basic: phi.tri().clone(),
    })
}

/// Cross sequence `φ^{(u)} = C^u φ`; requires `C̃(0) = 1`.
pub fn cross(c: &ShiftOp, u: &Rat, phi: &UmbralOp) -> Result<ShefferOp> {
    if !c.indicator().coeff(0).is_one() {
        return Err(Error::ConstantTerm("cross operator needs indicator constant term 1".into()));
    }
    sheffer(&c.pow_rat(u)?, phi)
}

/// `out` with `φ_n = Σ_k out[n][k] ψ_k`.
pub fn connection_constants(phi: &Triangle, psi: &Triangle) -> Result<Triangle> {
    psi.invert()?.compose(phi)
}

/// `coeff[n][k] = C(n,k) φ_{n−k}(k)`. The delta `R` of the result satisfies
/// `R̃^{-1}(t) = t e^{Q̃^{-1}(t)}`; this is checked against column 1.
pub fn niederhausen(phi: &UmbralOp) -> Result<UmbralOp> {
    let n = phi.n();
    let tri = Triangle::from_fn(n, |i, k| binom(i, k) * phi.poly(i - k).eval(&int(k as i64)));
    let q = phi.delta()?;
    if q.trunc() < n {
        return Err(Error::Truncation { needed: n, available: q.trunc() });
    }
    let g = DeltaOp::from_indicator(q.indicator().truncate(n))?.inverse_indicator();
    let r_inv = g.exp()?.shift_up(1).truncate(n);
    let r = DeltaOp::from_indicator(r_inv.comp_inv()?)?;
    let from_column = delta_of(&tri)?;
    if from_column != r {
        return Err(Error::IdentityFailure("Niederhausen delta does not match t·exp(Q^-1)".into()));
    }
    UmbralOp::new(tri, Some(r))
}

/// `a^{(n)}_{n−k}` for `k = 1..=n`, where `(D̃/Q̃)^n = Σ a^{(n)}_j t^j/j!`,
/// read off the basic triangle as `coeff[n][k] / C(n−1, k−1)`.
pub fn power_coeffs(q: &DeltaOp, n: usize) -> Result<Vec<Rat>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let phi = basic(q, n, Route::Genfunc)?;
    Ok((1..=n).map(|k| phi.tri().get(n, k) / binom(n - 1, k - 1)).collect())
}

/// `coeff[n][k]` as the `x^k` coefficient of `(Q^{[-1]}/D)^k x^n`.
pub fn coeff_via_ratio(q: &DeltaOp, n: usize) -> Result<Triangle> {
    if q.trunc() < n + 1 {
        return Err(Error::Truncation { needed: n + 1, available: q.trunc() });
    }
    let qinv = ShiftOp::new(q.inverse_indicator());
    let ratio = qinv.divide(&ShiftOp::derivative(qinv.trunc()))?;
    let mut t = Triangle::identity(n);
    let mut rk = ShiftOp::identity(ratio.trunc());
    for k in 0..=n {
        for i in k..=n {
            let img = rk.apply(&Poly::monomial(Rat::one(), i))?;
            t.set(i, k, img.coeff(k));
        }
        rk = rk.compose(&ratio);
    }
    Ok(t)
}
