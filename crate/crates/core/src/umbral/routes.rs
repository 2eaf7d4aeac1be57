//! Five independent constructions of the basic sequence of a delta operator.

use num_traits::Zero;

use super::{Triangle, UmbralOp};
use crate::error::{Error, Result};
use crate::fps::Poly;
use crate::operators::{DeltaOp, ShiftOp};
use crate::rat::{factorial, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// `p_n = Q'(D/Q)^{n+1} x^n`
    Transfer,
    /// `p_n = x (D/Q)^n x^{n−1}`
    Steffensen,
    /// `p_{n+1} = x (Q')^{-1} p_n`
    Recurrence,
    /// column `k` is `n! [t^n] (Q̃^{-1})^k / k!`
    Genfunc,
    /// `Σ_j x^j/j! W^j x^n` with `W̃ = Q̃^{-1}(t) − t`
    Km,
}

impl Route {
    pub const ALL: [Route; 5] = [Route::Transfer, Route::Steffensen, Route::Recurrence, Route::Genfunc, Route::Km];

    pub fn name(self) -> &'static str {
        match self {
            Route::Transfer => "transfer",
            Route::Steffensen => "steffensen",
            Route::Recurrence => "recurrence",
            Route::Genfunc => "genfunc",
            Route::Km => "km",
        }
    }

    pub fn parse(s: &str) -> Option<Route> {
        Route::ALL.into_iter().find(|r| r.name() == s)
    }

    /// Indicator truncation needed to build rows `0..=n`.
    pub fn required_trunc(self, n: usize) -> usize {
        match self {
            Route::Transfer => n + 1,
            _ => n,
        }
    }
}

fn monomial(n: usize) -> Poly {
    Poly::monomial(Rat::from_integer(1.into()), n)
}

/// Builds rows `0..=n` of the basic sequence of `q` by the given route.
pub fn basic(q: &DeltaOp, n: usize, route: Route) -> Result<UmbralOp> {
    let need = route.required_trunc(n);
    if q.trunc() < need {
        return Err(Error::Truncation { needed: need, available: q.trunc() });
    }
    let q = DeltaOp::from_indicator(q.indicator().truncate(need.max(1)))?;
    let tri = match route {
        Route::Transfer => transfer(&q, n)?,
        Route::Steffensen => steffensen(&q, n)?,
        Route::Recurrence => recurrence(&q, n)?,
        Route::Genfunc => genfunc(&q, n),
        Route::Km => km(&q, n)?,
    };
    UmbralOp::new(tri, Some(q))
}

fn d_over_q(q: &DeltaOp) -> Result<ShiftOp> {
    ShiftOp::derivative(q.trunc()).divide(q.base())
}

fn transfer(q: &DeltaOp, n: usize) -> Result<Triangle> {
    let a = d_over_q(q)?;
    let mut op = q.base().pincherle().compose(&a);
    let mut images = Vec::with_capacity(n + 1);
    for m in 0..=n {
        images.push(op.apply(&monomial(m))?);
        op = op.compose(&a);
    }
    Triangle::from_polys(&images)
}

fn steffensen(q: &DeltaOp, n: usize) -> Result<Triangle> {
    let a = d_over_q(q)?;
    let mut images = vec![Poly::one()];
    let mut op = a.clone();
    for m in 1..=n {
        images.push(op.apply(&monomial(m - 1))?.mulx());
        op = op.compose(&a);
    }
    Triangle::from_polys(&images)
}

/// Inherently sequential: row `n + 1` needs row `n`.
fn recurrence(q: &DeltaOp, n: usize) -> Result<Triangle> {
    let step = q.base().pincherle().inverse()?;
    let mut images = vec![Poly::one()];
    for m in 0..n {
        let next = step.apply(&images[m])?.mulx();
        images.push(next);
    }
    Triangle::from_polys(&images)
}

fn genfunc(q: &DeltaOp, n: usize) -> Triangle {
    let g = q.inverse_indicator();
    let mut t = Triangle::from_fn(n, |i, k| if i == 0 && k == 0 { Rat::from_integer(1.into()) } else { Rat::zero() });
    let mut gk = g.clone();
    for k in 1..=n {
        let kf = factorial(k);
        for i in k..=n {
            t.set(i, k, gk.coeff(i) * factorial(i) / &kf);
        }
        gk = gk.mul(&g);
    }
    t
}

fn km(q: &DeltaOp, n: usize) -> Result<Triangle> {
    let g = q.inverse_indicator();
    let w = ShiftOp::new(g.sub(&crate::fps::Series::x(g.trunc())));
    let mut images = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut acc = Poly::zero();
        let mut wj = monomial(m);
        for j in 0..=m {
            if wj.is_zero() {
                break;
            }
            let mut term = wj.scale(&factorial(j).recip());
            for _ in 0..j {
                term = term.mulx();
            }
            acc = acc.add(&term);
            wj = w.apply(&wj)?;
        }
        images.push(acc);
    }
    Triangle::from_polys(&images)
}
