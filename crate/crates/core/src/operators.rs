//! Shift-invariant operators represented by their indicator series in `D`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, NotDeltaReason, Result};
use crate::fps::{Order, Poly, Series};
use crate::rat::{parse_rat, Rat};

/// `T = T̃(D)`, stored as the truncated indicator `T̃`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ShiftOpJson", into = "ShiftOpJson")]
pub struct ShiftOp {
    indicator: Series,
}

#[derive(Serialize, Deserialize)]
struct ShiftOpJson {
    kind: String,
    indicator: Series,
}

impl From<ShiftOp> for ShiftOpJson {
    fn from(t: ShiftOp) -> Self {
        ShiftOpJson { kind: "shiftop".into(), indicator: t.indicator }
    }
}

impl TryFrom<ShiftOpJson> for ShiftOp {
    type Error = Error;
    fn try_from(j: ShiftOpJson) -> Result<Self> {
        if j.kind != "shiftop" {
            return Err(Error::InvalidParams(format!("expected kind \"shiftop\", got \"{}\"", j.kind)));
        }
        Ok(ShiftOp { indicator: j.indicator })
    }
}

impl ShiftOp {
    pub fn new(indicator: Series) -> Self {
        ShiftOp { indicator }
    }

    pub fn identity(trunc: usize) -> Self {
        ShiftOp::new(Series::one(trunc))
    }

    /// The derivative `D` (indicator `t`).
    pub fn derivative(trunc: usize) -> Self {
        ShiftOp::new(Series::x(trunc))
    }

    /// Translation `E^a = e^{aD}`.
    pub fn translation(a: &Rat, trunc: usize) -> Self {
        ShiftOp::new(Series::x(trunc).scale(a).exp().expect("a·t has zero constant term"))
    }

    pub fn indicator(&self) -> &Series {
        &self.indicator
    }

    pub fn trunc(&self) -> usize {
        self.indicator.trunc()
    }

    /// `T p = Σ_k a_k p^{(k)}` where `T̃ = Σ a_k t^k`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let Some(d) = p.deg() else { return Ok(Poly::zero()) };
        if self.trunc() < d {
            return Err(Error::Truncation { needed: d, available: self.trunc() });
        }
        let mut acc = Poly::zero();
        let mut dp = p.clone();
        for k in 0..=d {
            let a = self.indicator.coeff(k);
            if !a.is_zero() {
                acc = acc.add(&dp.scale(&a));
            }
            dp = dp.derive();
        }
        Ok(acc)
    }

    /// Operator product `TU`, i.e. the indicator product.
    pub fn compose(&self, u: &ShiftOp) -> ShiftOp {
        ShiftOp::new(self.indicator.mul(&u.indicator))
    }

    pub fn add(&self, u: &ShiftOp) -> ShiftOp {
        ShiftOp::new(self.indicator.add(&u.indicator))
    }

    pub fn scale(&self, c: &Rat) -> ShiftOp {
        ShiftOp::new(self.indicator.scale(c))
    }

    /// Inverse of an invertible (Appell) operator.
    pub fn inverse(&self) -> Result<ShiftOp> {
        Ok(ShiftOp::new(self.indicator.mul_inv()?))
    }

    pub fn pow_i(&self, k: i64) -> Result<ShiftOp> {
        Ok(ShiftOp::new(self.indicator.pow_i(k)?))
    }

    pub fn pow_rat(&self, r: &Rat) -> Result<ShiftOp> {
        Ok(ShiftOp::new(self.indicator.pow_rat(r)?))
    }

    /// Pincherle derivative `T' = T𝔛 − 𝔛T`, whose indicator is `T̃'`.
    pub fn pincherle(&self) -> ShiftOp {
        ShiftOp::new(self.indicator.derive())
    }

    /// Operator division `U/V`: with `k = ord Ṽ`, shift both indicators down
    /// by `k` and multiply by the inverse of the shifted denominator.
    pub fn divide(&self, v: &ShiftOp) -> Result<ShiftOp> {
        let k = match v.indicator.order() {
            Order::Finite(k) => k,
            Order::Infinite => return Err(Error::NotInvertible),
        };
        if self.indicator.order() < Order::Finite(k) {
            return Err(Error::DivisionOrder { num: self.indicator.order().to_string(), den: k });
        }
        let n = self.indicator.trunc().min(v.indicator.trunc());
        if n < k {
            return Err(Error::Truncation { needed: k, available: n });
        }
        let p = self.indicator.truncate(n).shift_down(k)?;
        let r = v.indicator.truncate(n).shift_down(k)?;
        Ok(ShiftOp::new(p.mul(&r.mul_inv()?)))
    }

    /// `T ⋄ U = (T̃ ∘ Ũ)(D)`.
    pub fn diamond(&self, u: &DeltaOp) -> Result<ShiftOp> {
        Ok(ShiftOp::new(self.indicator.compose(u.indicator())?))
    }

    /// True iff the indicator has a nonzero constant term.
    pub fn is_appell(&self) -> bool {
        !self.indicator.coeff(0).is_zero()
    }

    pub fn validate_delta(&self) -> Result<DeltaOp> {
        match self.indicator.order() {
            Order::Finite(1) => Ok(DeltaOp { unit: self.indicator.coeff(1), base: self.clone() }),
            Order::Finite(0) => Err(Error::NotDelta(NotDeltaReason::OrderZero)),
            Order::Finite(k) => Err(Error::NotDelta(NotDeltaReason::OrderAtLeastTwo(k))),
            Order::Infinite => Err(Error::NotDelta(NotDeltaReason::Zero)),
        }
    }
}

/// Shift-invariant operator with indicator of order exactly 1; `unit = Qx`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DeltaOpJson", into = "DeltaOpJson")]
pub struct DeltaOp {
    base: ShiftOp,
    unit: Rat,
}

#[derive(Serialize, Deserialize)]
struct DeltaOpJson {
    kind: String,
    indicator: Series,
    unit: String,
}

impl From<DeltaOp> for DeltaOpJson {
    fn from(q: DeltaOp) -> Self {
        DeltaOpJson { kind: "deltaop".into(), unit: q.unit.to_string(), indicator: q.base.indicator }
    }
}

impl TryFrom<DeltaOpJson> for DeltaOp {
    type Error = Error;
    fn try_from(j: DeltaOpJson) -> Result<Self> {
        if j.kind != "deltaop" {
            return Err(Error::InvalidParams(format!("expected kind \"deltaop\", got \"{}\"", j.kind)));
        }
        let q = ShiftOp::new(j.indicator).validate_delta()?;
        if q.unit != parse_rat(&j.unit)? {
            return Err(Error::InvalidParams("unit does not match the indicator".into()));
        }
        Ok(q)
    }
}

impl DeltaOp {
    /// Validates `indicator` as a delta operator.
    pub fn from_indicator(indicator: Series) -> Result<DeltaOp> {
        ShiftOp::new(indicator).validate_delta()
    }

    pub fn derivative(trunc: usize) -> DeltaOp {
        DeltaOp { base: ShiftOp::derivative(trunc), unit: Rat::one() }
    }

    pub fn base(&self) -> &ShiftOp {
        &self.base
    }

    pub fn indicator(&self) -> &Series {
        &self.base.indicator
    }

    pub fn trunc(&self) -> usize {
        self.base.trunc()
    }

    pub fn unit(&self) -> &Rat {
        &self.unit
    }

    pub fn is_unitary(&self) -> bool {
        self.unit.is_one()
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.base.apply(p)
    }

    /// `Q^{[n]}`: the `n`-fold indicator composition, through the
    /// compositional inverse for negative `n`. `Q^{[0]} = D`.
    pub fn bracket_iterate(&self, n: i64) -> Result<DeltaOp> {
        let step = if n >= 0 { self.indicator().clone() } else { self.indicator().comp_inv()? };
        let mut acc = Series::x(step.trunc());
        for _ in 0..n.unsigned_abs() {
            acc = step.compose(&acc)?;
        }
        DeltaOp::from_indicator(acc)
    }

    /// Indicator of `Q^{[-1]}`, the generating function `Q̃^{-1}(t)`.
    pub fn inverse_indicator(&self) -> Series {
        self.indicator().comp_inv().expect("delta indicator has order 1")
    }
}

/// Operators of the elementary-operator table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elementary {
    Identity,
    /// Linear form `p ↦ p(a)`.
    Eval(Rat),
    Scalar(Rat),
    /// `𝔛p = x·p`.
    MulX,
    /// `E^a p = p(x + a)`.
    Shift(Rat),
    /// `𝒩p = p(−x)`.
    Symmetry,
    Derivative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryValue {
    Poly(Poly),
    Scalar(Rat),
}

pub fn elementary(kind: &Elementary, p: &Poly) -> ElementaryValue {
    use ElementaryValue as V;
    match kind {
        Elementary::Identity => V::Poly(p.clone()),
        Elementary::Eval(a) => V::Scalar(p.eval(a)),
        Elementary::Scalar(c) => V::Poly(p.scale(c)),
        Elementary::MulX => V::Poly(p.mulx()),
        Elementary::Shift(a) => V::Poly(p.shift(a)),
        Elementary::Symmetry => V::Poly(p.symmetry()),
        Elementary::Derivative => V::Poly(p.derive()),
    }
}
