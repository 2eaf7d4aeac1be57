use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{binom, parse_rat, uint, Rat};

/// Exact polynomial with trailing zeros trimmed; the zero polynomial has no
/// coefficients and degree `None` (the −∞ sentinel).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct Poly {
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    kind: String,
    coeffs: Vec<String>,
}

impl From<Poly> for PolyJson {
    fn from(p: Poly) -> Self {
        PolyJson { kind: "poly".into(), coeffs: p.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        if j.kind != "poly" {
            return Err(Error::InvalidParams(format!("expected kind \"poly\", got \"{}\"", j.kind)));
        }
        Ok(Poly::new(j.coeffs.iter().map(|c| parse_rat(c)).collect::<Result<_>>()?))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|v| Rat::from_integer((*v).into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// `c x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficients padded with zeros to length `n + 1`.
    pub fn padded(&self, n: usize) -> Vec<Rat> {
        (0..=n).map(|i| self.coeff(i)).collect()
    }

    pub fn add(&self, q: &Poly) -> Poly {
        let n = self.coeffs.len().max(q.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + q.coeff(i)).collect())
    }

    pub fn sub(&self, q: &Poly) -> Poly {
        let n = self.coeffs.len().max(q.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - q.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, q: &Poly) -> Poly {
        if self.is_zero() || q.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + q.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derive(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * uint(i)).collect())
    }

    /// `k`-th derivative.
    pub fn derive_n(&self, k: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derive();
        }
        p
    }

    /// Antiderivative vanishing at 0.
    pub fn integrate(&self) -> Poly {
        let mut v = vec![Rat::zero()];
        v.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / uint(i + 1)));
        Poly::new(v)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `x · p(x)`.
    pub fn mulx(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero()];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// `p(x + a)`, expanded binomially.
    pub fn shift(&self, a: &Rat) -> Poly {
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n];
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut apow = Rat::one();
            for j in (0..=m).rev() {
                out[j] += c * binom(m, j) * &apow;
                apow *= a;
            }
        }
        Poly::new(out)
    }

    /// `p(λx)`.
    pub fn stretch(&self, lambda: &Rat) -> Poly {
        let mut lp = Rat::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(c * &lp);
            lp *= lambda;
        }
        Poly::new(v)
    }

    /// `p(−x)`.
    pub fn symmetry(&self) -> Poly {
        self.stretch(&-Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_terms(&self.coeffs, "x"))
    }
}
