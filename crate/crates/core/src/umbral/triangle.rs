use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fps::Poly;
use crate::rat::{parse_rat, Rat};

/// Lower-triangular coefficient matrix of a degree-preserving operator:
/// `U x^n = Σ_{k≤n} coeff[n][k] x^k`. Rows are stored ragged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TriangleJson", into = "TriangleJson")]
pub struct Triangle {
    rows: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct TriangleJson {
    kind: String,
    n: usize,
    rows: Vec<Vec<String>>,
}

impl From<Triangle> for TriangleJson {
    fn from(t: Triangle) -> Self {
        TriangleJson {
            kind: "triangle".into(),
            n: t.n(),
            rows: t.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        }
    }
}

impl TryFrom<TriangleJson> for Triangle {
    type Error = Error;
    fn try_from(j: TriangleJson) -> Result<Self> {
        if j.kind != "triangle" {
            return Err(Error::InvalidParams(format!("expected kind \"triangle\", got \"{}\"", j.kind)));
        }
        if j.rows.len() != j.n + 1 {
            return Err(Error::DimensionMismatch(format!("n = {} needs {} rows", j.n, j.n + 1)));
        }
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Triangle::from_rows(rows)
    }
}

impl Triangle {
    /// Row `n` must hold exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Triangle> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch("a triangle needs at least row 0".into()));
        }
        for (n, r) in rows.iter().enumerate() {
            if r.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!("row {n} has {} entries, expected {}", r.len(), n + 1)));
            }
        }
        Ok(Triangle { rows })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Triangle {
        Triangle { rows: (0..=n).map(|i| (0..=i).map(|k| f(i, k)).collect()).collect() }
    }

    /// Rows from the images `U x^n`; each image must have degree at most `n`.
    pub fn from_polys(images: &[Poly]) -> Result<Triangle> {
        let mut rows = Vec::with_capacity(images.len());
        for (n, p) in images.iter().enumerate() {
            if p.deg().is_some_and(|d| d > n) {
                return Err(Error::DimensionMismatch(format!("image of x^{n} has degree above {n}")));
            }
            rows.push(p.padded(n));
        }
        Triangle::from_rows(rows)
    }

    pub fn identity(n: usize) -> Triangle {
        Triangle::from_fn(n, |i, k| if i == k { Rat::one() } else { Rat::zero() })
    }

    /// Largest row index.
    pub fn n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[Rat] {
        &self.rows[n]
    }

    /// Entry `coeff[n][k]`, zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Rat {
        if k > n {
            Rat::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn set(&mut self, n: usize, k: usize, v: Rat) {
        self.rows[n][k] = v;
    }

    /// The polynomial `U x^n`.
    pub fn poly(&self, n: usize) -> Poly {
        Poly::new(self.rows[n].clone())
    }

    pub fn polys(&self) -> Vec<Poly> {
        (0..=self.n()).map(|n| self.poly(n)).collect()
    }

    pub fn truncate(&self, n: usize) -> Triangle {
        Triangle { rows: self.rows[..=n.min(self.n())].to_vec() }
    }

    pub fn is_unitary(&self) -> bool {
        (0..=self.n()).all(|n| self.rows[n][n].is_one())
    }

    /// `U p` for `deg p ≤ n`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let Some(d) = p.deg() else { return Ok(Poly::zero()) };
        if d > self.n() {
            return Err(Error::Truncation { needed: d, available: self.n() });
        }
        let mut out = vec![Rat::zero(); d + 1];
        for (m, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.rows[m].iter().enumerate() {
                out[k] += c * v;
            }
        }
        Ok(Poly::new(out))
    }

    fn check_same_n(&self, o: &Triangle) -> Result<()> {
        if self.n() != o.n() {
            return Err(Error::DimensionMismatch(format!("triangles of size {} and {}", self.n(), o.n())));
        }
        Ok(())
    }

    /// Operator product `φψ`: `coeff[n][k] = Σ_j φ[j][k] ψ[n][j]`.
    /// As matrices this is `M_ψ · M_φ`.
    pub fn compose(&self, psi: &Triangle) -> Result<Triangle> {
        self.check_same_n(psi)?;
        Ok(Triangle::from_fn(self.n(), |n, k| {
            let mut acc = Rat::zero();
            for j in k..=n {
                let b = &psi.rows[n][j];
                if !b.is_zero() {
                    acc += &self.rows[j][k] * b;
                }
            }
            acc
        }))
    }

    pub fn add(&self, o: &Triangle) -> Result<Triangle> {
        self.check_same_n(o)?;
        Ok(Triangle::from_fn(self.n(), |n, k| &self.rows[n][k] + &o.rows[n][k]))
    }

    pub fn sub(&self, o: &Triangle) -> Result<Triangle> {
        self.check_same_n(o)?;
        Ok(Triangle::from_fn(self.n(), |n, k| &self.rows[n][k] - &o.rows[n][k]))
    }

    pub fn scale(&self, c: &Rat) -> Triangle {
        Triangle::from_fn(self.n(), |n, k| &self.rows[n][k] * c)
    }

    /// `φ^s` for `s ≥ 0` by repeated composition.
    pub fn pow(&self, s: usize) -> Triangle {
        let mut acc = Triangle::identity(self.n());
        for _ in 0..s {
            acc = acc.compose(self).expect("same size");
        }
        acc
    }

    /// Inverse by forward substitution on the lower-triangular matrix.
    pub fn invert(&self) -> Result<Triangle> {
        let n = self.n();
        for i in 0..=n {
            if self.rows[i][i].is_zero() {
                return Err(Error::SingularTriangle { row: i });
            }
        }
        let mut inv: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = vec![Rat::zero(); i + 1];
            row[i] = self.rows[i][i].recip();
            for k in (0..i).rev() {
                let mut acc = Rat::zero();
                for j in (k + 1)..=i {
                    if !row[j].is_zero() {
                        acc += &row[j] * &self.rows[j][k];
                    }
                }
                row[k] = -acc / &self.rows[k][k];
            }
            inv.push(row);
        }
        Ok(Triangle { rows: inv })
    }

    /// Jabotinsky rescaling `k!/n!·coeff[n][k]`.
    pub fn jabotinsky(&self) -> Vec<Vec<Rat>> {
        use crate::rat::factorial;
        (0..=self.n())
            .map(|n| {
                (0..=self.n())
                    .map(|k| if k > n { Rat::zero() } else { factorial(k) / factorial(n) * &self.rows[n][k] })
                    .collect()
            })
            .collect()
    }

    /// Sequence transform. `Row`: `b_n = Σ_k coeff[n][k] a_k`;
    /// `Column`: `b_k = Σ_{n≥k} coeff[n][k] a_n` (the dual form).
    pub fn transform(&self, a: &[Rat], mode: TransformMode) -> Result<Vec<Rat>> {
        if a.is_empty() {
            return Ok(Vec::new());
        }
        let m = a.len() - 1;
        if m > self.n() {
            return Err(Error::DimensionMismatch(format!(
                "sequence of length {} exceeds triangle size {}",
                a.len(),
                self.n() + 1
            )));
        }
        Ok(match mode {
            TransformMode::Row => {
                (0..=m).map(|n| (0..=n).fold(Rat::zero(), |s, k| s + &self.rows[n][k] * &a[k])).collect()
            }
            TransformMode::Column => {
                (0..=m).map(|k| (k..=m).fold(Rat::zero(), |s, n| s + &self.rows[n][k] * &a[n])).collect()
            }
        })
    }

    /// One row per line, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            s.push_str(&line.join("\t"));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    Row,
    Column,
}
