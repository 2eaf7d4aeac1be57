//! Named polynomial families with exact constructors, closed forms and
//! family-specific identity checks.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bell::partial_bell_table;
use crate::error::{Error, Result};
use crate::flow::phi_pow;
use crate::fps::{Poly, Series};
use crate::operators::{DeltaOp, ShiftOp};
use crate::rat::{as_i64, binom, binom_rat, factorial, int, pow_i, rat, uint, Rat};
use crate::sigma::{bernoulli_numbers, SigmaOp};
use crate::umbral::{
    basic, cross_identity_check, differential_equation_check, grid, is_binomial_type, niederhausen, sheffer,
    sheffer_identity_check, sheffer_relation_check, special_class_check, Route, ShefferOp, Triangle, UmbralOp,
};

/// Every family name, in report order.
pub const FAMILY_NAMES: [&str; 15] = [
    "abel",
    "bernoulli",
    "bernoulli2",
    "catalan",
    "catalan_inverse",
    "degenerate_laguerre",
    "divided_difference",
    "falling",
    "idempotent",
    "identity",
    "laguerre",
    "rising",
    "smooth_abel",
    "stretch",
    "touchard",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Identity,
    Stretch(Rat),
    Falling,
    Rising,
    DividedDifference(Rat),
    Touchard,
    Abel(Rat),
    SmoothAbel(Rat),
    Laguerre,
    Catalan,
    CatalanInverse,
    DegenerateLaguerre(usize, Rat),
    Idempotent,
    Bernoulli,
    Bernoulli2,
}

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    name: &'static str,
    params: Vec<Rat>,
    kind: Kind,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (n, v) in self.param_names().iter().zip(&self.params) {
            write!(f, " {n}={v}")?;
        }
        Ok(())
    }
}

fn param(params: &[Rat], i: usize, default: Rat) -> Rat {
    params.get(i).cloned().unwrap_or(default)
}

/// Looks up a family; missing parameters take their defaults
/// (`lambda = 2`, `h = 1/2`, `a = 1`, `p = 2`, `alpha = 0`).
pub fn family(name: &str, params: &[Rat]) -> Result<FamilySpec> {
    let name =
        FAMILY_NAMES.iter().find(|n| **n == name).copied().ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    let kind = match name {
        "identity" => Kind::Identity,
        "stretch" => {
            let l = param(params, 0, int(2));
            if l.is_zero() {
                return Err(Error::InvalidParams("stretch needs lambda != 0".into()));
            }
            Kind::Stretch(l)
        }
        "falling" => Kind::Falling,
        "rising" => Kind::Rising,
        "divided_difference" => Kind::DividedDifference(param(params, 0, rat(1, 2))),
        "touchard" => Kind::Touchard,
        "abel" => Kind::Abel(param(params, 0, int(1))),
        "smooth_abel" => Kind::SmoothAbel(param(params, 0, int(1))),
        "laguerre" => Kind::Laguerre,
        "catalan" => Kind::Catalan,
        "catalan_inverse" => Kind::CatalanInverse,
        "degenerate_laguerre" => {
            let p = param(params, 0, int(2));
            let p = match as_i64(&p) {
                Some(v) if (1..=16).contains(&v) => v as usize,
                _ => {
                    return Err(Error::InvalidParams(format!(
                        "degenerate_laguerre needs integer 1 <= p <= 16, got {p}"
                    )))
                }
            };
            Kind::DegenerateLaguerre(p, param(params, 1, int(0)))
        }
        "idempotent" => Kind::Idempotent,
        "bernoulli" => Kind::Bernoulli,
        "bernoulli2" => Kind::Bernoulli2,
        _ => unreachable!(),
    };
    let spec = FamilySpec { name, params: Vec::new(), kind };
    if params.len() > spec.param_names().len() {
        return Err(Error::InvalidParams(format!(
            "{name} takes {} parameter(s), got {}",
            spec.param_names().len(),
            params.len()
        )));
    }
    let params = match &spec.kind {
        Kind::Stretch(v) | Kind::DividedDifference(v) | Kind::Abel(v) | Kind::SmoothAbel(v) => vec![v.clone()],
        Kind::DegenerateLaguerre(p, a) => vec![uint(*p), a.clone()],
        _ => Vec::new(),
    };
    Ok(FamilySpec { params, ..spec })
}

/// Every family with default parameters.
pub fn all_families() -> Vec<FamilySpec> {
    FAMILY_NAMES.iter().map(|n| family(n, &[]).expect("known family")).collect()
}

fn exp_scaled(a: &Rat, trunc: usize) -> Series {
    Series::x(trunc).scale(a).exp().expect("exp of order-1 series")
}

/// Signed Stirling numbers of the first kind, row `n`.
fn stirling1_row(n: usize) -> Vec<Rat> {
    let mut row = vec![Rat::one()];
    for m in 0..n {
        let mut next = vec![Rat::zero(); m + 2];
        for (k, c) in row.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * uint(m);
        }
        row = next;
    }
    row
}

/// Stirling numbers of the second kind by the explicit alternating sum.
fn stirling2(n: usize, k: usize) -> Rat {
    let s = (0..=k).fold(Rat::zero(), |acc, j| {
        let sign = if (k - j).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        acc + sign * binom(k, j) * pow_i(&uint(j), n as i64)
    });
    s / factorial(k)
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn params(&self) -> &[Rat] {
        &self.params
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self.kind {
            Kind::Stretch(_) => &["lambda"],
            Kind::DividedDifference(_) => &["h"],
            Kind::Abel(_) | Kind::SmoothAbel(_) => &["a"],
            Kind::DegenerateLaguerre(..) => &["p", "alpha"],
            _ => &[],
        }
    }

    /// Indicator of the delta operator to order `trunc`.
    pub fn delta(&self, trunc: usize) -> Result<DeltaOp> {
        let t = trunc.max(1);
        let x = Series::x(t);
        let s = match &self.kind {
            Kind::Identity | Kind::Bernoulli => x,
            Kind::Stretch(l) => x.scale(&l.recip()),
            Kind::Falling | Kind::Bernoulli2 => exp_scaled(&int(1), t).add_scalar(&int(-1)),
            Kind::Rising => exp_scaled(&int(-1), t).neg().add_scalar(&int(1)),
            Kind::DividedDifference(h) => {
                if h.is_zero() {
                    x
                } else {
                    exp_scaled(h, t).add_scalar(&int(-1)).scale(&h.recip())
                }
            }
            Kind::Touchard => x.add_scalar(&int(1)).log()?,
            Kind::Abel(a) | Kind::SmoothAbel(a) => x.mul(&exp_scaled(a, t)),
            Kind::Laguerre => x.mul(&Series::from_ints(t, &[1, -1]).mul_inv()?),
            Kind::Catalan => Series::from_ints(t, &[0, 1, -1]),
            Kind::CatalanInverse => {
                let root = Series::from_ints(t, &[1, -4]).pow_rat(&rat(1, 2))?;
                root.neg().add_scalar(&int(1)).scale(&rat(1, 2))
            }
            Kind::DegenerateLaguerre(p, _) => {
                let base = Series::monomial(-uint(*p), *p, t).add_scalar(&int(1));
                x.mul(&base.pow_rat(&Rat::new((-1).into(), (*p).into()))?)
            }
            Kind::Idempotent => x.mul(&exp_scaled(&int(1), t)).comp_inv()?,
        };
        DeltaOp::from_indicator(s)
    }

    /// The Appell factor for Sheffer families, `None` for basic ones.
    pub fn appell(&self, trunc: usize) -> Result<Option<ShiftOp>> {
        let t = trunc.max(1);
        Ok(match &self.kind {
            Kind::SmoothAbel(a) => Some(ShiftOp::new(Series::x(t).scale(a).add_scalar(&int(1)).mul_inv()?)),
            Kind::DegenerateLaguerre(p, alpha) if !alpha.is_zero() => {
                let base = Series::monomial(-uint(*p), *p, t).add_scalar(&int(1));
                Some(ShiftOp::new(base.pow_rat(alpha)?))
            }
            Kind::Bernoulli | Kind::Bernoulli2 => {
                let q = exp_scaled(&int(1), t + 1).add_scalar(&int(-1)).shift_down(1)?;
                Some(ShiftOp::new(if self.kind == Kind::Bernoulli { q.mul_inv()? } else { q }))
            }
            _ => None,
        })
    }

    pub fn is_basic(&self) -> bool {
        self.appell(1).map(|a| a.is_none()).unwrap_or(false)
    }

    /// Basic triangle for the family's delta, rows `0..=n`.
    pub fn basic(&self, n: usize) -> Result<UmbralOp> {
        basic(&self.delta(n + 1)?, n, Route::Genfunc)
    }

    pub fn sheffer(&self, n: usize) -> Result<Option<ShefferOp>> {
        match self.appell(n + 1)? {
            Some(a) => Ok(Some(sheffer(&a, &self.basic(n)?)?)),
            None => Ok(None),
        }
    }

    /// The family's own triangle: Sheffer when an Appell factor is present.
    pub fn triangle(&self, n: usize) -> Result<Triangle> {
        match self.sheffer(n)? {
            Some(s) => Ok(s.tri().clone()),
            None => Ok(self.basic(n)?.into_tri()),
        }
    }

    /// Closed-form `coeff[n][k]` of [`FamilySpec::triangle`].
    pub fn closed_form(&self, n: usize, k: usize) -> Option<Rat> {
        if k > n {
            return Some(Rat::zero());
        }
        let delta = if n == k { Rat::one() } else { Rat::zero() };
        let d = (n - k) as i64;
        Some(match &self.kind {
            Kind::Identity => delta,
            Kind::Stretch(l) => delta * pow_i(l, n as i64),
            Kind::Falling => stirling1_row(n)[k].clone(),
            Kind::Rising => {
                let s = stirling1_row(n)[k].clone();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            Kind::DividedDifference(h) => stirling1_row(n)[k].clone() * pow_i(h, d),
            Kind::Touchard => stirling2(n, k),
            Kind::Abel(a) => match (n, k) {
                (0, 0) => Rat::one(),
                (_, 0) => Rat::zero(),
                _ => binom(n - 1, k - 1) * pow_i(&(-a * uint(n)), d),
            },
            Kind::SmoothAbel(a) => binom(n, k) * pow_i(&(-a * uint(n)), d),
            Kind::Laguerre => match (n, k) {
                (0, 0) => Rat::one(),
                (_, 0) => Rat::zero(),
                _ => binom(n - 1, k - 1) * factorial(n) / factorial(k) * pow_i(&int(-1), d),
            },
            Kind::Catalan => match (n, k) {
                (0, 0) => Rat::one(),
                (_, 0) => Rat::zero(),
                _ => binom(2 * n - k - 1, n - 1) * factorial(n - 1) / factorial(k - 1),
            },
            Kind::CatalanInverse => binom(k, n - k) * factorial(n) / factorial(k) * pow_i(&int(-1), d),
            Kind::DegenerateLaguerre(p, alpha) => {
                if !(n - k).is_multiple_of(*p) {
                    Rat::zero()
                } else {
                    let j = (n - k) / p;
                    let top = Rat::new(n.into(), (*p).into()) + alpha - int(1);
                    binom_rat(&top, j) * factorial(n) / factorial(k) * pow_i(&-uint(*p), j as i64)
                }
            }
            Kind::Idempotent => binom(n, k) * pow_i(&uint(k), d),
            Kind::Bernoulli => binom(n, k) * &bernoulli_numbers(n)[n - k],
            Kind::Bernoulli2 => {
                // ∫_x^{x+1} (t)_n dt, expanded through the Stirling row
                let s = stirling1_row(n);
                (k..=n).fold(Rat::zero(), |acc, j| acc + &s[j] * binom(j + 1, k) / uint(j + 1))
            }
        })
    }

    /// Closed-form triangle, rows `0..=n`.
    pub fn closed_triangle(&self, n: usize) -> Option<Triangle> {
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..=n {
            rows.push((0..=i).map(|k| self.closed_form(i, k)).collect::<Option<Vec<_>>>()?);
        }
        Triangle::from_rows(rows).ok()
    }

    /// `(U, V)` with `φ𝔛^n = Σ_k coeff[n][k] 𝔛^k U^k V^n φ`, when the family
    /// belongs to the special class.
    pub fn special_class(&self, trunc: usize) -> Result<Option<(ShiftOp, ShiftOp)>> {
        let t = trunc.max(1);
        let one = ShiftOp::identity(t);
        let lin = |c: i64| ShiftOp::new(Series::from_ints(t, &[1, c]));
        Ok(match &self.kind {
            Kind::Identity => Some((one.clone(), one)),
            Kind::Falling => Some((one, ShiftOp::translation(&int(-1), t))),
            Kind::Rising => Some((one, ShiftOp::translation(&int(1), t))),
            Kind::DividedDifference(h) => Some((one, ShiftOp::translation(&-h, t))),
            Kind::Touchard => Some((lin(1), one)),
            Kind::Laguerre => Some((lin(-1), lin(-1))),
            Kind::Catalan => Some((lin(-2), lin(-2).pow_i(-2)?)),
            Kind::CatalanInverse => Some((lin(-4), lin(-4).pow_rat(&rat(-1, 2))?)),
            _ => None,
        })
    }
}

/// Outcome of one identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub identity: String,
    pub family: String,
    pub params: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn get(&self, identity: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.identity == identity)
    }

    /// Stable order: by family, then identity.
    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| (&a.family, &a.identity).cmp(&(&b.family, &b.identity)));
    }
}

enum Verdict {
    Pass(Option<Value>),
    Fail(Value),
}

use Verdict::{Fail, Pass};

fn s(r: &Rat) -> String {
    r.to_string()
}

fn pass() -> Result<Verdict> {
    Ok(Pass(None))
}

fn check(ok: bool, ce: impl FnOnce() -> Value) -> Result<Verdict> {
    Ok(if ok { Pass(None) } else { Fail(ce()) })
}

/// First differing entry, or pass.
fn compare_triangles(expected: &Triangle, got: &Triangle) -> Result<Verdict> {
    let n = expected.n().min(got.n());
    for i in 0..=n {
        for k in 0..=i {
            let (e, g) = (expected.get(i, k), got.get(i, k));
            if e != g {
                return Ok(Fail(json!({"n": i, "k": k, "expected": s(&e), "got": s(&g)})));
            }
        }
    }
    check(expected.n() == got.n(), || json!({"rows": [expected.n(), got.n()]}))
}

fn compare_polys(n: usize, expected: &Poly, got: &Poly) -> Result<Verdict> {
    check(expected == got, || json!({"n": n, "expected": expected.to_string(), "got": got.to_string()}))
}

struct Runner<'a> {
    spec: &'a FamilySpec,
    entries: Vec<ReportEntry>,
}

impl Runner<'_> {
    fn run(&mut self, identity: &str, f: impl FnOnce() -> Result<Verdict>) {
        let (status, counterexample, values) = match f() {
            Ok(Pass(v)) => (Status::Pass, None, v),
            Ok(Fail(c)) => (Status::Fail, Some(c), None),
            Err(e) => (Status::Fail, Some(json!({"error": e.to_string()})), None),
        };
        self.entries.push(ReportEntry {
            identity: identity.to_string(),
            family: self.spec.name.to_string(),
            params: self.spec.params.iter().map(s).collect(),
            status,
            counterexample,
            values,
        });
    }
}

/// Runs every identity for a named family at depth `n`.
pub fn identity_check(name: &str, params: &[Rat], n: usize) -> Result<Report> {
    Ok(check_family(&family(name, params)?, n))
}

/// Runs every identity that applies to `spec` at depth `n`.
pub fn check_family(spec: &FamilySpec, n: usize) -> Report {
    let mut r = Runner { spec, entries: Vec::new() };
    r.run("routes_agree", || routes_agree(spec, n));
    r.run("closed_form", || closed_form_matches(spec, n));
    if spec.is_basic() {
        r.run("binomial_type", || {
            let t = spec.basic(n)?;
            check(is_binomial_type(t.tri()), || json!({"n": n}))
        });
        r.run("differential_equation", || {
            let t = spec.basic(n)?;
            check(differential_equation_check(&t, &spec.delta(n + 1)?)?, || json!({"n": n}))
        });
    } else {
        r.run("sheffer_identity", || {
            let sh = spec.sheffer(n)?.expect("sheffer family");
            check(sheffer_identity_check(&sh) && sheffer_relation_check(&sh)?, || json!({"n": n}))
        });
    }
    r.run("sigma_relations", || sigma_relations(spec, n.min(12)));
    if let Ok(Some(_)) = spec.special_class(1) {
        r.run("special_class", || special_class(spec, n));
    }
    match &spec.kind {
        Kind::Falling => {
            r.run("chu_vandermonde", || chu_vandermonde(n));
            r.run("stirling_recurrences", || stirling_recurrences(n));
            r.run("gen_bernoulli", || gen_bernoulli(n));
            r.run("lah_connection", || lah_connection(n));
        }
        Kind::Touchard => {
            r.run("spivey", spivey);
            r.run("dobinski", dobinski);
            r.run("touchard_recurrence", || touchard_recurrence(n));
            r.run("stirling_recurrences", || stirling_recurrences(n));
            r.run("bell_numbers", || bell_numbers(n));
        }
        Kind::Laguerre => {
            r.run("erdelyi", erdelyi);
            r.run("laguerre_commutation", || laguerre_commutation(n));
            r.run("laguerre_involution", || laguerre_involution(n));
            r.run("lah_connection", || lah_connection(n));
            r.run("laguerre_powers", || laguerre_powers(n));
        }
        Kind::Abel(a) => {
            r.run("abel_identity", || abel_identity(a, n.min(8)));
            if !a.is_zero() {
                r.run("niederhausen", || abel_niederhausen(a, n));
            }
        }
        Kind::SmoothAbel(a) => r.run("abel_identity", || abel_identity(a, n.min(8))),
        Kind::Catalan => r.run("catalan_bell", || catalan_bell(n)),
        Kind::DividedDifference(h) if !h.is_zero() => r.run("conjugation", || divided_difference_conjugation(h, n)),
        Kind::DegenerateLaguerre(p, alpha) => {
            r.run("degenerate_laguerre_ode", || degenerate_ode(*p, alpha));
            r.run("degenerate_cross", || degenerate_cross(*p, alpha));
        }
        Kind::Idempotent => r.run("niederhausen", || idempotent_niederhausen(n)),
        Kind::Bernoulli2 => r.run("bernoulli2_commutation", || bernoulli2_commutation(n)),
        _ => {}
    }
    let mut rep = Report { entries: r.entries };
    rep.sort();
    rep
}

/// Runs every family at default parameters, one worker per family; the
/// result is sorted by family, then identity.
pub fn check_all(n: usize) -> Report {
    let fams = all_families();
    let mut entries: Vec<ReportEntry> = std::thread::scope(|sc| {
        let handles: Vec<_> = fams.iter().map(|f| sc.spawn(move || check_family(f, n))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("check worker panicked").entries).collect()
    });
    entries.sort_by(|a, b| (&a.family, &a.identity).cmp(&(&b.family, &b.identity)));
    Report { entries }
}

fn routes_agree(spec: &FamilySpec, n: usize) -> Result<Verdict> {
    let q = spec.delta(n + 1)?;
    let reference = basic(&q, n, Route::Genfunc)?;
    for route in Route::ALL {
        let t = basic(&q, n, route)?;
        if let Fail(mut c) = compare_triangles(reference.tri(), t.tri())? {
            c["route"] = json!(route.name());
            return Ok(Fail(c));
        }
    }
    pass()
}

fn closed_form_matches(spec: &FamilySpec, n: usize) -> Result<Verdict> {
    match spec.closed_triangle(n) {
        Some(c) => compare_triangles(&c, &spec.triangle(n)?),
        None => pass(),
    }
}

/// `QQ^{-1}_{(a)} = 1` and `Q^{-1}_{(a)}Q = 1 − Ev_a` on `x^m`, `a ∈ {0, 1, −1/2}`
/// (asserted by `SigmaOp::new`).
fn sigma_relations(spec: &FamilySpec, depth: usize) -> Result<Verdict> {
    let q = spec.delta(depth + 1)?;
    for a in [int(0), int(1), rat(-1, 2)] {
        SigmaOp::new(&q, a, depth)?;
    }
    pass()
}

fn special_class(spec: &FamilySpec, n: usize) -> Result<Verdict> {
    let phi = spec.basic(n)?;
    let (u, v) = spec.special_class(n + 1)?.expect("special family");
    for m in 0..=n {
        if !special_class_check(&phi, &u, &v, m)? {
            return Ok(Fail(json!({"n": m})));
        }
    }
    pass()
}

fn falling(n: usize) -> Result<Triangle> {
    family("falling", &[])?.triangle(n)
}

fn rising(n: usize) -> Result<Triangle> {
    family("rising", &[])?.triangle(n)
}

fn laguerre(n: usize) -> Result<Triangle> {
    family("laguerre", &[])?.triangle(n)
}

fn touchard(n: usize) -> Result<Triangle> {
    family("touchard", &[])?.triangle(n)
}

/// `s_n(x+y) = Σ_k C(n,k) l_k(x) r_{n−k}(y)` at grid points.
fn grid_convolution(n_max: usize, sum: &[Poly], left: &[Poly], right: &[Poly]) -> Result<Verdict> {
    let pts = grid(n_max + 2);
    for n in 0..=n_max {
        for x in &pts {
            for y in &pts {
                let lhs = sum[n].eval(&(x + y));
                let rhs =
                    (0..=n).fold(Rat::zero(), |acc, k| acc + binom(n, k) * left[k].eval(x) * right[n - k].eval(y));
                if lhs != rhs {
                    return Ok(Fail(json!({"n": n, "x": s(x), "y": s(y)})));
                }
            }
        }
    }
    pass()
}

fn chu_vandermonde(n: usize) -> Result<Verdict> {
    let p = falling(n)?.polys();
    grid_convolution(n, &p, &p, &p)
}

/// Operator forms `φ𝔛(1 + D) = 𝔛φ`, `φ^{-1}𝔛 = 𝔛(1 + D)φ^{-1}` on monomials, and
/// the coefficient recurrences they encode.
fn stirling_recurrences(n: usize) -> Result<Verdict> {
    let phi = falling(n)?;
    let t = touchard(n)?;
    for m in 0..n {
        let xm = Poly::monomial(Rat::one(), m);
        let xm1 = xm.mulx();
        let lhs = phi.apply(&xm1.add(&xm.derive().mulx()))?;
        if lhs != phi.apply(&xm)?.mulx() {
            return Ok(Fail(json!({"operator": "falling", "m": m})));
        }
        let tm = t.apply(&xm)?;
        if t.apply(&xm1)? != tm.add(&tm.derive()).mulx() {
            return Ok(Fail(json!({"operator": "touchard", "m": m})));
        }
    }
    for i in 0..n {
        for k in 1..=(i + 1) {
            let s1 = phi.get(i, k - 1) - uint(i) * phi.get(i, k);
            if phi.get(i + 1, k) != s1 {
                return Ok(Fail(json!({"kind": "first", "n": i + 1, "k": k})));
            }
            let s2 = uint(k) * t.get(i, k) + t.get(i, k - 1);
            if t.get(i + 1, k) != s2 {
                return Ok(Fail(json!({"kind": "second", "n": i + 1, "k": k})));
            }
        }
    }
    pass()
}

/// `B^{(n)}_k = coeff[n][n−k]_φ / C(n−1, n−k−1)` for `0 ≤ k < n`.
fn gen_bernoulli(n: usize) -> Result<Verdict> {
    let phi = falling(n)?;
    let b = exp_scaled(&int(1), n + 1).add_scalar(&int(-1)).shift_down(1)?.mul_inv()?;
    for m in 1..=n {
        let bm = b.pow_u(m);
        for k in 0..m {
            let lhs = bm.coeff(k) * factorial(k);
            let rhs = phi.get(m, m - k) / binom(m - 1, m - k - 1);
            if lhs != rhs {
                return Ok(Fail(json!({"n": m, "k": k, "expected": s(&lhs), "got": s(&rhs)})));
            }
        }
    }
    pass()
}

/// `φ = ρL`.
fn lah_connection(n: usize) -> Result<Verdict> {
    compare_triangles(&falling(n)?, &rising(n)?.compose(&laguerre(n)?)?)
}

/// Operator Spivey identity through the special class, the generalized
/// polynomial form and its Bell-number instance, all for `n + m ≤ 10`.
fn spivey() -> Result<Verdict> {
    let top = 10;
    let t = touchard(top)?;
    let tp = t.polys();
    for n in 0..=top {
        for m in 0..=(top - n) {
            let mut rhs = Poly::zero();
            for k in 0..=n {
                let inner = (0..=m).fold(Poly::zero(), |acc, j| {
                    acc.add(&tp[j].scale(&(binom(m, j) * pow_i(&uint(k), (m - j) as i64))))
                });
                let mut term = inner.scale(&t.get(n, k));
                for _ in 0..k {
                    term = term.mulx();
                }
                rhs = rhs.add(&term);
            }
            if rhs != tp[n + m] {
                return Ok(Fail(json!({"n": n, "m": m})));
            }
            let bell: Vec<Rat> = tp.iter().map(|p| p.eval(&int(1))).collect();
            let b = (0..=n).fold(Rat::zero(), |acc, k| {
                acc + t.get(n, k)
                    * (0..=m).fold(Rat::zero(), |a2, j| a2 + binom(m, j) * pow_i(&uint(k), (m - j) as i64) * &bell[j])
            });
            if b != bell[n + m] {
                return Ok(Fail(json!({"kind": "bell", "n": n, "m": m})));
            }
        }
    }
    let phi = family("touchard", &[])?.basic(top)?;
    let (u, v) = family("touchard", &[])?.special_class(top + 1)?.expect("special");
    for n in 0..=top {
        if !special_class_check(&phi, &u, &v, n)? {
            return Ok(Fail(json!({"kind": "operator", "n": n})));
        }
    }
    pass()
}

/// `[x^m] e^{−x} Σ_k k^n x^k/k! = S(n, m)` for `n ≤ 10`.
fn dobinski() -> Result<Verdict> {
    let top = 10;
    let t = touchard(top)?;
    for n in 0..=top {
        for m in 0..=n {
            let c = (0..=m).fold(Rat::zero(), |acc, j| {
                let sign = if (m - j) % 2 == 0 { Rat::one() } else { -Rat::one() };
                acc + sign * pow_i(&uint(j), n as i64) / (factorial(j) * factorial(m - j))
            });
            if c != t.get(n, m) {
                return Ok(Fail(json!({"n": n, "m": m, "expected": s(&t.get(n, m)), "got": s(&c)})));
            }
        }
        // coefficients above n vanish
        let c = (0..=(n + 1)).fold(Rat::zero(), |acc, j| {
            let sign = if (n + 1 - j) % 2 == 0 { Rat::one() } else { -Rat::one() };
            acc + sign * pow_i(&uint(j), n as i64) / (factorial(j) * factorial(n + 1 - j))
        });
        if !c.is_zero() {
            return Ok(Fail(json!({"n": n, "m": n + 1})));
        }
    }
    pass()
}

fn touchard_recurrence(n: usize) -> Result<Verdict> {
    let tp = touchard(n)?.polys();
    for m in 0..n {
        let rhs = (0..=m).fold(Poly::zero(), |acc, k| acc.add(&tp[k].scale(&binom(m, k)))).mulx();
        if rhs != tp[m + 1] {
            return Ok(Fail(json!({"n": m + 1})));
        }
    }
    pass()
}

/// Bell numbers `T_n(1)`, checked against `B_{n+1} = Σ C(n,k) B_k`.
fn bell_numbers(n: usize) -> Result<Verdict> {
    let b: Vec<Rat> = touchard(n)?.polys().iter().map(|p| p.eval(&int(1))).collect();
    for m in 0..n {
        let r = (0..=m).fold(Rat::zero(), |acc, k| acc + binom(m, k) * &b[k]);
        if r != b[m + 1] {
            return Ok(Fail(json!({"n": m + 1})));
        }
    }
    Ok(Pass(Some(json!(b.iter().map(s).collect::<Vec<_>>()))))
}

/// `L_n(λx) = Σ Lah(n,k) λ^k (λ−1)^{n−k} L_k(x)` for `λ ∈ {2, 1/2, −1}`, `n ≤ 8`.
fn erdelyi() -> Result<Verdict> {
    let top = 8;
    let l = laguerre(top)?;
    let lp = l.polys();
    let pts = grid(top + 2);
    for lambda in [int(2), rat(1, 2), int(-1)] {
        for n in 0..=top {
            let rhs = (0..=n).fold(Poly::zero(), |acc, k| {
                let lah = l.get(n, k) * pow_i(&int(-1), (n - k) as i64);
                acc.add(&lp[k].scale(&(lah * pow_i(&lambda, k as i64) * pow_i(&(&lambda - int(1)), (n - k) as i64))))
            });
            for x in &pts {
                if lp[n].eval(&(&lambda * x)) != rhs.eval(x) {
                    return Ok(Fail(json!({"lambda": s(&lambda), "n": n, "x": s(x)})));
                }
            }
        }
    }
    pass()
}

/// `L𝔛^n = Σ Lah(n,k)(−1)^{n−k} 𝔛^k L^{(k+n)}` where `L^{(u)} = (1−D)^u L`.
fn laguerre_commutation(n: usize) -> Result<Verdict> {
    let phi = family("laguerre", &[])?.basic(n)?;
    let one_minus_d = ShiftOp::new(Series::from_ints(n + 1, &[1, -1]));
    let crosses =
        (0..=2 * n).map(|u| crate::umbral::cross(&one_minus_d, &uint(u), &phi)).collect::<Result<Vec<_>>>()?;
    for m in 0..=n {
        if !special_class_check(&phi, &one_minus_d, &one_minus_d, m)? {
            return Ok(Fail(json!({"n": m})));
        }
        // the same statement written with cross sequences
        for j in 0..=(n - m) {
            let xj = Poly::monomial(Rat::one(), j);
            let mut rhs = Poly::zero();
            for k in 0..=m {
                let mut term = crosses[k + m].tri().apply(&xj)?.scale(&phi.tri().get(m, k));
                for _ in 0..k {
                    term = term.mulx();
                }
                rhs = rhs.add(&term);
            }
            if rhs != phi.poly(m + j) {
                return Ok(Fail(json!({"kind": "cross", "n": m, "j": j})));
            }
        }
    }
    pass()
}

/// `(L𝒩)^2 = 1` with `𝒩 p(x) = p(−x)`.
fn laguerre_involution(n: usize) -> Result<Verdict> {
    let l = laguerre(n)?;
    let nn = Triangle::from_fn(n, |i, k| if i == k { pow_i(&int(-1), i as i64) } else { Rat::zero() });
    let ln = l.compose(&nn)?;
    compare_triangles(&Triangle::identity(n), &ln.compose(&ln)?)
}

/// `coeff(n,k)_{L^r} = coeff(n,k)_L · r^{n−k}` for `r ∈ {−1, 1, 2, 3, 1/2}`.
fn laguerre_powers(n: usize) -> Result<Verdict> {
    let l = laguerre(n)?;
    let expect = |r: &Rat| Triangle::from_fn(n, |i, k| l.get(i, k) * pow_i(r, (i - k) as i64));
    for r in 1..=3usize {
        if let Fail(mut c) = compare_triangles(&expect(&uint(r)), &l.pow(r))? {
            c["r"] = json!(r);
            return Ok(Fail(c));
        }
    }
    if let Fail(mut c) = compare_triangles(&expect(&int(-1)), &l.invert()?)? {
        c["r"] = json!(-1);
        return Ok(Fail(c));
    }
    let q = family("laguerre", &[])?.delta(n)?;
    if let Fail(mut c) = compare_triangles(&expect(&rat(1, 2)), &phi_pow(&q, &rat(1, 2), n)?)? {
        c["r"] = json!("1/2");
        return Ok(Fail(c));
    }
    pass()
}

fn abel_poly(a: &Rat, n: usize) -> Poly {
    Poly::new((0..=n).map(|k| family_abel_coeff(a, n, k)).collect())
}

fn family_abel_coeff(a: &Rat, n: usize, k: usize) -> Rat {
    FamilySpec { name: "abel", params: vec![a.clone()], kind: Kind::Abel(a.clone()) }
        .closed_form(n, k)
        .expect("closed form")
}

/// Abel's identity and the smooth variant
/// `(x+y−an)^n = Σ C(n,k) x(x−ak)^{k−1} (y−a(n−k))^{n−k}`, on grids.
fn abel_identity(a: &Rat, n: usize) -> Result<Verdict> {
    let abel: Vec<Poly> = (0..=n).map(|m| abel_poly(a, m)).collect();
    if let Fail(mut c) = grid_convolution(n, &abel, &abel, &abel)? {
        c["kind"] = json!("abel");
        return Ok(Fail(c));
    }
    let smooth: Vec<Poly> = (0..=n).map(|m| Poly::new(vec![-a * uint(m), int(1)]).pow(m)).collect();
    if let Fail(mut c) = grid_convolution(n, &smooth, &abel, &smooth)? {
        c["kind"] = json!("smooth");
        return Ok(Fail(c));
    }
    pass()
}

/// `niederhausen(stretch(a))` is `A^{-1}` with coefficients `C(n,k)(ak)^{n−k}`
/// and `(DE^a)^{[-1]} = Σ (−an)^{n−1}/n! t^n`.
fn abel_niederhausen(a: &Rat, n: usize) -> Result<Verdict> {
    let st = family("stretch", std::slice::from_ref(a))?.basic(n)?;
    let nd = niederhausen(&st)?;
    let closed = Triangle::from_fn(n, |i, k| binom(i, k) * pow_i(&(a * uint(k)), (i - k) as i64));
    if let Fail(c) = compare_triangles(&closed, nd.tri())? {
        return Ok(Fail(c));
    }
    let abel = family("abel", std::slice::from_ref(a))?;
    if let Fail(c) = compare_triangles(&abel.triangle(n)?.invert()?, nd.tri())? {
        return Ok(Fail(c));
    }
    let inv = abel.delta(n)?.inverse_indicator();
    for m in 1..=n {
        let e = pow_i(&(-a * uint(m)), (m - 1) as i64) / factorial(m);
        if inv.coeff(m) != e {
            return Ok(Fail(json!({"kind": "lambert", "n": m})));
        }
    }
    pass()
}

/// Idempotent triangle from the Niederhausen transform of the identity, and
/// the Lambert-type delta `Σ (−n)^{n−1}/n! t^n`.
fn idempotent_niederhausen(n: usize) -> Result<Verdict> {
    let nd = niederhausen(&UmbralOp::identity(n))?;
    let closed = family("idempotent", &[])?.closed_triangle(n).expect("closed form");
    if let Fail(c) = compare_triangles(&closed, nd.tri())? {
        return Ok(Fail(c));
    }
    let q = nd.delta()?;
    for m in 1..=n.min(q.trunc()) {
        let e = pow_i(&-uint(m), (m - 1) as i64) / factorial(m);
        if q.indicator().coeff(m) != e {
            return Ok(Fail(json!({"kind": "lambert", "n": m})));
        }
    }
    pass()
}

/// `B_{n,k}(a_1, a_2, …)` with `a_j = j!·C_{j−1}` equals
/// `(n−1)!/(k−1)! · C(2n−k−1, n−1)`.
fn catalan_bell(n: usize) -> Result<Verdict> {
    let args: Vec<Rat> = (1..=n.max(1)).map(|j| factorial(j) * binom(2 * j - 2, j - 1) / uint(j)).collect();
    let table = partial_bell_table(n, &args)?;
    for m in 1..=n {
        for k in 1..=m {
            let e = factorial(m - 1) / factorial(k - 1) * binom(2 * m - k - 1, m - 1);
            if table[m][k] != e {
                return Ok(Fail(json!({"n": m, "k": k, "expected": s(&e), "got": s(&table[m][k])})));
            }
        }
    }
    pass()
}

fn stretch_tri(l: &Rat, n: usize) -> Triangle {
    Triangle::from_fn(n, |i, k| if i == k { pow_i(l, i as i64) } else { Rat::zero() })
}

/// `φ_h = str(1/h) φ str(h)`.
fn divided_difference_conjugation(h: &Rat, n: usize) -> Result<Verdict> {
    let phi_h = family("divided_difference", std::slice::from_ref(h))?.triangle(n)?;
    let conj = stretch_tri(&h.recip(), n).compose(&falling(n)?)?.compose(&stretch_tri(h, n))?;
    compare_triangles(&conj, &phi_h)
}

/// `x p f^{(p+1)} + αp² f^{(p)} − x f' + n f = 0` for `p ∈ {1,2,3}`,
/// several `α`, `n ≤ 8`.
fn degenerate_ode(p0: usize, alpha0: &Rat) -> Result<Verdict> {
    let top = 8;
    let mut cases: Vec<(usize, Rat)> = vec![(p0, alpha0.clone())];
    for p in 1..=3 {
        for a in [int(0), rat(1, 2), rat(-2, 3), int(3)] {
            cases.push((p, a));
        }
    }
    for (p, alpha) in cases {
        let fam = family("degenerate_laguerre", &[uint(p), alpha.clone()])?;
        let t = fam.triangle(top)?;
        let pr = uint(p);
        for n in 0..=top {
            let f = t.poly(n);
            let lhs = f
                .derive_n(p + 1)
                .mulx()
                .scale(&pr)
                .add(&f.derive_n(p).scale(&(&alpha * &pr * &pr)))
                .sub(&f.derive().mulx())
                .add(&f.scale(&uint(n)));
            if !lhs.is_zero() {
                return Ok(Fail(json!({"p": p, "alpha": s(&alpha), "n": n})));
            }
        }
    }
    pass()
}

/// `L^{(α+β)}_{p,n}(x+y) = Σ C(n,k) L^{(α)}_{p,k}(x) L^{(β)}_{p,n−k}(y)` on grids.
fn degenerate_cross(p: usize, alpha: &Rat) -> Result<Verdict> {
    let top = 6;
    let fam = family("degenerate_laguerre", &[uint(p), int(0)])?;
    let phi = fam.basic(top)?;
    let c = ShiftOp::new(Series::monomial(-uint(p), p, top + 1).add_scalar(&int(1)));
    let params = [alpha.clone(), int(0), rat(1, 2), int(-1), rat(5, 3)];
    check(cross_identity_check(&c, &phi, &params)?, || json!({"p": p}))
}

/// `ψ_n = ∫_x^{x+1} (t)_n dt` and `φD = Dψ`.
fn bernoulli2_commutation(n: usize) -> Result<Verdict> {
    let psi = family("bernoulli2", &[])?.triangle(n)?;
    let phi = falling(n)?;
    for m in 0..=n {
        let i = phi.poly(m).integrate();
        if let Fail(mut c) = compare_polys(m, &i.shift(&int(1)).sub(&i), &psi.poly(m))? {
            c["kind"] = json!("integral");
            return Ok(Fail(c));
        }
        let xm = Poly::monomial(Rat::one(), m);
        if let Fail(mut c) = compare_polys(m, &phi.apply(&xm.derive())?, &psi.apply(&xm)?.derive())? {
            c["kind"] = json!("commutation");
            return Ok(Fail(c));
        }
    }
    pass()
}
