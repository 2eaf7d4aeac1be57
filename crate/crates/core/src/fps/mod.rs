//! Truncated formal power series and exact polynomials over [`Rat`].

mod poly;
mod series;

pub use poly::Poly;
pub use series::{Order, Series};

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Renders `Σ c_i v^i` as `c0 + c1*v + c2*v^2 ...`, skipping zeros.
pub(crate) fn format_terms(coeffs: &[Rat], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else if a.is_integer() {
            out.push_str(&format!("{a}*{mono}"));
        } else {
            out.push_str(&format!("{}*{mono}/{}", a.numer(), a.denom()));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
