//! Mechanical words with quadratic-irrational slope, evaluated exactly.

use serde::{Deserialize, Serialize};

use crate::alphabet::Symbol;
use crate::error::{Error, Result};

/// The real number `(p + sqrt(q)) / r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticIrrational {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

fn is_square(q: u128) -> bool {
    let s = q.isqrt();
    s * s == q
}

impl QuadraticIrrational {
    /// Checks that `q` is a positive non-square, `r != 0` and the value lies in (0, 1).
    pub fn slope(p: i64, q: i64, r: i64) -> Result<Self> {
        if q <= 0 || is_square(q as u128) {
            return Err(Error::InvalidSpec(format!(
                "alpha: q = {q} must be a positive non-square"
            )));
        }
        if r == 0 {
            return Err(Error::InvalidSpec("alpha: r must be nonzero".into()));
        }
        let a = QuadraticIrrational { p, q, r };
        // Irrational, so floor(alpha) = 0 means 0 < alpha < 1.
        if a.floor_mul(1) != 0 {
            return Err(Error::InvalidSpec(format!(
                "alpha = ({p} + sqrt({q}))/{r} is not in (0, 1)"
            )));
        }
        Ok(a)
    }

    /// `floor(m * self)`, exactly.
    pub fn floor_mul(&self, m: i64) -> i64 {
        let (sign, den) = if self.r < 0 { (-1i128, -(self.r as i128)) } else { (1, self.r as i128) };
        let m = m as i128;
        let a = sign * m * self.p as i128;
        let c = sign * m;
        let floor_y = match c.cmp(&0) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => (c * c * self.q as i128).unsigned_abs().isqrt() as i128,
            std::cmp::Ordering::Less => -((c * c * self.q as i128).unsigned_abs().isqrt() as i128) - 1,
        };
        // floor((a + y) / den) = floor((a + floor(y)) / den) for den > 0.
        (a + floor_y).div_euclid(den) as i64
    }

    pub fn approx(&self) -> f64 {
        (self.p as f64 + (self.q as f64).sqrt()) / self.r as f64
    }

    /// `x(i) = floor((i+1) alpha) - floor(i alpha)` for `i in 0..len`.
    pub fn mechanical_prefix(&self, len: usize) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(len);
        let mut prev = self.floor_mul(0);
        for i in 0..len as i64 {
            let next = self.floor_mul(i + 1);
            out.push((next - prev) as Symbol);
            prev = next;
        }
        out
    }
}
