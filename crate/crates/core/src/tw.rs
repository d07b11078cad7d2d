//! Tracy–Widom (β = 1) quantiles.
//!
//! The distribution of the largest eigenvalue of a real Wishart matrix,
//! centred and scaled at the spectral edge. Quantiles come from a table of
//! 199 knots (`p = 0.005, 0.010, …, 0.995`) produced offline by
//! `scripts/gen_tw1_table.py` from the Fredholm determinant
//! `F₁(s) = det(I − K_s)`, `K_s(x, y) = Ai(x + y + s)` on `L²(0, ∞)`.
//! Between knots the table is interpolated with a monotone piecewise cubic
//! (Fritsch–Carlson / PCHIP slopes), so the interpolant stays strictly
//! increasing.

use crate::error::{Error, Result};

include!("tw1_table.rs");

/// Monotone table of `(p, quantile)` pairs.
#[derive(Debug, Clone, Copy)]
pub struct TwQuantileTable<'a> {
    knots: &'a [(f64, f64)],
}

impl TwQuantileTable<'static> {
    /// The embedded β = 1 table.
    pub fn beta1() -> Self {
        Self { knots: TW1_TABLE }
    }
}

impl Default for TwQuantileTable<'static> {
    fn default() -> Self {
        Self::beta1()
    }
}

impl<'a> TwQuantileTable<'a> {
    /// Validates that both columns are strictly increasing and that there are
    /// at least two knots.
    pub fn new(knots: &'a [(f64, f64)]) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::Precondition("quantile table needs at least two knots"));
        }
        let increasing = knots
            .windows(2)
            .all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1);
        if !increasing {
            return Err(Error::Precondition(
                "quantile table must be strictly increasing in both columns",
            ));
        }
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &'a [(f64, f64)] {
        self.knots
    }

    /// `(p_min, p_max)` covered by the table.
    pub fn span(&self) -> (f64, f64) {
        (self.knots[0].0, self.knots[self.knots.len() - 1].0)
    }

    /// Quantile at probability `p`; errors outside the table span.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self.span();
        if !(p >= lo && p <= hi) {
            return Err(Error::domain("p", p, "inside the Tracy-Widom table span"));
        }
        let k = self.knots;
        // Index of the interval [k[i].0, k[i+1].0] containing p.
        let i = match k.binary_search_by(|probe| probe.0.total_cmp(&p)) {
            Ok(idx) => return Ok(k[idx].1),
            Err(idx) => idx - 1,
        };
        let (x0, y0) = k[i];
        let (x1, y1) = k[i + 1];
        let h = x1 - x0;
        let d0 = self.slope(i);
        let d1 = self.slope(i + 1);
        let t = (p - x0) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1)
    }

    fn secant(&self, i: usize) -> f64 {
        let (x0, y0) = self.knots[i];
        let (x1, y1) = self.knots[i + 1];
        (y1 - y0) / (x1 - x0)
    }

    fn width(&self, i: usize) -> f64 {
        self.knots[i + 1].0 - self.knots[i].0
    }

    /// PCHIP derivative estimate at knot `i`.
    fn slope(&self, i: usize) -> f64 {
        let n = self.knots.len();
        if n == 2 {
            return self.secant(0);
        }
        if i == 0 {
            return end_slope(self.width(0), self.width(1), self.secant(0), self.secant(1));
        }
        if i == n - 1 {
            return end_slope(
                self.width(n - 2),
                self.width(n - 3),
                self.secant(n - 2),
                self.secant(n - 3),
            );
        }
        let (hl, hr) = (self.width(i - 1), self.width(i));
        let (dl, dr) = (self.secant(i - 1), self.secant(i));
        if dl * dr <= 0.0 {
            return 0.0;
        }
        let w1 = 2.0 * hr + hl;
        let w2 = hr + 2.0 * hl;
        (w1 + w2) / (w1 / dl + w2 / dr)
    }
}

// One-sided three-point estimate, limited to keep the end interval monotone.
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

/// `tw1_quantile(p)` from the embedded β = 1 table.
pub fn tw1_quantile(p: f64) -> Result<f64> {
    TwQuantileTable::beta1().quantile(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_is_valid() {
        let t = TwQuantileTable::new(TW1_TABLE).unwrap();
        assert!(t.knots().len() >= 50);
        assert_eq!(t.span(), (0.005, 0.995));
    }

    #[test]
    fn reference_quantiles() {
        assert!((tw1_quantile(0.50).unwrap() + 1.27).abs() < 0.01);
        assert!((tw1_quantile(0.95).unwrap() - 0.98).abs() < 0.01);
        assert!((tw1_quantile(0.99).unwrap() - 2.02).abs() < 0.01);
    }

    #[test]
    fn out_of_span_is_domain_error() {
        assert!(tw1_quantile(0.001).is_err());
        assert!(tw1_quantile(0.999).is_err());
        assert!(tw1_quantile(f64::NAN).is_err());
    }

    #[test]
    fn interpolation_hits_knots_and_stays_between_them() {
        let t = TwQuantileTable::beta1();
        for w in TW1_TABLE.windows(2) {
            assert_eq!(t.quantile(w[0].0).unwrap(), w[0].1);
            let mid = t.quantile(0.5 * (w[0].0 + w[1].0)).unwrap();
            assert!(mid > w[0].1 && mid < w[1].1);
        }
    }

    #[test]
    fn rejects_non_monotone_table() {
        let bad = [(0.1, 1.0), (0.2, 0.5), (0.3, 2.0)];
        assert!(TwQuantileTable::new(&bad).is_err());
    }
}
