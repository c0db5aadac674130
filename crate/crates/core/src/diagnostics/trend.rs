//! Classification of finite sequences whose limits are out of reach.

use std::fmt;

/// Relative increase over the last quartile below which a sequence looks bounded.
pub const FLAT_INCREASE: f64 = 0.01;
/// Log-log slope (against n+1) above which a sequence is called growing.
pub const GROWTH_SLOPE: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trend {
    BoundedLooking,
    Growing,
    Inconclusive,
}

impl Trend {
    pub fn as_str(self) -> &'static str {
        match self {
            Trend::BoundedLooking => "bounded-looking",
            Trend::Growing => "growing",
            Trend::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Looks at the last quartile (at least two rows) of `(n, value)` pairs.
/// Flat to within 1% → bounded-looking; log-log slope above 0.2 → growing.
pub fn classify_trend(rows: &[(usize, f64)]) -> Trend {
    if rows.len() < 2 || rows.iter().any(|(_, v)| !v.is_finite()) {
        return Trend::Inconclusive;
    }
    let take = rows.len().div_ceil(4).max(2);
    let tail = &rows[rows.len() - take..];
    let (n0, v0) = tail[0];
    let (n1, v1) = tail[tail.len() - 1];
    if v1 - v0 < FLAT_INCREASE * v1.abs() {
        return Trend::BoundedLooking;
    }
    if v0 > 0.0 && v1 > 0.0 && n1 > n0 {
        let slope = (v1 / v0).ln() / ((n1 + 1) as f64 / (n0 + 1) as f64).ln();
        if slope > GROWTH_SLOPE {
            return Trend::Growing;
        }
    }
    Trend::Inconclusive
}
