//! Linear scales with nice-number ticks.

use crate::error::{Error, Result};

pub const DEFAULT_TICKS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct Scale {
    pub domain: (f64, f64),
    pub range: (f64, f64),
    pub ticks: Vec<f64>,
    pub labels: Vec<String>,
}

/// A tick step `mantissa * 10^exponent` with mantissa in {1, 2, 5}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NiceStep {
    pub mantissa: i64,
    pub exponent: i32,
}

impl NiceStep {
    pub fn value(self) -> f64 {
        self.mantissa as f64 * 10f64.powi(self.exponent)
    }

    /// `i * step`, computed so that decimal steps land on exact decimal values.
    pub fn multiple(self, i: i64) -> f64 {
        if self.exponent < 0 {
            (i * self.mantissa) as f64 / 10f64.powi(-self.exponent)
        } else {
            (i * self.mantissa) as f64 * 10f64.powi(self.exponent)
        }
    }

    pub fn decimals(self) -> usize {
        self.exponent.min(0).unsigned_abs() as usize
    }
}

/// The {1,2,5}×10^k step closest to `raw`; on an exact tie the larger step wins.
pub fn nice_step(raw: f64) -> NiceStep {
    let k0 = raw.log10().floor() as i32;
    let mut best = NiceStep {
        mantissa: 1,
        exponent: k0,
    };
    let mut best_dist = f64::INFINITY;
    for exponent in k0 - 1..=k0 + 1 {
        for mantissa in [1, 2, 5] {
            let cand = NiceStep { mantissa, exponent };
            let d = (cand.value() - raw).abs();
            if d < best_dist || (d == best_dist && cand.value() > best.value()) {
                best = cand;
                best_dist = d;
            }
        }
    }
    best
}

fn format_tick(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Widens a degenerate extent by `max(1, |v| * 0.05)` on each side.
pub fn pad_degenerate(extent: (f64, f64)) -> (f64, f64) {
    let (lo, hi) = extent;
    if lo == hi {
        let pad = (lo.abs() * 0.05).max(1.0);
        (lo - pad, hi + pad)
    } else {
        extent
    }
}

/// Builds a scale whose domain is `extent` (padded if degenerate) and whose ticks
/// are multiples of a nice step lying inside the domain. `range` may run in either
/// direction (vertical axes run bottom to top).
pub fn linear_scale(extent: (f64, f64), range: (f64, f64), target_ticks: usize) -> Result<Scale> {
    let (lo, hi) = extent;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::BadExtent(lo, hi));
    }
    if !range.0.is_finite() || !range.1.is_finite() || range.0 == range.1 {
        return Err(Error::spec("scale.range", "range must be finite and non-empty"));
    }
    let domain = pad_degenerate(extent);
    let step = nice_step((domain.1 - domain.0) / target_ticks.max(1) as f64);
    let first = (domain.0 / step.value()).ceil() as i64 - 1;
    let last = (domain.1 / step.value()).floor() as i64 + 1;
    let ticks: Vec<f64> = (first..=last)
        .map(|i| step.multiple(i))
        .filter(|t| *t >= domain.0 && *t <= domain.1)
        .collect();
    let labels = ticks.iter().map(|t| format_tick(*t, step.decimals())).collect();
    Ok(Scale {
        domain,
        range,
        ticks,
        labels,
    })
}

/// A scale over evenly spaced categories (time periods). Category `i` maps to domain
/// value `i`; at most `max_labels` evenly strided categories get ticks.
pub fn category_scale(categories: &[String], range: (f64, f64), max_labels: usize) -> Result<Scale> {
    if categories.is_empty() {
        return Err(Error::SeriesMismatch);
    }
    let n = categories.len();
    let domain = pad_degenerate((0.0, (n - 1) as f64));
    let stride = n.div_ceil(max_labels.max(1));
    let picked: Vec<usize> = (0..n).step_by(stride).collect();
    Ok(Scale {
        domain,
        range,
        ticks: picked.iter().map(|i| *i as f64).collect(),
        labels: picked.iter().map(|i| categories[*i].clone()).collect(),
    })
}

impl Scale {
    pub fn map(&self, v: f64) -> f64 {
        let (d0, d1) = self.domain;
        let (r0, r1) = self.range;
        r0 + (v - d0) / (d1 - d0) * (r1 - r0)
    }

    pub fn contains(&self, v: f64) -> bool {
        let tol = (self.domain.1 - self.domain.0).abs() * 1e-9;
        v.is_finite() && v >= self.domain.0 - tol && v <= self.domain.1 + tol
    }

    pub fn check(&self, v: f64) -> Result<f64> {
        if self.contains(v) {
            Ok(self.map(v))
        } else {
            Err(Error::DomainOverflow {
                value: v,
                min: self.domain.0,
                max: self.domain.1,
            })
        }
    }

    /// Same domain and ticks mapped onto another canvas range.
    pub fn with_range(&self, range: (f64, f64)) -> Scale {
        Scale {
            range,
            ..self.clone()
        }
    }
}
