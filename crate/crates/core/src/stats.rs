//! Five-number summaries for the boxplot glyph.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_lo: f64,
    pub whisker_hi: f64,
    pub outliers: Vec<f64>,
}

/// Linear-interpolation quantile of sorted data at position `p * (n - 1)`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Quartiles by linear interpolation; whiskers reach the most extreme samples inside
/// `[q1 - 1.5 IQR, q3 + 1.5 IQR]`; everything beyond the fences is an outlier.
///
/// With few samples and an interpolated quartile the nearest in-fence sample can lie
/// inside the box (e.g. `[0, 100, 100, 100]`); the whisker is then pinned to the
/// quartile so `whisker_lo <= q1` and `q3 <= whisker_hi` always hold.
pub fn compute_box_stats(samples: &[f64]) -> Result<BoxStats> {
    let mut sorted: Vec<f64> = samples.iter().copied().filter(|v| v.is_finite()).collect();
    if sorted.is_empty() {
        return Err(Error::EmptySamples);
    }
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile_sorted(&sorted, 0.25);
    let median = quantile_sorted(&sorted, 0.5);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    let mut inside = sorted.iter().filter(|v| **v >= lo_fence && **v <= hi_fence);
    let whisker_lo = inside.clone().next().map_or(q1, |v| v.min(q1));
    let whisker_hi = inside.next_back().map_or(q3, |v| v.max(q3));
    let outliers = sorted
        .iter()
        .copied()
        .filter(|v| *v < lo_fence || *v > hi_fence)
        .collect();
    Ok(BoxStats {
        q1,
        median,
        q3,
        whisker_lo,
        whisker_hi,
        outliers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_to_nine() {
        let s = compute_box_stats(&[9.0, 1.0, 5.0, 3.0, 7.0, 2.0, 8.0, 4.0, 6.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (3.0, 5.0, 7.0));
        assert_eq!((s.whisker_lo, s.whisker_hi), (1.0, 9.0));
        assert!(s.outliers.is_empty());
    }

    #[test]
    fn single_sample() {
        let s = compute_box_stats(&[5.0]).unwrap();
        assert_eq!(
            s,
            BoxStats {
                q1: 5.0,
                median: 5.0,
                q3: 5.0,
                whisker_lo: 5.0,
                whisker_hi: 5.0,
                outliers: vec![]
            }
        );
    }

    #[test]
    fn high_outlier() {
        let s = compute_box_stats(&[1.0, 2.0, 3.0, 4.0, 100.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (2.0, 3.0, 4.0));
        assert_eq!((s.whisker_lo, s.whisker_hi), (1.0, 4.0));
        assert_eq!(s.outliers, vec![100.0]);
    }

    #[test]
    fn whisker_pinned_to_quartile() {
        // q1 = 75, IQR = 25, lower fence 37.5: nearest in-fence sample is 100 > q1
        let s = compute_box_stats(&[0.0, 100.0, 100.0, 100.0]).unwrap();
        assert_eq!(s.q1, 75.0);
        assert_eq!(s.whisker_lo, 75.0);
        assert_eq!(s.outliers, vec![0.0]);
    }

    #[test]
    fn empty() {
        assert_eq!(compute_box_stats(&[]), Err(Error::EmptySamples));
        assert_eq!(compute_box_stats(&[f64::NAN]), Err(Error::EmptySamples));
    }
}
